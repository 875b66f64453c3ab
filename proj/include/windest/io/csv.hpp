#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace windest::io {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

/// Strict double parse of a whole token; throws FormatError on trailing junk.
double parse_double(const std::string& token, const std::string& where);

using MetaList = std::vector<std::pair<std::string, std::string>>;

/// "# windest <version> k=v k=v ..." provenance comment line (no newline).
/// Keys and values must not contain spaces.
std::string provenance_line(const MetaList& meta);

/// Inverse of provenance_line; unknown leading words are ignored.
MetaList parse_provenance(const std::string& line);

class CsvWriter {
 public:
  /// Opens `path`, writes the provenance comment and the header row.
  CsvWriter(const std::string& path, const MetaList& meta,
            const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(std::span<const double> values);
  /// Row with a trailing string cell (e.g. a method tag).
  void row(std::span<const double> values, const std::string& tail);
  void close();

 private:
  void* stream_ = nullptr;  // FILE*
  std::string path_;
  std::size_t n_columns_ = 0;
};

struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // numeric prefix of each row
  std::vector<std::string> tails;         // non-numeric trailing cell, if any
  MetaList meta;                          // from the provenance comment
};

/// Reads a CSV written by CsvWriter (comment lines, header, numeric rows).
/// `expect_columns` (if non-empty) must match the header exactly.
CsvData read_csv(const std::string& path,
                 const std::vector<std::string>& expect_columns = {});

}  // namespace windest::io
