#include "windest/io/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "windest/errors.hpp"
#include "windest/version.hpp"

namespace windest::io {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw FormatError("format_double: value not representable");
  return std::string(buf, ptr);
}

double parse_double(const std::string& token, const std::string& where) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw FormatError(where + ": bad numeric token '" + token + "'");
  }
  return v;
}

std::string provenance_line(const MetaList& meta) {
  std::string line = "# ";
  line += kToolName;
  line += ' ';
  line += kVersion;
  for (const auto& [k, v] : meta) {
    line += ' ';
    line += k;
    line += '=';
    line += v;
  }
  return line;
}

MetaList parse_provenance(const std::string& line) {
  MetaList meta;
  std::istringstream ss(line);
  std::string word;
  while (ss >> word) {
    const auto eq = word.find('=');
    if (eq != std::string::npos && eq > 0) {
      meta.emplace_back(word.substr(0, eq), word.substr(eq + 1));
    }
  }
  return meta;
}

CsvWriter::CsvWriter(const std::string& path, const MetaList& meta,
                     const std::vector<std::string>& columns)
    : path_(path), n_columns_(columns.size()) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) {
    throw FormatError("cannot open '" + path + "' for writing: " +
                      std::strerror(errno));
  }
  stream_ = f;
  std::string head = provenance_line(meta);
  head += '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) head += ',';
    head += columns[i];
  }
  head += '\n';
  std::fwrite(head.data(), 1, head.size(), f);
}

CsvWriter::~CsvWriter() {
  if (stream_) std::fclose(static_cast<FILE*>(stream_));
}

void CsvWriter::row(std::span<const double> values) { row(values, {}); }

void CsvWriter::row(std::span<const double> values, const std::string& tail) {
  const std::size_t cells = values.size() + (tail.empty() ? 0 : 1);
  if (cells != n_columns_) {
    throw FormatError(path_ + ": row has " + std::to_string(cells) +
                      " cells, header has " + std::to_string(n_columns_));
  }
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_double(values[i]);
  }
  if (!tail.empty()) {
    line += ',';
    line += tail;
  }
  line += '\n';
  std::fwrite(line.data(), 1, line.size(), static_cast<FILE*>(stream_));
}

void CsvWriter::close() {
  if (stream_) {
    FILE* f = static_cast<FILE*>(stream_);
    stream_ = nullptr;
    if (std::fclose(f) != 0) throw FormatError(path_ + ": close failed");
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

bool is_numeric(const std::string& token) {
  double v = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

CsvData read_csv(const std::string& path,
                 const std::vector<std::string>& expect_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  CsvData out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (out.meta.empty()) out.meta = parse_provenance(line);
      continue;
    }
    if (!have_header) {
      out.columns = split_line(line);
      have_header = true;
      continue;
    }
    auto cells = split_line(line);
    if (cells.size() != out.columns.size()) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(out.columns.size()) + " cells, got " +
                        std::to_string(cells.size()));
    }
    std::vector<double> nums;
    nums.reserve(cells.size());
    std::string tail;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i + 1 == cells.size() && !is_numeric(cells[i])) {
        tail = cells[i];
      } else {
        nums.push_back(parse_double(
            cells[i], path + ":" + std::to_string(line_no)));
      }
    }
    out.rows.push_back(std::move(nums));
    out.tails.push_back(std::move(tail));
  }
  if (!have_header) throw FormatError(path + ": no header row");
  if (!expect_columns.empty() && out.columns != expect_columns) {
    throw FormatError(path + ": unexpected column set");
  }
  return out;
}

}  // namespace windest::io
