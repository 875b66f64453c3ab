#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace windest::io {

/// CRC-32 (IEEE 802.3, reflected polynomial 0xEDB88320).
std::uint32_t crc32_ieee(const unsigned char* data, std::size_t n);

// Little-endian append helpers for building binary payloads.
void put_u32(std::string& out, std::uint32_t v);
void put_f64(std::string& out, double d);

/// Appends the CRC-32 of `payload` and writes the result to `path`.
/// `kind` names the artifact in error messages ("model file", ...).
void write_checksummed(const std::string& path, const std::string& kind,
                       const std::string& payload);

/// Reads the whole file and verifies the trailing CRC-32 before anything
/// else is interpreted; throws FormatError on IO failure, short files, or
/// checksum mismatch. Returns the raw bytes including the CRC.
std::vector<unsigned char> read_checksummed(const std::string& path, const std::string& kind,
                                            std::size_t min_payload);

/// Little-endian cursor over a loaded buffer with byte-offset error
/// reporting. All errors are FormatError prefixed with "<kind> '<path>':".
class BinReader {
 public:
  BinReader(const std::vector<unsigned char>& buf, const std::string& path,
            const std::string& kind)
      : buf_(buf), path_(path), kind_(kind) {}

  void need(std::size_t n, const char* what);
  std::uint32_t u32(const char* what);
  double f64(const char* what);
  std::string bytes(std::size_t n, const char* what);
  std::size_t offset() const { return pos_; }
  [[noreturn]] void fail(const std::string& message) const;

 private:
  const std::vector<unsigned char>& buf_;
  std::string path_;
  std::string kind_;
  std::size_t pos_ = 0;
};

}  // namespace windest::io
