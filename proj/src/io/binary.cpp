#include "windest/io/binary.hpp"

#include <array>
#include <bit>
#include <fstream>

#include "windest/errors.hpp"

namespace windest::io {

std::uint32_t crc32_ieee(const unsigned char* data, std::size_t n) {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1u) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < n; ++i) {
    crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
  }
  return crc ^ 0xFFFFFFFFu;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
  const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void write_checksummed(const std::string& path, const std::string& kind,
                       const std::string& payload) {
  std::string out = payload;
  put_u32(out, crc32_ieee(reinterpret_cast<const unsigned char*>(out.data()), out.size()));
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError(kind + " '" + path + "': cannot open for writing");
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw FormatError(kind + " '" + path + "': write failed");
}

std::vector<unsigned char> read_checksummed(const std::string& path, const std::string& kind,
                                            std::size_t min_payload) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(kind + " '" + path + "': cannot open for reading");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  in.close();
  if (buf.size() < min_payload + 4) {
    throw FormatError(kind + " '" + path + "': file too short (" + std::to_string(buf.size()) +
                      " bytes)");
  }
  std::uint32_t stored = 0;
  for (int i = 3; i >= 0; --i) {
    stored = (stored << 8) | buf[buf.size() - 4 + static_cast<std::size_t>(i)];
  }
  const std::uint32_t actual = crc32_ieee(buf.data(), buf.size() - 4);
  if (stored != actual) {
    throw FormatError(kind + " '" + path + "': checksum mismatch (file truncated or corrupted)");
  }
  return buf;
}

void BinReader::need(std::size_t n, const char* what) {
  if (pos_ + n > buf_.size()) {
    throw FormatError(kind_ + " '" + path_ + "': unexpected end of file while reading " +
                      std::string(what) + " at byte " + std::to_string(pos_));
  }
}

std::uint32_t BinReader::u32(const char* what) {
  need(4, what);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | buf_[pos_ + static_cast<std::size_t>(i)];
  pos_ += 4;
  return v;
}

double BinReader::f64(const char* what) {
  need(8, what);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf_[pos_ + static_cast<std::size_t>(i)];
  pos_ += 8;
  return std::bit_cast<double>(v);
}

std::string BinReader::bytes(std::size_t n, const char* what) {
  need(n, what);
  std::string s(reinterpret_cast<const char*>(buf_.data() + pos_), n);
  pos_ += n;
  return s;
}

void BinReader::fail(const std::string& message) const {
  throw FormatError(kind_ + " '" + path_ + "': " + message);
}

}  // namespace windest::io
