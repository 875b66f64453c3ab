#include "windest/wind/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <utility>

#include "windest/errors.hpp"
#include "windest/io/csv.hpp"

namespace windest::wind {

namespace {

double wrap_fraction(double f, std::uint32_t n) {
  // Maps a fractional index onto the periodic range [0, n).
  double w = std::fmod(f, static_cast<double>(n));
  if (w < 0.0) w += static_cast<double>(n);
  if (w >= static_cast<double>(n)) w = 0.0;  // guard fmod landing on the edge
  return w;
}

struct Axis {
  std::uint32_t i0 = 0, i1 = 0;
  double frac = 0.0;
};

Axis periodic_axis(double coord, double origin, double step, std::uint32_t n) {
  Axis a;
  if (n == 1) return a;
  const double f = wrap_fraction((coord - origin) / step, n);
  a.i0 = static_cast<std::uint32_t>(f);
  if (a.i0 >= n) a.i0 = n - 1;
  a.i1 = (a.i0 + 1) % n;
  a.frac = f - a.i0;
  return a;
}

Axis clamped_axis(double coord, double origin, double step, std::uint32_t n) {
  Axis a;
  if (n == 1) return a;
  double f = (coord - origin) / step;
  if (f <= 0.0) return a;
  const double top = static_cast<double>(n - 1);
  if (f >= top) {
    a.i0 = a.i1 = n - 1;
    return a;
  }
  a.i0 = static_cast<std::uint32_t>(f);
  a.i1 = a.i0 + 1;
  a.frac = f - a.i0;
  return a;
}

constexpr char kMagic[8] = {'W', 'I', 'N', 'D', 'G', 'R', 'I', 'D'};
constexpr std::uint32_t kVersion = 1;

/// Sequential little-endian reader over an in-memory buffer that reports
/// the byte offset of any failure.
class ByteReader {
 public:
  ByteReader(const std::vector<unsigned char>& buf, const std::string& path)
      : buf_(buf), path_(path) {}

  std::size_t offset() const { return pos_; }

  void need(std::size_t n, const char* what) {
    if (pos_ + n > buf_.size()) {
      throw FormatError("grid wind file '" + path_ + "': unexpected end of file at byte " +
                        std::to_string(buf_.size()) + " while reading " + what + " at byte " +
                        std::to_string(pos_));
    }
  }

  void raw(void* dst, std::size_t n, const char* what) {
    need(n, what);
    std::memcpy(dst, buf_.data() + pos_, n);
    pos_ += n;
  }

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | buf_[pos_ + static_cast<std::size_t>(i)];
    pos_ += 4;
    return v;
  }

  double f64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf_[pos_ + static_cast<std::size_t>(i)];
    pos_ += 8;
    return std::bit_cast<double>(v);
  }

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw FormatError("grid wind file '" + path_ + "': " + message + " at byte " +
                      std::to_string(at));
  }

 private:
  const std::vector<unsigned char>& buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

void append_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f64_le(std::string& out, double d) {
  const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f32_le(std::string& out, float f) {
  const std::uint32_t v = std::bit_cast<std::uint32_t>(f);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

void GridWindField::validate() const {
  if (nx == 0 || ny == 0 || nz == 0 || nt == 0) {
    throw ConfigError("grid wind: all dimensions must be >= 1");
  }
  if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0) || !(dt > 0.0)) {
    throw ConfigError("grid wind: all spacings must be > 0");
  }
  const std::size_t expect = static_cast<std::size_t>(nx) * ny * nz * nt * 3;
  if (data.size() != expect) {
    throw ConfigError("grid wind: data has " + std::to_string(data.size()) +
                      " values, dimensions require " + std::to_string(expect));
  }
}

Vec3 GridWindField::sample(const Vec3& position, double t) const {
  const Axis ax = periodic_axis(position.x, ox, dx, nx);
  const Axis ay = periodic_axis(position.y, oy, dy, ny);
  const Axis az = clamped_axis(position.z, oz, dz, nz);
  const Axis at = clamped_axis(t, ot, dt, nt);

  // Nested lerp keeps node queries and uniform fields exact: with
  // lerp(a,b,f) = a + f*(b-a), equal endpoints reproduce the endpoint
  // bit-for-bit and f = 0 returns `a` unchanged.
  const auto lerp = [](const Vec3& a, const Vec3& b, double f) { return a + (b - a) * f; };
  Vec3 vt[2];
  const std::uint32_t ts[2] = {at.i0, at.i1};
  const std::uint32_t zs[2] = {az.i0, az.i1};
  const std::uint32_t ys[2] = {ay.i0, ay.i1};
  for (int it = 0; it < 2; ++it) {
    Vec3 vz[2];
    for (int iz = 0; iz < 2; ++iz) {
      Vec3 vy[2];
      for (int iy = 0; iy < 2; ++iy) {
        vy[iy] = lerp(node(ax.i0, ys[iy], zs[iz], ts[it]),
                      node(ax.i1, ys[iy], zs[iz], ts[it]), ax.frac);
      }
      vz[iz] = lerp(vy[0], vy[1], ay.frac);
    }
    vt[it] = lerp(vz[0], vz[1], az.frac);
  }
  return lerp(vt[0], vt[1], at.frac);
}

GridWindField load_grid_wind(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("grid wind file '" + path + "': cannot open for reading");
  }
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  in.close();

  ByteReader r(buf, path);
  char magic[8];
  r.raw(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    r.fail("bad magic (expected \"WINDGRID\")", 0);
  }
  const std::size_t version_at = r.offset();
  const std::uint32_t version = r.u32("version");
  if (version != kVersion) {
    r.fail("unsupported version " + std::to_string(version), version_at);
  }

  GridWindField g;
  const std::size_t dims_at = r.offset();
  g.nx = r.u32("nx");
  g.ny = r.u32("ny");
  g.nz = r.u32("nz");
  g.nt = r.u32("nt");
  if (g.nx == 0 || g.ny == 0 || g.nz == 0 || g.nt == 0) {
    r.fail("zero grid dimension", dims_at);
  }

  const std::size_t spacing_at = r.offset();
  g.dx = r.f64("dx");
  g.dy = r.f64("dy");
  g.dz = r.f64("dz");
  g.dt = r.f64("dt");
  if (!(g.dx > 0.0) || !(g.dy > 0.0) || !(g.dz > 0.0) || !(g.dt > 0.0) ||
      !std::isfinite(g.dx) || !std::isfinite(g.dy) || !std::isfinite(g.dz) ||
      !std::isfinite(g.dt)) {
    r.fail("grid spacings must be finite and > 0", spacing_at);
  }

  const std::size_t origin_at = r.offset();
  g.ox = r.f64("ox");
  g.oy = r.f64("oy");
  g.oz = r.f64("oz");
  g.ot = r.f64("ot");
  if (!std::isfinite(g.ox) || !std::isfinite(g.oy) || !std::isfinite(g.oz) ||
      !std::isfinite(g.ot)) {
    r.fail("grid origin must be finite", origin_at);
  }

  const std::size_t count = static_cast<std::size_t>(g.nx) * g.ny * g.nz * g.nt * 3;
  const std::size_t data_at = r.offset();
  r.need(count * 4, "velocity data");
  g.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t v = 0;
    const unsigned char* p = buf.data() + data_at + i * 4;
    v = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
        (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    g.data[i] = std::bit_cast<float>(v);
  }
  const std::size_t end = data_at + count * 4;
  if (buf.size() != end) {
    r.fail("trailing data (" + std::to_string(buf.size() - end) + " extra bytes)", end);
  }
  return g;
}

void save_grid_wind(const std::string& path, const GridWindField& field) {
  field.validate();
  std::string out;
  out.reserve(92 + field.data.size() * 4);
  out.append(kMagic, sizeof(kMagic));
  append_u32_le(out, kVersion);
  append_u32_le(out, field.nx);
  append_u32_le(out, field.ny);
  append_u32_le(out, field.nz);
  append_u32_le(out, field.nt);
  append_f64_le(out, field.dx);
  append_f64_le(out, field.dy);
  append_f64_le(out, field.dz);
  append_f64_le(out, field.dt);
  append_f64_le(out, field.ox);
  append_f64_le(out, field.oy);
  append_f64_le(out, field.oz);
  append_f64_le(out, field.ot);
  for (const float f : field.data) append_f32_le(out, f);

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw FormatError("grid wind file '" + path + "': cannot open for writing");
  }
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) {
    throw FormatError("grid wind file '" + path + "': write failed");
  }
}

GridWindField grid_from_csv(const std::string& csv_path, std::uint32_t nx, std::uint32_t ny,
                            std::uint32_t nz, std::uint32_t nt, const double spacing[4],
                            const double origin[4]) {
  GridWindField g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.nt = nt;
  g.dx = spacing[0];
  g.dy = spacing[1];
  g.dz = spacing[2];
  g.dt = spacing[3];
  g.ox = origin[0];
  g.oy = origin[1];
  g.oz = origin[2];
  g.ot = origin[3];
  const std::size_t nodes = static_cast<std::size_t>(nx) * ny * nz * nt;
  g.data.assign(nodes * 3, 0.0f);
  g.validate();

  const io::CsvData csv =
      io::read_csv(csv_path, {"ix", "iy", "iz", "it", "wn", "we", "wd"});
  std::vector<bool> seen(nodes, false);
  const std::uint32_t dims[4] = {nx, ny, nz, nt};
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const std::vector<double>& row = csv.rows[r];
    std::uint32_t idx[4];
    for (int k = 0; k < 4; ++k) {
      const double v = row[static_cast<std::size_t>(k)];
      if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(dims[k])) {
        throw FormatError("grid csv '" + csv_path + "': row " + std::to_string(r + 1) +
                          " index out of range for a " + std::to_string(nx) + "x" +
                          std::to_string(ny) + "x" + std::to_string(nz) + "x" +
                          std::to_string(nt) + " grid");
      }
      idx[k] = static_cast<std::uint32_t>(v);
    }
    const std::size_t flat = g.index(idx[0], idx[1], idx[2], idx[3]);
    const std::size_t node_id = flat / 3;
    if (seen[node_id]) {
      throw FormatError("grid csv '" + csv_path + "': row " + std::to_string(r + 1) +
                        " repeats a node already set");
    }
    seen[node_id] = true;
    g.data[flat] = static_cast<float>(row[4]);
    g.data[flat + 1] = static_cast<float>(row[5]);
    g.data[flat + 2] = static_cast<float>(row[6]);
  }
  std::size_t missing = 0;
  for (const bool s : seen) missing += s ? 0 : 1;
  if (missing != 0) {
    throw FormatError("grid csv '" + csv_path + "': " + std::to_string(missing) + " of " +
                      std::to_string(nodes) + " nodes missing");
  }
  return g;
}

GridWind::GridWind(std::shared_ptr<const GridWindField> field, std::string source_name)
    : field_(std::move(field)), name_(std::move(source_name)) {
  if (!field_) throw ConfigError("grid wind: null field");
  field_->validate();
  if (name_.empty()) {
    name_ = std::to_string(field_->nx) + "x" + std::to_string(field_->ny) + "x" +
            std::to_string(field_->nz) + "x" + std::to_string(field_->nt);
  }
}

Vec3 GridWind::sample(const Vec3& position, double t) { return field_->sample(position, t); }

std::string GridWind::describe() const { return "grid(" + name_ + ")"; }

}  // namespace windest::wind
