#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "windest/vec3.hpp"
#include "windest/wind/wind_field.hpp"

namespace windest::wind {

/// Gridded wind data (e.g. exported from a large-eddy simulation) on a
/// regular 4-D lattice. Storage: one float32 triple (wn, we, wd) per node
/// in [t][z][y][x][component] order (x fastest-varying spatial index,
/// component innermost). Coordinates are NED metres / seconds:
///   node (ix,iy,iz,it) sits at (ox + ix*dx, oy + iy*dy, oz + iz*dz,
///                               ot + it*dt).
///
/// Sampling is quad-linear (trilinear in space, linear in time), exact at
/// nodes. Horizontal queries outside the domain wrap periodically with
/// period nx*dx (resp. ny*dy); vertical and time queries clamp to the
/// boundary.
struct GridWindField {
  std::uint32_t nx = 0, ny = 0, nz = 0, nt = 0;
  double dx = 0.0, dy = 0.0, dz = 0.0, dt = 0.0;
  double ox = 0.0, oy = 0.0, oz = 0.0, ot = 0.0;
  std::vector<float> data;  ///< nt*nz*ny*nx*3 floats, layout above

  /// Flat element index of the (wn) component at a node; we/wd follow.
  std::size_t index(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz,
                    std::uint32_t it) const {
    return ((static_cast<std::size_t>(it) * nz + iz) * ny + iy) * static_cast<std::size_t>(nx) *
               3 +
           static_cast<std::size_t>(ix) * 3;
  }
  Vec3 node(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, std::uint32_t it) const {
    const std::size_t k = index(ix, iy, iz, it);
    return {data[k], data[k + 1], data[k + 2]};
  }

  Vec3 sample(const Vec3& position, double t) const;

  /// Throws ConfigError unless dims >= 1, spacings > 0 and the data size
  /// matches the dimensions.
  void validate() const;
};

/// Binary grid-wind file layout (all integers and floats little-endian):
///   offset  0: magic "WINDGRID" (8 bytes)
///   offset  8: u32 version (currently 1)
///   offset 12: u32 nx, ny, nz, nt
///   offset 28: f64 dx, dy, dz, dt   (metres, metres, metres, seconds)
///   offset 60: f64 ox, oy, oz, ot   (grid origin)
///   offset 92: f32 data[nt*nz*ny*nx*3] in [t][z][y][x][component] order
/// Malformed input raises FormatError naming the byte offset.
GridWindField load_grid_wind(const std::string& path);
void save_grid_wind(const std::string& path, const GridWindField& field);

/// Builds a grid from a CSV node listing with header `ix,iy,iz,it,wn,we,wd`
/// (integer indices). Every node must appear exactly once; duplicates,
/// out-of-range indices, or missing nodes raise FormatError.
GridWindField grid_from_csv(const std::string& csv_path, std::uint32_t nx, std::uint32_t ny,
                            std::uint32_t nz, std::uint32_t nt, const double spacing[4],
                            const double origin[4]);

/// WindField adapter over an immutable grid (safe to share across runs).
class GridWind final : public WindField {
 public:
  GridWind(std::shared_ptr<const GridWindField> field, std::string source_name);

  Vec3 sample(const Vec3& position, double t) override;
  std::string describe() const override;

 private:
  std::shared_ptr<const GridWindField> field_;
  std::string name_;
};

}  // namespace windest::wind
