#pragma once

#include <memory>
#include <string>

#include "windest/vec3.hpp"

namespace windest::wind {

/// A wind velocity field over position and time (m/s, NED).
/// Stateful implementations (filtered turbulence) require sample() calls
/// with non-decreasing t; stateless fields accept any query order.
class WindField {
 public:
  virtual ~WindField() = default;
  virtual Vec3 sample(const Vec3& position, double t) = 0;
  /// Compact single-token descriptor for provenance lines (no spaces).
  virtual std::string describe() const = 0;
};

class ConstantWind final : public WindField {
 public:
  explicit ConstantWind(const Vec3& w) : wind_(w) {}
  Vec3 sample(const Vec3&, double) override { return wind_; }
  std::string describe() const override;

 private:
  Vec3 wind_;
};

class ZeroWind final : public WindField {
 public:
  Vec3 sample(const Vec3&, double) override { return {}; }
  std::string describe() const override { return "none"; }
};

}  // namespace windest::wind
