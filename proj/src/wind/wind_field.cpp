#include "windest/wind/wind_field.hpp"

#include "windest/io/csv.hpp"

namespace windest::wind {

std::string ConstantWind::describe() const {
  return "constant(" + io::format_double(wind_.x) + "," +
         io::format_double(wind_.y) + "," + io::format_double(wind_.z) + ")";
}

}  // namespace windest::wind
