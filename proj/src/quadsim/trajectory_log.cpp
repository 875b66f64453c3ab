#include "windest/quadsim/trajectory_log.hpp"

#include <array>

#include "windest/errors.hpp"

namespace windest::quadsim {

const std::vector<std::string>& TrajectoryLog::columns() {
  static const std::vector<std::string> cols = {
      "t", "pn", "pe", "pd", "phi", "theta", "psi", "wn", "we", "wd"};
  return cols;
}

void TrajectoryLog::save(const std::string& path) const {
  io::CsvWriter w(path, meta, columns());
  for (const auto& s : samples) {
    const std::array<double, 10> row = {
        s.t,          s.position.x, s.position.y, s.position.z, s.attitude.x,
        s.attitude.y, s.attitude.z, s.wind.x,     s.wind.y,     s.wind.z};
    w.row(row);
  }
  w.close();
}

TrajectoryLog TrajectoryLog::load(const std::string& path) {
  const io::CsvData data = io::read_csv(path, columns());
  TrajectoryLog log;
  log.meta = data.meta;
  log.samples.reserve(data.rows.size());
  for (const auto& r : data.rows) {
    LogSample s;
    s.t = r[0];
    s.position = {r[1], r[2], r[3]};
    s.attitude = {r[4], r[5], r[6]};
    s.wind = {r[7], r[8], r[9]};
    log.samples.push_back(s);
  }
  if (log.samples.size() >= 2) {
    log.log_dt = log.samples[1].t - log.samples[0].t;
    if (!(log.log_dt > 0.0)) {
      throw FormatError(path + ": non-increasing time column");
    }
  }
  return log;
}

}  // namespace windest::quadsim
