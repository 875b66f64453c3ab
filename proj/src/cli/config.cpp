#include "windest/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <utility>
#include <vector>

#include "windest/errors.hpp"
#include "windest/quadsim/motor.hpp"
#include "windest/wind/grid.hpp"

namespace windest::cli {
namespace {

using nlohmann::json;

/// Strict view over one JSON object: every key must be consumed by a read
/// call, and finish() rejects whatever is left over, naming it by its
/// dotted path so the user can find it in the file.
class Section {
 public:
  Section(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (!j.is_object()) {
      throw ConfigError("config section '" + (path_.empty() ? std::string("<root>") : path_) +
                        "' must be a JSON object");
    }
  }

  std::string dotted(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  template <typename T>
  void read(const char* key, T& out) {
    const json* v = child_raw(key);
    if (v == nullptr) return;
    try {
      out = v->get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config key '" + dotted(key) + "' has the wrong type");
    }
  }

  void read(const char* key, Vec3& out) {
    const json* v = child_raw(key);
    if (v == nullptr) return;
    std::array<double, 3> a{};
    try {
      a = v->get<std::array<double, 3>>();
    } catch (const json::exception&) {
      throw ConfigError("config key '" + dotted(key) + "' must be an array of 3 numbers");
    }
    out = {a[0], a[1], a[2]};
  }

  void read(const char* key, std::array<double, 4>& out) {
    const json* v = child_raw(key);
    if (v == nullptr) return;
    try {
      out = v->get<std::array<double, 4>>();
    } catch (const json::exception&) {
      throw ConfigError("config key '" + dotted(key) + "' must be an array of 4 numbers");
    }
  }

  /// Marks `key` consumed and returns its value, or nullptr when absent.
  const json* child(const char* key) { return child_raw(key); }

  void finish() const {
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
        throw ConfigError("unknown config key '" + dotted(it.key()) + "'");
      }
    }
  }

 private:
  const json* child_raw(const char* key) {
    if (!j_->contains(key)) return nullptr;
    seen_.emplace_back(key);
    return &j_->at(key);
  }

  const json* j_;
  std::string path_;
  std::vector<std::string> seen_;
};

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

// ---- per-section parsing (defaults kept where keys are absent) ----

void parse_quad(const json& j, quadsim::QuadParams& q) {
  Section s(j, "quad");
  s.read("mass", q.mass);
  s.read("inertia", q.inertia);
  s.read("arm_length", q.arm_length);
  s.read("thrust_coeff", q.thrust_coeff);
  s.read("torque_coeff", q.torque_coeff);
  s.read("flapping_coeff", q.flapping_coeff);
  s.read("gravity", q.gravity);
  s.read("hover_induced_velocity", q.hover_induced_velocity);
  s.finish();
}

void parse_motor(const json& j, quadsim::MotorParams& m) {
  Section s(j, "motor");
  s.read("a", m.a);
  s.read("b0", m.b0);
  s.read("pwm_min", m.pwm_min);
  s.read("pwm_max", m.pwm_max);
  s.read("omega_max", m.omega_max);
  s.read("kp", m.kp);
  s.read("ki", m.ki);
  s.read("kd", m.kd);
  s.finish();
}

void parse_control(const json& j, control::ControlGains& g) {
  Section s(j, "control");
  s.read("kp", g.kp);
  s.read("kd", g.kd);
  s.read("ki", g.ki);
  s.read("K1", g.K1);
  s.read("K2", g.K2);
  s.read("K3", g.K3);
  s.read("Kp1", g.Kp1);
  s.read("Kp2", g.Kp2);
  s.read("Kp3", g.Kp3);
  s.read("Kd1", g.Kd1);
  s.read("Kd2", g.Kd2);
  s.read("Kd3", g.Kd3);
  s.read("phi_max", g.phi_max);
  s.read("theta_max", g.theta_max);
  s.read("integral_limit", g.integral_limit);
  s.read("gimbal_eps", g.gimbal_eps);
  s.finish();
}

void parse_dryden(const json& j, wind::DrydenParams& d) {
  Section s(j, "wind.dryden");
  s.read("sigma", d.sigma);
  s.read("scale", d.scale);
  s.read("airspeed", d.airspeed);
  s.read("update_dt", d.update_dt);
  s.finish();
}

void parse_piecewise(const json& j, wind::PiecewiseParams& p) {
  Section s(j, "wind.piecewise");
  s.read("amp_min", p.amp_min);
  s.read("amp_max", p.amp_max);
  s.read("interval_min", p.interval_min);
  s.read("interval_max", p.interval_max);
  s.read("duration", p.duration);
  s.finish();
}

void parse_spectral(const json& j, wind::SpectralParams& p) {
  Section s(j, "wind.spectral");
  s.read("sigma", p.sigma);
  s.read("scale", p.scale);
  s.read("a", p.a);
  s.read("b", p.b);
  s.read("c", p.c);
  s.read("bins", p.bins);
  s.read("omega_max", p.omega_max);
  s.read("airspeed", p.airspeed);
  s.finish();
}

void parse_wind(const json& j, WindSpec& w) {
  Section s(j, "wind");
  s.read("kind", w.kind);
  s.read("seed", w.seed);
  s.read("mean", w.mean);
  s.read("constant", w.constant_wind);
  s.read("grid_file", w.grid_file);
  if (const json* c = s.child("dryden")) parse_dryden(*c, w.dryden);
  if (const json* c = s.child("piecewise")) parse_piecewise(*c, w.piecewise);
  if (const json* c = s.child("spectral")) parse_spectral(*c, w.spectral);
  s.finish();
}

void parse_trajectory(const json& j, TrajectorySpec& t) {
  Section s(j, "trajectory");
  s.read("kind", t.kind);
  s.read("hover_waypoint", t.hover_waypoint);
  s.read("line_waypoint", t.line_waypoint);
  s.finish();
}

void parse_sim(const json& j, quadsim::SimConfig& c) {
  Section s(j, "sim");
  s.read("duration", c.duration);
  s.read("dt", c.dt);
  s.read("log_rate", c.log_rate);
  if (const json* v = s.child("integrator")) {
    std::string name;
    try {
      name = v->get<std::string>();
    } catch (const json::exception&) {
      throw ConfigError("config key 'sim.integrator' has the wrong type");
    }
    if (name == "rk4") {
      c.integrator = quadsim::Integrator::rk4;
    } else if (name == "euler") {
      c.integrator = quadsim::Integrator::euler;
    } else {
      throw ConfigError("config key 'sim.integrator' must be \"rk4\" or \"euler\"");
    }
  }
  s.read("start_at_hover", c.start_at_hover);
  s.read("initial_position", c.initial_position);
  s.read("seed", c.seed);
  s.read("position_bound", c.position_bound);
  s.read("velocity_bound", c.velocity_bound);
  s.read("attitude_bound", c.attitude_bound);
  s.read("rate_bound", c.rate_bound);
  s.finish();
}

void parse_dataset(const json& j, DatasetSpec& d) {
  Section s(j, "dataset");
  s.read("seq_len", d.seq_len);
  s.read("stride", d.stride);
  s.read("val_fraction", d.val_fraction);
  s.read("seed", d.seed);
  s.finish();
}

void parse_train(const json& j, estimate::TrainConfig& t) {
  Section s(j, "train");
  s.read("epochs", t.epochs);
  s.read("batch_size", t.batch_size);
  s.read("patience", t.patience);
  s.read("seed", t.seed);
  if (const json* c = s.child("adam")) {
    Section a(*c, "train.adam");
    a.read("lr", t.adam.lr);
    a.read("beta1", t.adam.beta1);
    a.read("beta2", t.adam.beta2);
    a.read("eps", t.adam.eps);
    a.finish();
  }
  if (const json* c = s.child("network")) {
    // input_dim/output_dim are structural (pose features in, horizontal wind
    // out) and stay out of the file format.
    Section n(*c, "train.network");
    n.read("hidden", t.network.hidden);
    n.read("num_layers", t.network.num_layers);
    n.read("dropout", t.network.dropout);
    n.read("tanh_candidate", t.network.tanh_candidate);
    n.finish();
  }
  s.finish();
}

void parse_repro(const json& j, ReproSpec& r) {
  Section s(j, "repro");
  s.read("train_duration", r.train_duration);
  s.read("eval_duration", r.eval_duration);
  s.read("train_seed", r.train_seed);
  s.read("eval_seed", r.eval_seed);
  s.finish();
}

// ---- serialization (nlohmann objects iterate sorted by key, so dumping is
//      canonical by construction) ----

json full_json(const RunConfig& c) {
  json j;
  j["quad"] = {{"mass", c.quad.mass},
               {"inertia", vec_json(c.quad.inertia)},
               {"arm_length", c.quad.arm_length},
               {"thrust_coeff", c.quad.thrust_coeff},
               {"torque_coeff", c.quad.torque_coeff},
               {"flapping_coeff", c.quad.flapping_coeff},
               {"gravity", c.quad.gravity},
               {"hover_induced_velocity", c.quad.hover_induced_velocity}};
  j["motor"] = {{"a", c.motor.a},
                {"b0", c.motor.b0},
                {"pwm_min", c.motor.pwm_min},
                {"pwm_max", c.motor.pwm_max},
                {"omega_max", c.motor.omega_max},
                {"kp", c.motor.kp},
                {"ki", c.motor.ki},
                {"kd", c.motor.kd}};
  j["control"] = {{"kp", c.control.kp},
                  {"kd", c.control.kd},
                  {"ki", c.control.ki},
                  {"K1", c.control.K1},
                  {"K2", c.control.K2},
                  {"K3", c.control.K3},
                  {"Kp1", c.control.Kp1},
                  {"Kp2", c.control.Kp2},
                  {"Kp3", c.control.Kp3},
                  {"Kd1", c.control.Kd1},
                  {"Kd2", c.control.Kd2},
                  {"Kd3", c.control.Kd3},
                  {"phi_max", c.control.phi_max},
                  {"theta_max", c.control.theta_max},
                  {"integral_limit", c.control.integral_limit},
                  {"gimbal_eps", c.control.gimbal_eps}};
  j["wind"] = {{"kind", c.wind.kind},
               {"seed", c.wind.seed},
               {"mean", vec_json(c.wind.mean)},
               {"constant", vec_json(c.wind.constant_wind)},
               {"grid_file", c.wind.grid_file},
               {"dryden",
                {{"sigma", vec_json(c.wind.dryden.sigma)},
                 {"scale", vec_json(c.wind.dryden.scale)},
                 {"airspeed", c.wind.dryden.airspeed},
                 {"update_dt", c.wind.dryden.update_dt}}},
               {"piecewise",
                {{"amp_min", c.wind.piecewise.amp_min},
                 {"amp_max", c.wind.piecewise.amp_max},
                 {"interval_min", c.wind.piecewise.interval_min},
                 {"interval_max", c.wind.piecewise.interval_max},
                 {"duration", c.wind.piecewise.duration}}},
               {"spectral",
                {{"sigma", c.wind.spectral.sigma},
                 {"scale", c.wind.spectral.scale},
                 {"a", c.wind.spectral.a},
                 {"b", c.wind.spectral.b},
                 {"c", c.wind.spectral.c},
                 {"bins", c.wind.spectral.bins},
                 {"omega_max", c.wind.spectral.omega_max},
                 {"airspeed", c.wind.spectral.airspeed}}}};
  j["trajectory"] = {{"kind", c.trajectory.kind},
                     {"hover_waypoint", vec_json(c.trajectory.hover_waypoint)},
                     {"line_waypoint", vec_json(c.trajectory.line_waypoint)}};
  j["sim"] = {{"duration", c.sim.duration},
              {"dt", c.sim.dt},
              {"log_rate", c.sim.log_rate},
              {"integrator", c.sim.integrator == quadsim::Integrator::rk4 ? "rk4" : "euler"},
              {"start_at_hover", c.sim.start_at_hover},
              {"initial_position", vec_json(c.sim.initial_position)},
              {"seed", c.sim.seed},
              {"position_bound", c.sim.position_bound},
              {"velocity_bound", c.sim.velocity_bound},
              {"attitude_bound", c.sim.attitude_bound},
              {"rate_bound", c.sim.rate_bound}};
  j["dataset"] = {{"seq_len", c.dataset.seq_len},
                  {"stride", c.dataset.stride},
                  {"val_fraction", c.dataset.val_fraction},
                  {"seed", c.dataset.seed}};
  j["train"] = {{"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"patience", c.train.patience},
                {"seed", c.train.seed},
                {"adam",
                 {{"lr", c.train.adam.lr},
                  {"beta1", c.train.adam.beta1},
                  {"beta2", c.train.adam.beta2},
                  {"eps", c.train.adam.eps}}},
                {"network",
                 {{"hidden", c.train.network.hidden},
                  {"num_layers", c.train.network.num_layers},
                  {"dropout", c.train.network.dropout},
                  {"tanh_candidate", c.train.network.tanh_candidate}}}};
  j["repro"] = {{"train_duration", c.repro.train_duration},
                {"eval_duration", c.repro.eval_duration},
                {"train_seed", c.repro.train_seed},
                {"eval_seed", c.repro.eval_seed}};
  return j;
}

}  // namespace

Vec3 TrajectorySpec::waypoint() const {
  if (kind == "line") return line_waypoint;
  return hover_waypoint;
}

void RunConfig::validate() const {
  quad.validate();
  motor.validate();
  control.validate();

  static const char* kKinds[] = {"none", "constant", "dryden", "piecewise", "spectral", "grid"};
  if (std::find_if(std::begin(kKinds), std::end(kKinds),
                   [&](const char* k) { return wind.kind == k; }) == std::end(kKinds)) {
    throw ConfigError("wind.kind must be one of none|constant|dryden|piecewise|spectral|grid, got '" +
                      wind.kind + "'");
  }
  // All parameter blocks are checked, not just the active one, so a config
  // edit is caught even while that kind is switched off.
  wind.dryden.validate();
  wind.piecewise.validate();
  wind.spectral.validate();
  if (wind.kind == "grid" && wind.grid_file.empty()) {
    throw ConfigError("wind.kind 'grid' requires wind.grid_file");
  }

  if (trajectory.kind != "hover" && trajectory.kind != "line") {
    throw ConfigError("trajectory.kind must be \"hover\" or \"line\", got '" + trajectory.kind +
                      "'");
  }

  sim.validate();

  if (dataset.seq_len < 1) throw ConfigError("dataset.seq_len must be >= 1");
  if (dataset.stride < 1 || dataset.stride > dataset.seq_len) {
    throw ConfigError("dataset.stride must be in [1, dataset.seq_len]");
  }
  if (!(dataset.val_fraction >= 0.0 && dataset.val_fraction < 1.0)) {
    throw ConfigError("dataset.val_fraction must be in [0, 1)");
  }

  train.validate();

  if (!(repro.train_duration > 0.0)) throw ConfigError("repro.train_duration must be > 0");
  if (!(repro.eval_duration > 0.0)) throw ConfigError("repro.eval_duration must be > 0");
}

std::string RunConfig::canonical_json() const { return full_json(*this).dump(); }

std::string RunConfig::pretty_json() const { return full_json(*this).dump(2) + "\n"; }

std::string RunConfig::config_hash() const {
  const std::string s = canonical_json();
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a 64-bit
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("config file " + path + " is not valid JSON: " + e.what());
  }

  RunConfig cfg;
  Section root(j, "");
  if (const json* s = root.child("quad")) parse_quad(*s, cfg.quad);
  if (const json* s = root.child("motor")) parse_motor(*s, cfg.motor);
  if (const json* s = root.child("control")) parse_control(*s, cfg.control);
  if (const json* s = root.child("wind")) parse_wind(*s, cfg.wind);
  if (const json* s = root.child("trajectory")) parse_trajectory(*s, cfg.trajectory);
  if (const json* s = root.child("sim")) parse_sim(*s, cfg.sim);
  if (const json* s = root.child("dataset")) parse_dataset(*s, cfg.dataset);
  if (const json* s = root.child("train")) parse_train(*s, cfg.train);
  if (const json* s = root.child("repro")) parse_repro(*s, cfg.repro);
  root.finish();
  return cfg;
}

std::unique_ptr<wind::WindField> make_wind_field(const WindSpec& spec) {
  if (spec.kind == "none") return std::make_unique<wind::ZeroWind>();
  if (spec.kind == "constant") return std::make_unique<wind::ConstantWind>(spec.constant_wind);
  if (spec.kind == "dryden") {
    return std::make_unique<wind::DrydenWind>(spec.dryden, spec.mean, spec.seed);
  }
  if (spec.kind == "piecewise") {
    return std::make_unique<wind::PiecewiseConstantWind>(spec.piecewise, spec.seed);
  }
  if (spec.kind == "spectral") {
    return std::make_unique<wind::SpectralWind>(spec.spectral, spec.mean, spec.seed);
  }
  if (spec.kind == "grid") {
    if (spec.grid_file.empty()) throw ConfigError("wind.kind 'grid' requires wind.grid_file");
    auto grid = std::make_shared<wind::GridWindField>(wind::load_grid_wind(spec.grid_file));
    std::string name = std::filesystem::path(spec.grid_file).filename().string();
    std::replace(name.begin(), name.end(), ' ', '_');
    return std::make_unique<wind::GridWind>(std::move(grid), name);
  }
  throw ConfigError("unknown wind.kind '" + spec.kind + "'");
}

}  // namespace windest::cli
