// windest — command-line front end for the wind-estimation pipeline:
// wind generation, quadcopter simulation, dataset construction, training,
// estimation, and evaluation. Every artifact records the tool version, a
// hash of the effective configuration, and the seeds that produced it, so
// identical invocations give byte-identical outputs.

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "windest/cli/config.hpp"
#include "windest/errors.hpp"
#include "windest/estimate/dataset.hpp"
#include "windest/estimate/train.hpp"
#include "windest/estimate/wind_estimate.hpp"
#include "windest/io/csv.hpp"
#include "windest/metrics/metrics.hpp"
#include "windest/nn/model_io.hpp"
#include "windest/quadsim/simulate.hpp"
#include "windest/version.hpp"
#include "windest/wind/grid.hpp"

namespace {

namespace fs = std::filesystem;
using namespace windest;

/// Command-line level problems (bad flag combinations, missing input
/// files) — reported with exit code 1, distinct from config/format (2) and
/// numerical (3) failures.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("missing input file: " + path);
}

/// Inserts or replaces a provenance key so chained artifacts never carry
/// duplicate keys.
void set_meta(io::MetaList& meta, const std::string& key, const std::string& value) {
  for (auto& kv : meta) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  meta.emplace_back(key, value);
}

std::string meta_value(const io::MetaList& meta, const std::string& key) {
  for (const auto& kv : meta) {
    if (kv.first == key) return kv.second;
  }
  return {};
}

cli::RunConfig load_config(const std::string& path) {
  cli::RunConfig cfg;
  if (!path.empty()) {
    require_file(path);
    cfg = cli::RunConfig::load(path);
  }
  cfg.validate();
  return cfg;
}

// ---- command bodies (shared between the subcommands and `repro`) ----

quadsim::TrajectoryLog do_simulate(const cli::RunConfig& cfg, const std::string& out) {
  if (cfg.wind.kind == "grid") require_file(cfg.wind.grid_file);
  const auto field = cli::make_wind_field(cfg.wind);
  quadsim::SimConfig sim = cfg.sim;
  sim.waypoint = cfg.trajectory.waypoint();
  const io::MetaList extra{{"config", cfg.config_hash()},
                           {"trajectory", cfg.trajectory.kind},
                           {"wind_seed", std::to_string(cfg.wind.seed)}};
  auto log = quadsim::simulate(cfg.quad, cfg.motor, cfg.control, *field, sim, extra);
  log.save(out);
  std::cout << "wrote " << out << " (" << log.samples.size() << " samples, "
            << io::format_double(sim.duration) << " s, wind=" << field->describe() << ")\n";
  return log;
}

void do_build_dataset(const cli::RunConfig& cfg, const std::string& log_path,
                      const std::string& out) {
  require_file(log_path);
  const auto log = quadsim::TrajectoryLog::load(log_path);
  auto ds = estimate::build_sequences(log, cfg.dataset.seq_len, cfg.dataset.stride,
                                      cfg.dataset.val_fraction, cfg.dataset.seed);
  set_meta(ds.meta, "config", cfg.config_hash());
  set_meta(ds.meta, "seq_len", std::to_string(ds.seq_len));
  set_meta(ds.meta, "stride", std::to_string(ds.stride));
  set_meta(ds.meta, "dataset_seed", std::to_string(cfg.dataset.seed));
  ds.save(out);
  std::cout << "wrote " << out << " (" << ds.count() << " windows: " << ds.train_indices.size()
            << " train, " << ds.val_indices.size() << " val)\n";
}

void do_train(const cli::RunConfig& cfg, const std::string& ds_path, const std::string& model_out,
              const std::string& loss_out) {
  require_file(ds_path);
  const auto ds = estimate::Dataset::load(ds_path);
  std::cout << "training on " << ds.train_indices.size() << " windows (" << ds.val_indices.size()
            << " validation, up to " << cfg.train.epochs << " epochs)...\n"
            << std::flush;
  const auto res = estimate::train(ds, cfg.train);

  io::MetaList meta = ds.meta;
  set_meta(meta, "config", cfg.config_hash());
  set_meta(meta, "train_seed", std::to_string(cfg.train.seed));
  set_meta(meta, "seq_len", std::to_string(ds.seq_len));
  set_meta(meta, "hidden", std::to_string(cfg.train.network.hidden));
  set_meta(meta, "num_layers", std::to_string(cfg.train.network.num_layers));
  set_meta(meta, "best_epoch", std::to_string(res.best_epoch));
  set_meta(meta, "best_val_mse", io::format_double(res.best_val_mse));
  nn::save_model(model_out, res.network, ds.input_norm, ds.target_norm, meta);
  if (!loss_out.empty()) estimate::save_loss_history(loss_out, res.history, meta);

  std::cout << "wrote " << model_out << " (best epoch " << res.best_epoch << " of "
            << res.history.size() << " run, val mse " << io::format_double(res.best_val_mse)
            << (res.stopped_early ? ", stopped early" : "") << ")\n";
  if (!loss_out.empty()) std::cout << "wrote " << loss_out << "\n";
}

estimate::EstimateSeries do_estimate(const cli::RunConfig& cfg, const std::string& method,
                                     const std::string& log_path, const std::string& model_path,
                                     bool allow_mismatch) {
  require_file(log_path);
  const auto log = quadsim::TrajectoryLog::load(log_path);
  estimate::EstimateSeries series;
  if (method == "nn") {
    require_file(model_path);
    const auto model = nn::load_model(model_path);
    int seq_len = 0;
    const std::string seq_str = meta_value(model.meta, "seq_len");
    try {
      seq_len = std::stoi(seq_str);
    } catch (const std::exception&) {
      seq_len = 0;
    }
    if (seq_len <= 0) {
      throw FormatError("model file lacks a usable seq_len entry: " + model_path);
    }
    const std::string model_traj = meta_value(model.meta, "trajectory");
    const std::string log_traj = meta_value(log.meta, "trajectory");
    if (!allow_mismatch && !model_traj.empty() && !log_traj.empty() && model_traj != log_traj) {
      throw ConfigError("model was trained on '" + model_traj + "' trajectories but the log is '" +
                        log_traj + "' (pass --allow-mismatch to estimate anyway)");
    }
    series = estimate::nn_estimate(model, log, seq_len);
  } else {
    series = estimate::wt_estimate(log, cfg.quad);
  }
  set_meta(series.meta, "config", cfg.config_hash());
  set_meta(series.meta, "method", series.method);
  return series;
}

struct EvalEntry {
  std::string label;
  estimate::EstimateSeries series;
  metrics::MetricsReport report;
};

/// One row per method, columns matching the reported error metrics:
/// normalized MAE and error std per component, mean errors, covariance
/// distance, and the off-diagonal covariance terms.
std::string side_by_side(const std::vector<EvalEntry>& entries) {
  char buf[256];
  std::string text;
  std::snprintf(buf, sizeof buf, "%-10s %10s %10s %10s %10s %9s %9s %9s %13s %12s\n", "method",
                "mae/sig_N", "mae/sig_E", "std/sig_N", "std/sig_E", "mean_N", "mean_E", "cov_dist",
                "offdiag_true", "offdiag_est");
  text += buf;
  for (const auto& e : entries) {
    const auto& r = e.report;
    std::snprintf(buf, sizeof buf, "%-10s %10.4f %10.4f %10.4f %10.4f %9.4f %9.4f ",
                  e.label.c_str(), r.north.mae_norm, r.east.mae_norm, r.north.std_norm,
                  r.east.std_norm, r.north.mean_error, r.east.mean_error);
    text += buf;
    if (r.cov_defined) {
      std::snprintf(buf, sizeof buf, "%9.4f", r.cov_distance);
    } else {
      std::snprintf(buf, sizeof buf, "%9s", "n/a");
    }
    text += buf;
    std::snprintf(buf, sizeof buf, " %13.4f %12.4f\n", r.true_offdiag, r.est_offdiag);
    text += buf;
  }
  return text;
}

void do_evaluate(const cli::RunConfig& cfg, const std::vector<std::string>& est_paths,
                 const std::string& out_dir, double bin_width) {
  if (!(bin_width > 0.0)) throw ConfigError("--bin-width must be > 0");
  fs::create_directories(out_dir);

  std::vector<EvalEntry> entries;
  for (const auto& path : est_paths) {
    require_file(path);
    EvalEntry e;
    e.series = estimate::load_estimates(path);
    e.report = metrics::compute_metrics(e.series);
    e.label = e.series.method;
    int previous = 0;
    for (const auto& prev : entries) {
      if (prev.series.method == e.series.method) ++previous;
    }
    if (previous > 0) e.label += "_" + std::to_string(previous + 1);
    entries.push_back(std::move(e));
  }

  const io::MetaList meta{{"kind", "report"}, {"config", cfg.config_hash()}};
  std::string text = io::provenance_line(meta) + "\n";
  text += "error convention: eps = true - estimate; sigma = std of the true component\n\n";
  if (entries.size() > 1) text += side_by_side(entries) + "\n";
  for (const auto& e : entries) text += metrics::format_report(e.report, e.label) + "\n";

  const fs::path dir(out_dir);
  {
    const std::string report_path = (dir / "report.txt").string();
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw FormatError("cannot open output file: " + report_path);
    out << text;
  }
  std::cout << text;

  for (const auto& e : entries) {
    metrics::save_report_kv((dir / ("report_" + e.label + ".kv")).string(), e.report, e.label,
                            meta);
    const std::array<const char*, 2> names = {"north", "east"};
    for (int comp = 0; comp < 2; ++comp) {
      const auto& cm = comp == 0 ? e.report.north : e.report.east;
      if (cm.sigma_zero) continue;  // eps/sigma undefined for a constant component
      std::vector<double> errs;
      errs.reserve(e.series.size());
      for (std::size_t i = 0; i < e.series.size(); ++i) {
        if (!e.series.valid[i]) continue;
        errs.push_back(comp == 0 ? e.series.wn_true[i] - e.series.wn_est[i]
                                 : e.series.we_true[i] - e.series.we_est[i]);
      }
      const auto hist = metrics::error_histogram(errs, cm.sigma_true, bin_width);
      io::MetaList hmeta = meta;
      set_meta(hmeta, "kind", "error_histogram");
      set_meta(hmeta, "method", e.label);
      set_meta(hmeta, "component", names[static_cast<std::size_t>(comp)]);
      set_meta(hmeta, "sigma", io::format_double(cm.sigma_true));
      set_meta(hmeta, "bin_width", io::format_double(bin_width));
      metrics::save_histogram(
          (dir / ("hist_" + e.label + "_" + names[static_cast<std::size_t>(comp)] + ".csv"))
              .string(),
          hist, hmeta);
    }
  }
  std::cout << "wrote " << (dir / "report.txt").string() << " plus key-value and histogram files\n";
}

void do_repro(const cli::RunConfig& cfg, const std::string& case_name, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  const bool line = case_name.rfind("line-", 0) == 0;

  cli::RunConfig base = cfg;
  base.trajectory.kind = line ? "line" : "hover";

  // Training flight: random piecewise-constant wind, so the model sees the
  // closed-loop response to many independent step gusts.
  cli::RunConfig train_cfg = base;
  train_cfg.sim.duration = cfg.repro.train_duration;
  train_cfg.wind.kind = "piecewise";
  train_cfg.wind.seed = cfg.repro.train_seed;
  train_cfg.wind.piecewise.duration = cfg.repro.train_duration;
  train_cfg.validate();

  std::cout << "[repro " << case_name << "] training flight ("
            << io::format_double(train_cfg.sim.duration) << " s, piecewise wind, seed "
            << train_cfg.wind.seed << ")\n";
  const std::string train_traj = (dir / "train_traj.csv").string();
  do_simulate(train_cfg, train_traj);

  const std::string dataset_path = (dir / "dataset.bin").string();
  do_build_dataset(train_cfg, train_traj, dataset_path);

  const std::string model_path = (dir / "model.bin").string();
  do_train(train_cfg, dataset_path, model_path, (dir / "loss.csv").string());

  // Evaluation flight: the case's wind field under a fresh seed.
  cli::RunConfig eval_cfg = base;
  eval_cfg.sim.duration = cfg.repro.eval_duration;
  eval_cfg.wind.seed = cfg.repro.eval_seed;
  if (case_name == "hover-piecewise") {
    eval_cfg.wind.kind = "piecewise";
    eval_cfg.wind.piecewise.duration = cfg.repro.eval_duration;
  } else {
    eval_cfg.wind.kind = "dryden";
    eval_cfg.wind.dryden.sigma = {1.06, 1.06, 0.7};  // the "-1.06" in the case name
  }
  eval_cfg.validate();

  std::cout << "[repro " << case_name << "] evaluation flight ("
            << io::format_double(eval_cfg.sim.duration) << " s, " << eval_cfg.wind.kind
            << " wind, seed " << eval_cfg.wind.seed << ")\n";
  const std::string eval_traj = (dir / "eval_traj.csv").string();
  do_simulate(eval_cfg, eval_traj);

  const std::string est_nn = (dir / "est_nn.csv").string();
  const std::string est_wt = (dir / "est_wt.csv").string();
  estimate::save_estimates(est_nn, do_estimate(eval_cfg, "nn", eval_traj, model_path, false));
  std::cout << "wrote " << est_nn << "\n";
  estimate::save_estimates(est_wt, do_estimate(eval_cfg, "wt", eval_traj, "", false));
  std::cout << "wrote " << est_wt << "\n";

  do_evaluate(eval_cfg, {est_nn, est_wt}, out_dir, 0.25);
  std::cout << "[repro " << case_name << "] done; artifacts in " << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) +
               " — quadcopter wind estimation: simulate flights, train the "
               "estimator, and compare it against the tilt-based baseline"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("-c,--config", config_path,
                 "JSON config file; omitted keys (or the whole flag) fall back to defaults");

  // gen-wind ---------------------------------------------------------------
  auto* gen = app.add_subcommand(
      "gen-wind", "Write a wind signal CSV, or convert a node CSV into a grid binary");
  struct {
    std::string out, kind, grid_csv;
    std::uint64_t seed = 0;
    double duration = 0.0, rate = 0.0;
    std::vector<std::uint32_t> dims;
    std::vector<double> spacing, origin;
  } gw;
  gen->add_option("-o,--out", gw.out, "output file (CSV, or binary in grid mode)")->required();
  auto* gw_kind = gen->add_option("--kind", gw.kind, "override wind.kind")
                      ->check(CLI::IsMember({"none", "constant", "dryden", "piecewise", "spectral",
                                             "grid"}));
  auto* gw_seed = gen->add_option("--seed", gw.seed, "override wind.seed");
  auto* gw_dur = gen->add_option("--duration", gw.duration, "signal length, s (default: sim.duration)");
  auto* gw_rate = gen->add_option("--rate", gw.rate, "sample rate, Hz (default: sim.log_rate)");
  gen->add_option("--grid-csv", gw.grid_csv,
                  "grid mode: node CSV (ix,iy,iz,it,wn,we,wd) to pack into a binary grid");
  gen->add_option("--dims", gw.dims, "grid mode: node counts nx ny nz nt")->expected(4);
  gen->add_option("--spacing", gw.spacing, "grid mode: spacing dx dy dz dt")->expected(4);
  gen->add_option("--origin", gw.origin, "grid mode: origin ox oy oz ot (default 0 0 0 0)")
      ->expected(4);
  gen->callback([&] {
    cli::RunConfig cfg = load_config(config_path);
    if (!gw.grid_csv.empty()) {
      if (gw.dims.size() != 4 || gw.spacing.size() != 4) {
        throw UsageError("grid conversion requires --dims and --spacing");
      }
      require_file(gw.grid_csv);
      double spacing[4], origin[4] = {0.0, 0.0, 0.0, 0.0};
      std::copy(gw.spacing.begin(), gw.spacing.end(), spacing);
      if (gw.origin.size() == 4) std::copy(gw.origin.begin(), gw.origin.end(), origin);
      const auto grid = wind::grid_from_csv(gw.grid_csv, gw.dims[0], gw.dims[1], gw.dims[2],
                                            gw.dims[3], spacing, origin);
      wind::save_grid_wind(gw.out, grid);
      std::cout << "wrote " << gw.out << " ("
                << static_cast<std::uint64_t>(grid.nx) * grid.ny * grid.nz * grid.nt
                << " nodes)\n";
      return;
    }
    if (gw_kind->count() > 0) cfg.wind.kind = gw.kind;
    if (gw_seed->count() > 0) cfg.wind.seed = gw.seed;
    cfg.validate();
    const double duration = gw_dur->count() > 0 ? gw.duration : cfg.sim.duration;
    const double rate = gw_rate->count() > 0 ? gw.rate : cfg.sim.log_rate;
    if (!(duration > 0.0)) throw ConfigError("--duration must be > 0");
    if (!(rate > 0.0)) throw ConfigError("--rate must be > 0");
    if (cfg.wind.kind == "grid") require_file(cfg.wind.grid_file);
    const auto field = cli::make_wind_field(cfg.wind);
    const io::MetaList meta{{"kind", "wind_signal"},
                            {"config", cfg.config_hash()},
                            {"wind", field->describe()},
                            {"seed", std::to_string(cfg.wind.seed)},
                            {"rate", io::format_double(rate)},
                            {"duration", io::format_double(duration)}};
    io::CsvWriter writer(gw.out, meta, {"t", "wn", "we", "wd"});
    const long steps = std::lround(duration * rate);
    for (long k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) / rate;
      const Vec3 v = field->sample(cfg.sim.initial_position, t);
      writer.row(std::array<double, 4>{t, v.x, v.y, v.z});
    }
    writer.close();
    std::cout << "wrote " << gw.out << " (" << steps + 1 << " samples, wind=" << field->describe()
              << ")\n";
  });

  // simulate ---------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Fly the configured trajectory and log the result");
  struct {
    std::string out, traj, kind;
    std::uint64_t seed = 0;
    double duration = 0.0;
  } sa;
  sim->add_option("-o,--out", sa.out, "trajectory CSV to write")->required();
  auto* sa_dur = sim->add_option("--duration", sa.duration, "override sim.duration, s");
  auto* sa_seed = sim->add_option("--seed", sa.seed, "override wind.seed");
  auto* sa_traj = sim->add_option("--traj", sa.traj, "override trajectory.kind")
                      ->check(CLI::IsMember({"hover", "line"}));
  auto* sa_kind = sim->add_option("--kind", sa.kind, "override wind.kind")
                      ->check(CLI::IsMember({"none", "constant", "dryden", "piecewise", "spectral",
                                             "grid"}));
  sim->callback([&] {
    cli::RunConfig cfg = load_config(config_path);
    if (sa_dur->count() > 0) cfg.sim.duration = sa.duration;
    if (sa_seed->count() > 0) cfg.wind.seed = sa.seed;
    if (sa_traj->count() > 0) cfg.trajectory.kind = sa.traj;
    if (sa_kind->count() > 0) cfg.wind.kind = sa.kind;
    cfg.validate();
    do_simulate(cfg, sa.out);
  });

  // build-dataset ----------------------------------------------------------
  auto* bd = app.add_subcommand("build-dataset",
                                "Cut a trajectory log into training windows with a seeded split");
  struct {
    std::string log, out;
  } ba;
  bd->add_option("--log", ba.log, "trajectory CSV from `simulate`")->required();
  bd->add_option("-o,--out", ba.out, "dataset binary to write")->required();
  bd->callback([&] {
    const cli::RunConfig cfg = load_config(config_path);
    do_build_dataset(cfg, ba.log, ba.out);
  });

  // train ------------------------------------------------------------------
  auto* tr = app.add_subcommand("train", "Train the wind estimator on a dataset");
  struct {
    std::string dataset, model_out, loss_out;
  } ta;
  tr->add_option("--dataset", ta.dataset, "dataset binary from `build-dataset`")->required();
  tr->add_option("-o,--model-out", ta.model_out, "model binary to write")->required();
  tr->add_option("--loss-out", ta.loss_out, "optional per-epoch loss CSV");
  tr->callback([&] {
    const cli::RunConfig cfg = load_config(config_path);
    do_train(cfg, ta.dataset, ta.model_out, ta.loss_out);
  });

  // estimate ---------------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "Estimate wind over a trajectory log");
  struct {
    std::string log, method, out, model;
    bool allow_mismatch = false;
  } ea;
  est->add_option("--log", ea.log, "trajectory CSV to estimate over")->required();
  est->add_option("--method", ea.method, "nn (trained model) or wt (tilt baseline)")
      ->required()
      ->check(CLI::IsMember({"nn", "wt"}));
  est->add_option("-o,--out", ea.out, "estimate CSV to write")->required();
  est->add_option("--model", ea.model, "model binary (required for --method nn)");
  est->add_flag("--allow-mismatch", ea.allow_mismatch,
                "estimate even when the model's training trajectory kind differs from the log's");
  est->callback([&] {
    const cli::RunConfig cfg = load_config(config_path);
    if (ea.method == "nn" && ea.model.empty()) throw UsageError("--method nn requires --model");
    if (ea.method == "wt" && !ea.model.empty()) {
      throw UsageError("--model only applies to --method nn");
    }
    const auto series = do_estimate(cfg, ea.method, ea.log, ea.model, ea.allow_mismatch);
    estimate::save_estimates(ea.out, series);
    std::size_t valid = 0;
    for (const bool v : series.valid) valid += v ? 1u : 0u;
    std::cout << "wrote " << ea.out << " (" << valid << " estimates, method " << series.method
              << ")\n";
  });

  // evaluate ---------------------------------------------------------------
  auto* ev = app.add_subcommand(
      "evaluate", "Compute error metrics for estimate files and write a comparison report");
  struct {
    std::vector<std::string> est;
    std::string out_dir;
    double bin_width = 0.25;
  } va;
  ev->add_option("--est", va.est, "estimate CSV (repeat to compare methods side by side)")
      ->required();
  ev->add_option("-o,--out-dir", va.out_dir, "directory for report.txt, .kv, and histogram CSVs")
      ->required();
  ev->add_option("--bin-width", va.bin_width, "histogram bin width in units of eps/sigma");
  ev->callback([&] {
    const cli::RunConfig cfg = load_config(config_path);
    do_evaluate(cfg, va.est, va.out_dir, va.bin_width);
  });

  // repro ------------------------------------------------------------------
  auto* rp = app.add_subcommand(
      "repro", "One-shot pipeline: training flight, training, evaluation flight, both estimators, "
               "report");
  struct {
    std::string case_name, out_dir;
  } ra;
  rp->add_option("--case", ra.case_name, "named case")
      ->required()
      ->check(CLI::IsMember({"hover-dryden-1.06", "line-dryden-1.06", "hover-piecewise"}));
  rp->add_option("-o,--out-dir", ra.out_dir, "directory for all pipeline artifacts")->required();
  rp->callback([&] {
    const cli::RunConfig cfg = load_config(config_path);
    do_repro(cfg, ra.case_name, ra.out_dir);
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/errors appropriately
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
