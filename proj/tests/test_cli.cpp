#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "windest/cli/config.hpp"
#include "windest/errors.hpp"

using namespace windest;
namespace fs = std::filesystem;

namespace {

/// Scratch directory for files written by this suite; wiped per run.
fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "windest_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  out.close();
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Runs the tool with `args`, discarding output; returns the exit code.
int run_cli(const std::string& args) {
  const std::string cmd = std::string(WINDEST_BIN) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig: serialization, hashing, strict parsing
// ---------------------------------------------------------------------------

TEST_CASE("default config canonical form is stable and hash is 16 hex chars") {
  const cli::RunConfig a, b;
  CHECK(a.canonical_json() == b.canonical_json());
  const std::string h = a.config_hash();
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(a.config_hash() == b.config_hash());
}

TEST_CASE("shipped default config file matches the in-code defaults") {
  const std::string path = std::string(WINDEST_SOURCE_DIR) + "/configs/default.json";
  const cli::RunConfig loaded = cli::RunConfig::load(path);
  CHECK(loaded.canonical_json() == cli::RunConfig{}.canonical_json());
  CHECK(loaded.config_hash() == cli::RunConfig{}.config_hash());
  // The shipped file is the pretty rendering of those defaults, byte for byte.
  CHECK(read_file(path) == cli::RunConfig{}.pretty_json());
}

TEST_CASE("absent keys keep defaults; present keys override") {
  const std::string p = write_file(
      "partial.json", R"({"sim": {"duration": 12.5}, "train": {"adam": {"lr": 0.01}}})");
  const cli::RunConfig cfg = cli::RunConfig::load(p);
  CHECK(cfg.sim.duration == 12.5);
  CHECK(cfg.train.adam.lr == 0.01);
  // Everything else untouched.
  CHECK(cfg.sim.dt == cli::RunConfig{}.sim.dt);
  CHECK(cfg.train.adam.beta1 == cli::RunConfig{}.train.adam.beta1);
  CHECK(cfg.quad.mass == cli::RunConfig{}.quad.mass);
  // And the hash reflects the override.
  CHECK(cfg.config_hash() != cli::RunConfig{}.config_hash());
}

TEST_CASE("unknown keys are rejected with their dotted path") {
  const std::string top = write_file("u1.json", R"({"bogus": 1})");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load(top), doctest::Contains("'bogus'"), ConfigError);

  const std::string nested = write_file("u2.json", R"({"train": {"adam": {"foo": 1}}})");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load(nested), doctest::Contains("'train.adam.foo'"),
                       ConfigError);

  const std::string wind = write_file("u3.json", R"({"wind": {"dryden": {"sigmas": [1,1,1]}}})");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load(wind), doctest::Contains("'wind.dryden.sigmas'"),
                       ConfigError);
}

TEST_CASE("mistyped values are rejected with the key name") {
  const std::string p1 = write_file("t1.json", R"({"quad": {"mass": "heavy"}})");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load(p1), doctest::Contains("'quad.mass'"), ConfigError);

  const std::string p2 = write_file("t2.json", R"({"quad": {"inertia": [1, 2]}})");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load(p2), doctest::Contains("array of 3"), ConfigError);

  const std::string p3 = write_file("t3.json", R"({"sim": {"integrator": "rk5"}})");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load(p3), doctest::Contains("sim.integrator"), ConfigError);

  const std::string p4 = write_file("t4.json", R"({"sim": 3})");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load(p4), doctest::Contains("'sim'"), ConfigError);
}

TEST_CASE("unparseable or missing config files raise FormatError") {
  const std::string p = write_file("broken.json", "{\"sim\": ");
  CHECK_THROWS_AS(cli::RunConfig::load(p), FormatError);
  CHECK_THROWS_AS(cli::RunConfig::load((scratch() / "absent.json").string()), FormatError);
}

TEST_CASE("integrator round-trips through the config text") {
  const std::string p = write_file("euler.json", R"({"sim": {"integrator": "euler"}})");
  const cli::RunConfig cfg = cli::RunConfig::load(p);
  CHECK(cfg.sim.integrator == quadsim::Integrator::euler);
  CHECK(cfg.canonical_json().find("\"integrator\":\"euler\"") != std::string::npos);
  // Reloading the serialized form reproduces the same config.
  const std::string again = write_file("euler2.json", cfg.pretty_json());
  CHECK(cli::RunConfig::load(again).canonical_json() == cfg.canonical_json());
}

TEST_CASE("validate rejects out-of-range sections") {
  cli::RunConfig cfg;
  cfg.wind.kind = "gusty";
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("wind.kind"), ConfigError);

  cfg = {};
  cfg.trajectory.kind = "circle";
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("trajectory.kind"), ConfigError);

  cfg = {};
  cfg.dataset.stride = cfg.dataset.seq_len + 1;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("dataset.stride"), ConfigError);

  cfg = {};
  cfg.dataset.val_fraction = 1.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("val_fraction"), ConfigError);

  cfg = {};
  cfg.wind.kind = "grid";  // no grid_file set
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("grid_file"), ConfigError);

  cfg = {};
  cfg.repro.eval_duration = 0.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("eval_duration"), ConfigError);

  cfg = {};
  cfg.wind.piecewise.interval_min = -1.0;  // inactive blocks are still checked
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config hash is sensitive to any field change") {
  const cli::RunConfig base;
  cli::RunConfig a = base;
  a.train.network.hidden = 101;
  cli::RunConfig b = base;
  b.wind.seed = 2;
  cli::RunConfig c = base;
  c.control.Kp3 = 3.78;
  CHECK(a.config_hash() != base.config_hash());
  CHECK(b.config_hash() != base.config_hash());
  CHECK(c.config_hash() != base.config_hash());
  CHECK(a.config_hash() != b.config_hash());
}

// ---------------------------------------------------------------------------
// make_wind_field dispatch
// ---------------------------------------------------------------------------

TEST_CASE("make_wind_field builds the configured kind") {
  cli::WindSpec spec;
  spec.kind = "none";
  CHECK(cli::make_wind_field(spec)->describe() == "none");
  CHECK(cli::make_wind_field(spec)->sample({0, 0, 0}, 1.0).x == 0.0);

  spec.kind = "constant";
  spec.constant_wind = {3.0, -2.0, 0.5};
  auto f = cli::make_wind_field(spec);
  const Vec3 w = f->sample({10, 10, 10}, 5.0);
  CHECK(w.x == 3.0);
  CHECK(w.y == -2.0);
  CHECK(w.z == 0.5);

  spec.kind = "dryden";
  CHECK(cli::make_wind_field(spec)->describe().find("dryden") == 0);
  spec.kind = "piecewise";
  CHECK(cli::make_wind_field(spec)->describe().find("piecewise") == 0);
  spec.kind = "spectral";
  CHECK(cli::make_wind_field(spec)->describe().find("spectral") == 0);

  spec.kind = "vortex";
  CHECK_THROWS_AS(cli::make_wind_field(spec), ConfigError);
  spec.kind = "grid";
  spec.grid_file.clear();
  CHECK_THROWS_WITH_AS(cli::make_wind_field(spec), doctest::Contains("grid_file"), ConfigError);
}

TEST_CASE("seeded wind fields from the factory are reproducible") {
  cli::WindSpec spec;
  spec.kind = "dryden";
  spec.seed = 7;
  auto a = cli::make_wind_field(spec);
  auto b = cli::make_wind_field(spec);
  for (double t = 0.0; t < 1.0; t += 0.1) {
    const Vec3 va = a->sample({0, 0, -10}, t);
    const Vec3 vb = b->sample({0, 0, -10}, t);
    CHECK(va.x == vb.x);
    CHECK(va.y == vb.y);
    CHECK(va.z == vb.z);
  }
}

// ---------------------------------------------------------------------------
// The installed binary: exit codes and file-level behavior
// ---------------------------------------------------------------------------

TEST_CASE("exit codes: usage 1, config 2, success 0") {
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 1);                 // a subcommand is required
  CHECK(run_cli("no-such-command") == 1);  // unknown subcommand
  CHECK(run_cli("simulate") == 1);         // missing required --out

  const std::string bad = write_file("badkey.json", R"({"motor": {"rpm": 1}})");
  const std::string out = (scratch() / "never.csv").string();
  CHECK(run_cli("--config " + bad + " simulate --out " + out) == 2);

  const std::string invalid = write_file("badval.json", R"({"quad": {"mass": -1}})");
  CHECK(run_cli("--config " + invalid + " simulate --out " + out) == 2);

  CHECK(run_cli("build-dataset --log " + (scratch() / "absent.csv").string() + " --out " +
                (scratch() / "x.bin").string()) == 1);
  CHECK(run_cli("--config " + (scratch() / "absent.json").string() + " simulate --out " + out) ==
        1);
}

TEST_CASE("gen-wind writes a provenance-led CSV and reruns byte-identically") {
  const std::string out1 = (scratch() / "wind1.csv").string();
  const std::string out2 = (scratch() / "wind2.csv").string();
  const std::string args = "gen-wind --kind dryden --seed 3 --duration 2 --rate 10 --out ";
  REQUIRE(run_cli(args + out1) == 0);
  REQUIRE(run_cli(args + out2) == 0);

  const std::string text = read_file(out1);
  CHECK(text.rfind("# windest ", 0) == 0);
  CHECK(text.find("config=") != std::string::npos);
  CHECK(text.find("seed=3") != std::string::npos);
  CHECK(text.find("t,wn,we,wd") != std::string::npos);
  CHECK(text == read_file(out2));
}

TEST_CASE("simulate stamps config hash, trajectory kind, and wind seed") {
  const std::string out = (scratch() / "traj_meta.csv").string();
  REQUIRE(run_cli("simulate --duration 2 --kind constant --traj line --seed 9 --out " + out) == 0);
  const std::string text = read_file(out);
  CHECK(text.rfind("# windest ", 0) == 0);
  CHECK(text.find("config=") != std::string::npos);
  CHECK(text.find("trajectory=line") != std::string::npos);
  CHECK(text.find("wind_seed=9") != std::string::npos);
  CHECK(text.find("wind=constant(") != std::string::npos);
}

TEST_CASE("estimate guards: nn needs a model, wt refuses one") {
  const std::string traj = (scratch() / "guard_traj.csv").string();
  REQUIRE(run_cli("simulate --duration 2 --kind constant --out " + traj) == 0);
  CHECK(run_cli("estimate --log " + traj + " --method nn --out " +
                (scratch() / "e1.csv").string()) == 1);
  CHECK(run_cli("estimate --log " + traj + " --method wt --model whatever.bin --out " +
                (scratch() / "e2.csv").string()) == 1);
  CHECK(run_cli("estimate --log " + traj + " --method wt --out " +
                (scratch() / "e3.csv").string()) == 0);
}
