#include "windest/estimate/dataset.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "windest/errors.hpp"
#include "windest/io/binary.hpp"
#include "windest/rng.hpp"

namespace windest::estimate {

namespace {

constexpr char kMagic[8] = {'W', 'I', 'N', 'D', 'E', 'S', 'T', 'D'};
constexpr std::uint32_t kVersion = 1;
const char* kKind = "dataset file";

}  // namespace

Dataset build_sequences(const quadsim::TrajectoryLog& log, int n, int stride,
                        double val_fraction, std::uint64_t seed) {
  if (n < 1) {
    throw ConfigError("sequence length must be >= 1 (got " + std::to_string(n) + ")");
  }
  if (stride < 1 || stride > n) {
    throw ConfigError("window stride must be in [1, n] (got stride=" + std::to_string(stride) +
                      ", n=" + std::to_string(n) + ")");
  }
  if (!(val_fraction >= 0.0) || val_fraction >= 1.0) {
    throw ConfigError("validation fraction must be in [0, 1) (got " +
                      std::to_string(val_fraction) + ")");
  }
  const auto& s = log.samples;
  if (s.size() < static_cast<std::size_t>(n)) {
    throw ConfigError("trajectory log has " + std::to_string(s.size()) +
                      " samples; need at least the sequence length n=" + std::to_string(n));
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double gap = s[i + 1].t - s[i].t;
    if (std::abs(gap - log.log_dt) > 1e-6) {
      throw FormatError("trajectory log timestamps are irregular at sample " + std::to_string(i) +
                        ": spacing " + std::to_string(gap) + " s, expected " +
                        std::to_string(log.log_dt) + " s");
    }
  }

  Dataset ds;
  ds.seq_len = n;
  ds.stride = stride;
  ds.meta = log.meta;
  const std::size_t count = (s.size() - static_cast<std::size_t>(n)) /
                                static_cast<std::size_t>(stride) +
                            1;
  ds.inputs.resize(count * static_cast<std::size_t>(n) * kInputDim);
  ds.targets.resize(count * kTargetDim);
  ds.end_times.resize(count);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t start = w * static_cast<std::size_t>(stride);
    double* in = ds.inputs.data() + w * static_cast<std::size_t>(n) * kInputDim;
    for (int k = 0; k < n; ++k) {
      const auto& smp = s[start + static_cast<std::size_t>(k)];
      in[k * kInputDim + 0] = smp.position.x;
      in[k * kInputDim + 1] = smp.position.y;
      in[k * kInputDim + 2] = smp.attitude.x;
      in[k * kInputDim + 3] = smp.attitude.y;
    }
    const auto& last = s[start + static_cast<std::size_t>(n) - 1];
    ds.targets[w * kTargetDim + 0] = last.wind.x;
    ds.targets[w * kTargetDim + 1] = last.wind.y;
    ds.end_times[w] = last.t;
  }

  // Seeded random validation subset; indices re-sorted so the stored split
  // is canonical regardless of shuffle order.
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0xda7a));
  rng.shuffle(order);
  std::size_t val_count = static_cast<std::size_t>(std::llround(val_fraction * count));
  if (val_count >= count && count > 0) val_count = count - 1;  // keep >= 1 training window
  ds.val_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(val_count));
  ds.train_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(val_count), order.end());
  std::sort(ds.val_indices.begin(), ds.val_indices.end());
  std::sort(ds.train_indices.begin(), ds.train_indices.end());

  // Normalizers are fitted on the training split only.
  std::vector<double> train_rows;
  train_rows.reserve(ds.train_indices.size() * static_cast<std::size_t>(n) * kInputDim);
  std::vector<double> train_targets;
  train_targets.reserve(ds.train_indices.size() * kTargetDim);
  for (const std::size_t w : ds.train_indices) {
    const double* in = ds.inputs.data() + w * static_cast<std::size_t>(n) * kInputDim;
    train_rows.insert(train_rows.end(), in, in + static_cast<std::size_t>(n) * kInputDim);
    const double* tg = ds.targets.data() + w * kTargetDim;
    train_targets.insert(train_targets.end(), tg, tg + kTargetDim);
  }
  ds.input_norm = nn::Normalizer::fit(train_rows, kInputDim, input_feature_names());
  ds.target_norm = nn::Normalizer::fit(train_targets, kTargetDim, target_feature_names());
  return ds;
}

void Dataset::save(const std::string& path) const {
  nlohmann::json j;
  j["seq_len"] = seq_len;
  j["stride"] = stride;
  j["count"] = count();
  j["input_features"] = input_norm.feature_names;
  j["target_features"] = target_norm.feature_names;
  nlohmann::json jm = nlohmann::json::object();
  for (const auto& [k, v] : meta) jm[k] = v;
  j["meta"] = jm;
  const std::string json_text = j.dump();

  std::string out;
  out.append(kMagic, sizeof(kMagic));
  io::put_u32(out, kVersion);
  io::put_u32(out, static_cast<std::uint32_t>(json_text.size()));
  out += json_text;
  for (const auto* idx : {&train_indices, &val_indices}) {
    io::put_u32(out, static_cast<std::uint32_t>(idx->size()));
    for (const std::size_t i : *idx) io::put_u32(out, static_cast<std::uint32_t>(i));
  }
  for (const nn::Normalizer* nrm : {&input_norm, &target_norm}) {
    io::put_u32(out, static_cast<std::uint32_t>(nrm->mean.size()));
    for (const double m : nrm->mean) io::put_f64(out, m);
    for (const double sc : nrm->scale) io::put_f64(out, sc);
  }
  for (const double v : inputs) io::put_f64(out, v);
  for (const double v : targets) io::put_f64(out, v);
  for (const double v : end_times) io::put_f64(out, v);
  io::write_checksummed(path, kKind, out);
}

Dataset Dataset::load(const std::string& path) {
  const std::vector<unsigned char> buf = io::read_checksummed(path, kKind, 12);
  io::BinReader r(buf, path, kKind);
  const std::string magic = r.bytes(8, "magic");
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    r.fail("bad magic (expected \"WINDESTD\")");
  }
  const std::uint32_t version = r.u32("version");
  if (version != kVersion) r.fail("unsupported version " + std::to_string(version));

  const std::uint32_t json_len = r.u32("header length");
  const std::string json_text = r.bytes(json_len, "header");
  Dataset ds;
  std::size_t count = 0;
  try {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    ds.seq_len = j.at("seq_len").get<int>();
    ds.stride = j.at("stride").get<int>();
    count = j.at("count").get<std::size_t>();
    ds.input_norm.feature_names = j.at("input_features").get<std::vector<std::string>>();
    ds.target_norm.feature_names = j.at("target_features").get<std::vector<std::string>>();
    if (j.contains("meta")) {
      for (const auto& [k, v] : j.at("meta").items()) ds.meta.emplace_back(k, v.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    r.fail(std::string("invalid header: ") + e.what());
  }
  if (ds.seq_len < 1 || ds.stride < 1) r.fail("non-positive seq_len or stride in header");

  for (auto* idx : {&ds.train_indices, &ds.val_indices}) {
    const std::uint32_t m = r.u32("split index count");
    idx->resize(m);
    for (std::uint32_t k = 0; k < m; ++k) {
      (*idx)[k] = r.u32("split index");
      if ((*idx)[k] >= count) r.fail("split index out of range");
    }
  }
  if (ds.train_indices.size() + ds.val_indices.size() != count) {
    r.fail("split sizes do not add up to the window count");
  }
  for (nn::Normalizer* nrm : {&ds.input_norm, &ds.target_norm}) {
    const std::uint32_t m = r.u32("normalizer size");
    nrm->mean.resize(m);
    nrm->scale.resize(m);
    for (std::uint32_t k = 0; k < m; ++k) nrm->mean[k] = r.f64("normalizer mean");
    for (std::uint32_t k = 0; k < m; ++k) nrm->scale[k] = r.f64("normalizer scale");
  }
  ds.inputs.resize(count * static_cast<std::size_t>(ds.seq_len) * kInputDim);
  for (double& v : ds.inputs) v = r.f64("inputs");
  ds.targets.resize(count * kTargetDim);
  for (double& v : ds.targets) v = r.f64("targets");
  ds.end_times.resize(count);
  for (double& v : ds.end_times) v = r.f64("end times");
  if (r.offset() != buf.size() - 4) {
    r.fail("trailing data at byte " + std::to_string(r.offset()));
  }
  return ds;
}

}  // namespace windest::estimate
