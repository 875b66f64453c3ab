#include "windest/nn/model_io.hpp"

#include <json.hpp>

#include <cstring>

#include "windest/errors.hpp"
#include "windest/io/binary.hpp"

namespace windest::nn {

namespace {

constexpr char kMagic[8] = {'W', 'I', 'N', 'D', 'E', 'S', 'T', 'M'};
constexpr std::uint32_t kVersion = 1;
const char* kKind = "model file";

}  // namespace

void save_model(const std::string& path, const Network& network, const Normalizer& input_norm,
                const Normalizer& target_norm, const io::MetaList& meta) {
  nlohmann::json j;
  j["architecture"] = {{"input_dim", network.config.input_dim},
                       {"hidden", network.config.hidden},
                       {"num_layers", network.config.num_layers},
                       {"output_dim", network.config.output_dim},
                       {"dropout", network.config.dropout},
                       {"tanh_candidate", network.config.tanh_candidate}};
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
  for (const Normalizer* n : {&input_norm, &target_norm}) {
    io::put_u32(out, static_cast<std::uint32_t>(n->mean.size()));
    for (const double m : n->mean) io::put_f64(out, m);
    io::put_u32(out, static_cast<std::uint32_t>(n->scale.size()));
    for (const double s : n->scale) io::put_f64(out, s);
  }
  for (const auto& blk : network.param_blocks()) {
    for (const double p : blk) io::put_f64(out, p);
  }
  io::write_checksummed(path, kKind, out);
}

LoadedModel load_model(const std::string& path) {
  // Checksum is verified before anything else is interpreted.
  const std::vector<unsigned char> buf = io::read_checksummed(path, kKind, 12);

  io::BinReader r(buf, path, kKind);
  const std::string magic = r.bytes(8, "magic");
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    r.fail("bad magic (expected \"WINDESTM\")");
  }
  const std::uint32_t version = r.u32("version");
  if (version != kVersion) r.fail("unsupported version " + std::to_string(version));

  const std::uint32_t json_len = r.u32("metadata length");
  const std::string json_text = r.bytes(json_len, "metadata");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    r.fail(std::string("metadata is not valid JSON: ") + e.what());
  }

  LoadedModel model;
  try {
    const nlohmann::json& arch = j.at("architecture");
    NetworkConfig cfg;
    cfg.input_dim = arch.at("input_dim").get<int>();
    cfg.hidden = arch.at("hidden").get<int>();
    cfg.num_layers = arch.at("num_layers").get<int>();
    cfg.output_dim = arch.at("output_dim").get<int>();
    cfg.dropout = arch.at("dropout").get<double>();
    cfg.tanh_candidate = arch.at("tanh_candidate").get<bool>();
    model.network = Network(cfg);
    if (j.contains("input_features")) {
      model.input_norm.feature_names = j.at("input_features").get<std::vector<std::string>>();
    }
    if (j.contains("target_features")) {
      model.target_norm.feature_names = j.at("target_features").get<std::vector<std::string>>();
    }
    if (j.contains("meta")) {
      for (const auto& [k, v] : j.at("meta").items()) {
        model.meta.emplace_back(k, v.get<std::string>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    r.fail(std::string("metadata missing required fields: ") + e.what());
  }

  for (Normalizer* n : {&model.input_norm, &model.target_norm}) {
    const std::uint32_t n_mean = r.u32("normalizer mean count");
    n->mean.resize(n_mean);
    for (std::uint32_t k = 0; k < n_mean; ++k) n->mean[k] = r.f64("normalizer mean");
    const std::uint32_t n_scale = r.u32("normalizer scale count");
    if (n_scale != n_mean) r.fail("normalizer mean/scale counts differ");
    n->scale.resize(n_scale);
    for (std::uint32_t k = 0; k < n_scale; ++k) n->scale[k] = r.f64("normalizer scale");
  }

  for (auto blk : model.network.param_blocks()) {
    for (double& p : blk) p = r.f64("parameters");
  }
  if (r.offset() != buf.size() - 4) {
    r.fail("trailing data after parameters at byte " + std::to_string(r.offset()));
  }
  return model;
}

}  // namespace windest::nn
