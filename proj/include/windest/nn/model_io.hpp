#pragma once

#include <string>

#include "windest/io/csv.hpp"
#include "windest/nn/network.hpp"
#include "windest/nn/normalizer.hpp"

namespace windest::nn {

struct LoadedModel {
  Network network;
  Normalizer input_norm;   ///< applied to feature windows before inference
  Normalizer target_norm;  ///< inverse-applied to raw network outputs
  io::MetaList meta;       ///< training config and data provenance, free-form k/v
};

/// Binary model file:
///   offset 0: magic "WINDESTM" (8 bytes)
///   u32 version (currently 1)
///   u32 json length + JSON blob (architecture, feature names, meta pairs)
///   u32 count + f64[count] input-normalizer means  (little-endian)
///   u32 count + f64[count] input-normalizer scales
///   u32 count + f64[count] target-normalizer means
///   u32 count + f64[count] target-normalizer scales
///   f64 parameter blobs in Network::param_blocks order (sizes derived
///     from the architecture)
///   u32 CRC-32 (IEEE) of every preceding byte
/// Loading verifies magic, version, shape consistency, and the checksum
/// before constructing anything, so a truncated or corrupted file never
/// yields a partial model.
void save_model(const std::string& path, const Network& network, const Normalizer& input_norm,
                const Normalizer& target_norm, const io::MetaList& meta);

LoadedModel load_model(const std::string& path);

}  // namespace windest::nn
