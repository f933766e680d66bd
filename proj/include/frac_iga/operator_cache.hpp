#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "frac_iga/operator_assembly.hpp"

namespace frac_iga {

/// Content hash of an assembled operator: surface JSON, discretization
/// parameters, and refinement level.
uint64_t operator_content_hash(const nlohmann::json& surface_json,
                               const DiscretizationParams& params, int refinement_level);

/// Writes an assembled (M, L) pair to a binary cache file. Little-endian
/// 64-bit layout: magic, content hash, dimensions, collocation set, sparse M
/// rows, dense L.
void save_operator_cache(const std::string& path, const OperatorPair& ops,
                         uint64_t content_hash);

/// Reads the cache back; returns nullopt when the file is missing, malformed,
/// or carries a different content hash.
std::optional<OperatorPair> load_operator_cache(const std::string& path,
                                                uint64_t expected_hash);

}  // namespace frac_iga
