#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "radlab/types.hpp"

namespace radlab {

/// Serializes with doubles rendered at 17 significant digits so every value
/// round-trips losslessly.
std::string dump_json_17(const nlohmann::json& j, int indent = 2);

nlohmann::json load_json_file(const std::string& path);

/// Writes via a temporary file and rename, so readers never see a torn file.
void write_json_atomic(const nlohmann::json& j, const std::string& path);

}  // namespace radlab
