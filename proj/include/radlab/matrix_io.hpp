#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "radlab/types.hpp"

namespace radlab {

/// Matrix document: {"dim": n, "rows": [[[re, im], ...], ...]} with dim rows
/// of dim [re, im] pairs. Non-square or non-finite data is rejected.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& a);

Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& a, const std::string& path);

}  // namespace radlab
