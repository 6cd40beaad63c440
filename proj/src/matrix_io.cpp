#include "radlab/matrix_io.hpp"

#include "radlab/json_io.hpp"

namespace radlab {

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
    throw ParseError("matrix document needs 'dim' and 'rows'");
  }
  if (!j["dim"].is_number_integer() && !j["dim"].is_number_unsigned()) {
    throw ParseError("'dim' must be an integer");
  }
  const std::int64_t dim = j["dim"].get<std::int64_t>();
  if (dim < 1 || dim > 4096) {
    throw ParseError("'dim' out of range: " + std::to_string(dim));
  }
  const auto& rows = j["rows"];
  if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != dim) {
    throw ParseError("'rows' must be an array of dim rows");
  }
  Matrix a(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim) {
      throw ParseError("row " + std::to_string(i) +
                       " does not have dim entries");
    }
    for (std::int64_t k = 0; k < dim; ++k) {
      const auto& entry = row[static_cast<std::size_t>(k)];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError("entry (" + std::to_string(i) + "," +
                         std::to_string(k) + ") must be [re, im]");
      }
      a(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  validate_matrix(a);
  return a;
}

nlohmann::json matrix_to_json(const Matrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      row.push_back({a(i, k).real(), a(i, k).imag()});
    }
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"dim", a.rows()}, {"rows", std::move(rows)}};
}

Matrix load_matrix(const std::string& path) {
  return matrix_from_json(load_json_file(path));
}

void save_matrix(const Matrix& a, const std::string& path) {
  write_json_atomic(matrix_to_json(a), path);
}

}  // namespace radlab
