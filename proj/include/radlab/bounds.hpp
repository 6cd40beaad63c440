#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlab/linalg.hpp"
#include "radlab/numrange.hpp"
#include "radlab/sphere_opt.hpp"
#include "radlab/types.hpp"

namespace radlab {

enum class BoundId {
  // radius bounds
  eq7_lower,
  eq7_upper,
  eq5_kittaneh,
  eq3_lower,
  eq3_upper,
  dragomir,
  half_abs_sum,
  thm24,
  cor_power,
  cor_c1,
  cor_c1_sq,
  thm29,
  thm31_sq,
  thm31_lin,
  thm35,
  // primitive checks
  lem_log,
  zou,
  mixed_schwarz,
  norm_sum,
  norm_power,
  vec_cs,
  gram_lemma,
  kian_lemma,
};

struct BoundInfo {
  BoundId id;
  const char* name;
  double degree;     // homogeneity degree in ||A||
  bool primitive;
  bool parametrized;  // takes an exponent r
};

const std::vector<BoundInfo>& bound_catalog();
const BoundInfo& bound_info(BoundId id);
std::optional<BoundId> bound_id_from_name(std::string_view name);

struct BoundParams {
  double r = 1.0;
  std::optional<ScalarFn> f;  // thm24 only; defaults to power(r)
};

/// One inequality evaluation. slack = rhs - lhs as computed from the best
/// point estimates; slack_safe replaces any sphere infimum by its certified
/// lower bound, so slack_safe < -threshold is a genuine violation.
struct BoundReport {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double slack_safe = 0.0;
  double degree = 1.0;
  double threshold = 0.0;
  bool applicable = true;
  std::string reason;  // machine-readable when applicable is false
  nlohmann::json witness = nlohmann::json::object();
  std::string inputs_digest;

  nlohmann::json to_json() const;
};

struct EvalOptions {
  double radius_tol_rel = 1e-6;  // radius certification relative to ||A||
  OptimizerOptions optimizer;
  bool oracle_for_inf = true;  // grid-certify sphere infima at dim <= 3
  double slack_abs = tol::slack_abs;
  double slack_rel = tol::slack_rel;
};

double slack_threshold(double degree, double norm_scale,
                       const EvalOptions& opts = {});

/// FNV-1a fingerprint of the raw matrix bytes.
std::string matrix_digest(const Matrix& a);

/// Shares the expensive per-matrix quantities (radius, absolute values,
/// sphere infima) across all bounds evaluated on one matrix.
class BoundContext {
 public:
  explicit BoundContext(Matrix a, EvalOptions opts = {});
  ~BoundContext();
  BoundContext(BoundContext&&) noexcept;
  BoundContext& operator=(BoundContext&&) noexcept;

  const Matrix& matrix() const;
  BoundReport evaluate(BoundId id, const BoundParams& params = {});
  /// Every radius bound, parametrized entries swept over r_values.
  std::vector<BoundReport> evaluate_catalog(
      const std::vector<double>& r_values = {1.0, 1.5, 2.0});
  /// evaluate_catalog plus the claimed refinement orderings as extra
  /// pass/fail entries (ids prefixed "chain_").
  std::vector<BoundReport> verify_chain(
      const std::vector<double>& r_values = {1.0, 1.5, 2.0});

  double norm();
  const RadiusResult& radius();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

BoundReport evaluate_radius_bound(const Matrix& a, BoundId id,
                                  const BoundParams& params = {},
                                  const EvalOptions& opts = {});

struct PrimitiveOperands {
  std::vector<double> scalars;   // lem_log: {alpha}; zou: {a, b}
  std::vector<Vector> vectors;   // mixed_schwarz: {x, y}; vec_cs: {x, y};
                                 // gram_lemma: {x, y, z_1, ..., z_n}
  std::vector<Matrix> matrices;  // mixed_schwarz: {A}; norm_*: {A, B};
                                 // kian_lemma: operands
  std::vector<double> weights;   // kian_lemma
  double r = 2.0;                // norm_power / kian_lemma exponent
};

BoundReport evaluate_primitive_check(BoundId id, const PrimitiveOperands& ops,
                                     const EvalOptions& opts = {});

}  // namespace radlab
