#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radlab/types.hpp"

namespace radlab {

/// Real-valued, phase-invariant functional on the complex unit sphere.
/// value() and euclidean_gradient() use the functional's natural extension
/// off the sphere, so analytic gradients can be checked against plain
/// central differences in R^{2n}. The gradient is the complex vector g with
/// df = Re(g^H dx); its Euclidean norm equals the real gradient norm.
class SphereFunctional {
 public:
  virtual ~SphereFunctional() = default;

  virtual int dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector euclidean_gradient(const Vector& x) const = 0;
  /// Upper bound on the gradient norm over the unit sphere.
  virtual double lipschitz_bound() const = 0;
  /// Structured starting points (eigenvectors of the context matrices).
  virtual std::vector<Vector> suggested_starts() const { return {}; }
  virtual std::string name() const = 0;
};

/// <Px,x> / <Qx,x> for Hermitian P and PSD Q.
class PencilRatioFunctional : public SphereFunctional {
 public:
  PencilRatioFunctional(Matrix p, Matrix q);
  int dim() const override { return static_cast<int>(p_.rows()); }
  double value(const Vector& x) const override;
  Vector euclidean_gradient(const Vector& x) const override;
  double lipschitz_bound() const override;
  std::vector<Vector> suggested_starts() const override;
  std::string name() const override { return "pencil_ratio"; }

  const Matrix& p() const { return p_; }
  const Matrix& q() const { return q_; }

 private:
  Matrix p_, q_;
  double norm_p_, norm_q_, lambda_min_q_;
};

/// <(|A|^2 + |A*|^2) x, x> - <(|A| + |A*|) x, x>^2 / 2; on the sphere this
/// is <(||A| - c(x)|^2 + ||A*| - c(x)|^2) x, x> with
/// c(x) = <(|A| + |A*|) x, x> / 2.
class QuadraticDeviationFunctional : public SphereFunctional {
 public:
  explicit QuadraticDeviationFunctional(const Matrix& a);
  int dim() const override { return static_cast<int>(m_.rows()); }
  double value(const Vector& x) const override;
  Vector euclidean_gradient(const Vector& x) const override;
  double lipschitz_bound() const override;
  std::vector<Vector> suggested_starts() const override;
  std::string name() const override { return "quadratic_deviation"; }

 private:
  Matrix m_;  // A*A + AA*
  Matrix s_;  // |A| + |A*|
  double norm_m_, norm_s_;
};

/// |<A^2 x, x> - <Ax,x>^2| / ||A* x||. The |.| is smoothed as
/// sqrt(|.|^2 + eps^2), eps = 1e-12, inside gradients only.
class VarianceRatioFunctional : public SphereFunctional {
 public:
  explicit VarianceRatioFunctional(const Matrix& a);
  int dim() const override { return static_cast<int>(a_.rows()); }
  double value(const Vector& x) const override;
  Vector euclidean_gradient(const Vector& x) const override;
  double lipschitz_bound() const override;
  std::vector<Vector> suggested_starts() const override;
  std::string name() const override { return "variance_ratio"; }

  /// Numerator magnitude |<A^2 x,x> - <Ax,x>^2|; its zero locus is where the
  /// functional is nonsmooth.
  double numerator(const Vector& x) const;

 private:
  Matrix a_, a2_, n_;  // n_ = A A*
  double norm_a_, norm_a2_, sigma_min_;
};

/// sum_i w_i <|A_i - m(x) I|^r x, x> with m(x) = sum_j w_j <A_j x, x>.
class KianDeficiencyFunctional : public SphereFunctional {
 public:
  KianDeficiencyFunctional(std::vector<Matrix> as, std::vector<double> weights,
                           double r);
  int dim() const override { return dim_; }
  double value(const Vector& x) const override;
  Vector euclidean_gradient(const Vector& x) const override;
  double lipschitz_bound() const override;
  std::vector<Vector> suggested_starts() const override;
  std::string name() const override { return "kian_deficiency"; }

 private:
  int dim_;
  double r_;
  std::vector<double> weights_;
  std::vector<RealVector> eigenvalues_;  // per operand, ascending
  std::vector<Matrix> eigenvectors_;
  Matrix w_sum_;  // sum_i w_i A_i
  double norm_w_;
  std::vector<double> operand_norms_;
};

struct OptimizerOptions {
  int num_starts = 64;
  std::uint64_t seed = 0;
  int max_iters = 500;
  double grad_tol = 0.0;  // 0: auto-scaled from the Lipschitz bound
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  bool run_oracle = true;          // dim <= 3 wrappers only
  double oracle_resolution = 0.0;  // 0: 1e-3 at dim 2, 2e-2 at dim 3
  std::uint64_t oracle_budget = 2'000'000;
  double certify_tol = 1e-7;  // |value - oracle| gate, relative
};

struct SphereOptResult {
  Vector minimizer;
  double value = 0.0;
  double gradient_norm = 0.0;
  int starts_used = 0;
  std::optional<double> oracle_value;
  bool certified = false;
  // Oracle certificate: inf f >= oracle_lower = oracle_value - L * res.
  std::optional<double> oracle_lower;
  std::optional<double> oracle_lipschitz;
  std::optional<double> oracle_resolution;
};

/// Multi-start projected gradient descent with Armijo backtracking and
/// renormalization back to the sphere. Deterministic argmin over starts.
SphereOptResult projected_gradient_min(const SphereFunctional& f,
                                       const std::vector<Vector>& starts,
                                       const OptimizerOptions& opts = {});

/// Minimum of f over an adaptively refined net on the unit sphere modulo
/// global phase, pruned with the computed Lipschitz bound so the result
/// carries the same certificate as a uniform net of the given spacing:
///   value - L * resolution <= inf f <= value.
double sphere_grid_oracle(const SphereFunctional& f, int dim,
                          double resolution);

struct OracleRun {
  double value = 0.0;
  double lower_bound = 0.0;  // certified: inf f >= lower_bound
  double lipschitz = 0.0;
  double resolution = 0.0;  // achieved
  std::uint64_t evals = 0;
  bool completed = false;  // ran to the requested resolution within budget
};

OracleRun run_sphere_oracle(const SphereFunctional& f, double resolution,
                            std::uint64_t eval_budget);

/// xi_{|A|}: infimum over the sphere of
/// <(|A| - |A*|)x,x> / <(|A| + |A*|)x,x>, solved exactly as the smallest
/// generalized eigenvalue of the pencil (|A| - |A*|, |A| + |A*|) on the
/// orthogonal complement of ker(|A| + |A*|). Always lands in [-1, 1].
SphereOptResult xi_pencil(const Matrix& a);

SphereOptResult inf_xi_quadratic_deviation(const Matrix& a,
                                           const OptimizerOptions& opts = {});

SphereOptResult inf_xi_variance_ratio(const Matrix& a,
                                      const OptimizerOptions& opts = {});

SphereOptResult kian_deficiency(const std::vector<Matrix>& as,
                                const std::vector<double>& weights, double r,
                                const OptimizerOptions& opts = {});

/// ||A| - c(x)|^2 + ||A*| - c(x)|^2 with c(x) = <(|A| + |A*|)x,x> / 2.
Matrix quadratic_deviation_operator(const Matrix& a, const Vector& x);

/// Sound lower estimate of the infimum of a nonnegative functional:
/// min(value, oracle_lower) clamped at 0, or 0 when no oracle certificate
/// is available.
double certified_nonneg_lower(const SphereOptResult& result);

}  // namespace radlab
