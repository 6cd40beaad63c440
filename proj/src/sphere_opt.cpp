#include "radlab/sphere_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "radlab/generators.hpp"
#include "radlab/linalg.hpp"

namespace radlab {

namespace {

double quad_form(const Matrix& h, const Vector& x) {
  return (x.adjoint() * h * x)(0, 0).real();
}

Complex bilinear(const Matrix& b, const Vector& x) {
  return (x.adjoint() * b * x)(0, 0);
}

std::vector<Vector> hermitian_eigvec_starts(const Matrix& h) {
  std::vector<Vector> starts;
  HermitianEig eig = hermitian_eig(h);
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    starts.push_back(eig.eigenvectors.col(i));
  }
  return starts;
}

void append_starts(std::vector<Vector>& dst, std::vector<Vector> src) {
  for (auto& v : src) dst.push_back(std::move(v));
}

}  // namespace

// ---------------------------------------------------------------------------
// Functionals

PencilRatioFunctional::PencilRatioFunctional(Matrix p, Matrix q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.rows() != q_.rows()) {
    throw DimensionMismatchError("pencil matrices must share a dimension");
  }
  norm_p_ = spectral_norm(p_);
  norm_q_ = spectral_norm(q_);
  lambda_min_q_ = lambda_min_hermitian(q_);
}

double PencilRatioFunctional::value(const Vector& x) const {
  const double denom = quad_form(q_, x);
  return quad_form(p_, x) / std::max(denom, 1e-300);
}

Vector PencilRatioFunctional::euclidean_gradient(const Vector& x) const {
  const double denom = std::max(quad_form(q_, x), 1e-300);
  const double f = quad_form(p_, x) / denom;
  return (2.0 / denom) * (p_ * x - f * (q_ * x));
}

double PencilRatioFunctional::lipschitz_bound() const {
  if (lambda_min_q_ <= 0.0) return std::numeric_limits<double>::infinity();
  const double fmax = norm_p_ / lambda_min_q_;
  return 2.0 * (norm_p_ + norm_q_ * fmax) / lambda_min_q_;
}

std::vector<Vector> PencilRatioFunctional::suggested_starts() const {
  std::vector<Vector> starts = hermitian_eigvec_starts(p_);
  append_starts(starts, hermitian_eigvec_starts(q_));
  return starts;
}

QuadraticDeviationFunctional::QuadraticDeviationFunctional(const Matrix& a) {
  const Matrix aa = a.adjoint() * a;
  const Matrix aas = a * a.adjoint();
  m_ = aa + aas;
  s_ = sqrt_psd(aa) + sqrt_psd(aas);
  norm_m_ = lambda_max_hermitian(m_);
  norm_s_ = lambda_max_hermitian(s_);
}

double QuadraticDeviationFunctional::value(const Vector& x) const {
  const double s = quad_form(s_, x);
  return quad_form(m_, x) - 0.5 * s * s;
}

Vector QuadraticDeviationFunctional::euclidean_gradient(const Vector& x) const {
  const double s = quad_form(s_, x);
  return 2.0 * (m_ * x) - 2.0 * s * (s_ * x);
}

double QuadraticDeviationFunctional::lipschitz_bound() const {
  return 2.0 * norm_m_ + 2.0 * norm_s_ * norm_s_;
}

std::vector<Vector> QuadraticDeviationFunctional::suggested_starts() const {
  std::vector<Vector> starts = hermitian_eigvec_starts(s_);
  append_starts(starts, hermitian_eigvec_starts(m_));
  return starts;
}

VarianceRatioFunctional::VarianceRatioFunctional(const Matrix& a)
    : a_(a), a2_(a * a), n_(a * a.adjoint()) {
  norm_a_ = spectral_norm(a_);
  norm_a2_ = spectral_norm(a2_);
  Eigen::JacobiSVD<Matrix> svd(a_);
  sigma_min_ = svd.singularValues()(svd.singularValues().size() - 1);
}

double VarianceRatioFunctional::numerator(const Vector& x) const {
  const Complex q = bilinear(a_, x);
  return std::abs(bilinear(a2_, x) - q * q);
}

double VarianceRatioFunctional::value(const Vector& x) const {
  const double d = std::sqrt(std::max(quad_form(n_, x), 0.0));
  return numerator(x) / std::max(d, 1e-300);
}

Vector VarianceRatioFunctional::euclidean_gradient(const Vector& x) const {
  constexpr double eps = 1e-12;
  const Complex q = bilinear(a_, x);
  const Complex g = bilinear(a2_, x) - q * q;
  const double d2 = std::max(quad_form(n_, x), 1e-300);
  const double d = std::sqrt(d2);
  const double nu = std::sqrt(std::norm(g) + eps * eps);

  const Vector dg = a2_ * x - 2.0 * q * (a_ * x);
  const Vector dgbar =
      a2_.adjoint() * x - 2.0 * std::conj(q) * (a_.adjoint() * x);
  const Vector dphi = std::conj(g) * dg + g * dgbar;  // d|g|^2 / d conj(x)
  const Vector dnu = dphi / (2.0 * nu);
  const Vector dd = (n_ * x) / (2.0 * d);
  return 2.0 * (dnu / d - (nu / d2) * dd);
}

double VarianceRatioFunctional::lipschitz_bound() const {
  if (sigma_min_ <= 0.0) return std::numeric_limits<double>::infinity();
  const double num_grad = 2.0 * (norm_a2_ + 2.0 * norm_a_ * norm_a_);
  const double num_max = norm_a2_ + norm_a_ * norm_a_;
  return num_grad / sigma_min_ +
         num_max * norm_a_ / (sigma_min_ * sigma_min_);
}

std::vector<Vector> VarianceRatioFunctional::suggested_starts() const {
  std::vector<Vector> starts;
  Eigen::ComplexEigenSolver<Matrix> eig(a_);
  if (eig.info() == Eigen::Success) {
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      Vector v = eig.eigenvectors().col(i);
      const double n = v.norm();
      if (n > 0) starts.push_back(v / n);
    }
  }
  append_starts(starts, hermitian_eigvec_starts(n_));
  return starts;
}

KianDeficiencyFunctional::KianDeficiencyFunctional(std::vector<Matrix> as,
                                                   std::vector<double> weights,
                                                   double r)
    : r_(r), weights_(std::move(weights)) {
  if (as.empty() || as.size() != weights_.size()) {
    throw WeightError("need one weight per operand");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw WeightError("weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw WeightError("weights must sum to 1");
  }
  if (!(r_ >= 2.0)) throw BadExponentError("kian deficiency requires r >= 2");

  dim_ = static_cast<int>(as[0].rows());
  w_sum_ = Matrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].rows() != dim_ || as[i].cols() != dim_) {
      throw DimensionMismatchError("operands must share a dimension");
    }
    HermitianEig eig = hermitian_eig(as[i]);
    const double scale =
        std::max(std::abs(eig.eigenvalues(0)),
                 std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
    if (eig.eigenvalues(0) < -tol::psd * std::max(scale, 1e-300)) {
      throw NotPsdError("kian operands must be PSD");
    }
    eigenvalues_.push_back(eig.eigenvalues.cwiseMax(0.0));
    eigenvectors_.push_back(eig.eigenvectors);
    operand_norms_.push_back(eigenvalues_.back().maxCoeff());
    w_sum_ += weights_[i] * as[i];
  }
  norm_w_ = lambda_max_hermitian(w_sum_);
}

double KianDeficiencyFunctional::value(const Vector& x) const {
  const double m = quad_form(w_sum_, x);
  double total = 0.0;
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    const Vector coords = eigenvectors_[i].adjoint() * x;
    for (Eigen::Index k = 0; k < coords.size(); ++k) {
      total += weights_[i] * std::pow(std::abs(eigenvalues_[i](k) - m), r_) *
               std::norm(coords(k));
    }
  }
  return total;
}

Vector KianDeficiencyFunctional::euclidean_gradient(const Vector& x) const {
  const double m = quad_form(w_sum_, x);
  Vector direct = Vector::Zero(dim_);
  double kappa = 0.0;
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    const Vector coords = eigenvectors_[i].adjoint() * x;
    Vector scaled(coords.size());
    for (Eigen::Index k = 0; k < coords.size(); ++k) {
      const double t = eigenvalues_[i](k) - m;
      const double at = std::abs(t);
      scaled(k) = std::pow(at, r_) * coords(k);
      const double sign = (t > 0) - (t < 0);
      kappa += weights_[i] * r_ *
               (at > 0 ? std::pow(at, r_ - 1.0) : 0.0) * sign *
               std::norm(coords(k));
    }
    direct += weights_[i] * (eigenvectors_[i] * scaled);
  }
  return 2.0 * direct - 2.0 * kappa * (w_sum_ * x);
}

double KianDeficiencyFunctional::lipschitz_bound() const {
  double term1 = 0.0, term2 = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double reach = std::max(operand_norms_[i], norm_w_);
    term1 += weights_[i] * std::pow(reach, r_);
    term2 += weights_[i] * r_ * std::pow(reach, r_ - 1.0);
  }
  return 2.0 * term1 + 2.0 * norm_w_ * term2;
}

std::vector<Vector> KianDeficiencyFunctional::suggested_starts() const {
  std::vector<Vector> starts;
  for (const Matrix& v : eigenvectors_) {
    for (Eigen::Index i = 0; i < v.cols(); ++i) starts.push_back(v.col(i));
  }
  append_starts(starts, hermitian_eigvec_starts(w_sum_));
  return starts;
}

// ---------------------------------------------------------------------------
// Projected gradient descent

SphereOptResult projected_gradient_min(const SphereFunctional& f,
                                       const std::vector<Vector>& starts,
                                       const OptimizerOptions& opts) {
  if (starts.empty()) {
    throw OperandError("projected_gradient_min needs at least one start");
  }
  const double lip = f.lipschitz_bound();
  const double gtol = opts.grad_tol > 0.0
                          ? opts.grad_tol
                          : 1e-9 * std::max(1.0, std::isfinite(lip) ? lip : 1.0);

  SphereOptResult best;
  bool have_best = false;
  for (const Vector& start : starts) {
    Vector x = start.normalized();
    double fx = f.value(x);
    double gn = 0.0;
    double step = opts.initial_step;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
      const Vector g = f.euclidean_gradient(x);
      const Vector rg = g - (x.adjoint() * g)(0, 0).real() * x;
      gn = rg.norm();
      if (gn <= gtol) break;
      bool accepted = false;
      double t = step;
      for (int bt = 0; bt < 60; ++bt) {
        const Vector xn = (x - t * rg).normalized();
        const double fn = f.value(xn);
        if (fn <= fx - opts.armijo_c * t * gn * gn) {
          x = xn;
          fx = fn;
          step = 2.0 * t;
          accepted = true;
          break;
        }
        t *= opts.backtrack;
      }
      if (!accepted) break;  // numeric floor reached
    }
    {
      const Vector g = f.euclidean_gradient(x);
      const Vector rg = g - (x.adjoint() * g)(0, 0).real() * x;
      gn = rg.norm();
    }
    if (!have_best || fx < best.value) {
      best.minimizer = x;
      best.value = fx;
      best.gradient_norm = gn;
      have_best = true;
    }
  }
  best.starts_used = static_cast<int>(starts.size());
  return best;
}

// ---------------------------------------------------------------------------
// Grid oracle: branch-and-bound over a phase-fixed chart

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Chart with the global phase fixed on the first coordinate:
//  dim 2: x = (cos a, sin a e^{ib})
//  dim 3: x = (cos a, sin a cos g e^{ip}, sin a sin g e^{iq})
struct ChartCell {
  double lo[4];
  double hi[4];
  double fc = 0.0;      // f at center
  double radius = 0.0;  // bound on on-sphere distance center -> cell
};

struct Chart {
  int nparams;  // 2 or 4

  Vector point(const double* p) const {
    if (nparams == 2) {
      Vector x(2);
      x(0) = Complex(std::cos(p[0]), 0.0);
      x(1) = std::polar(std::sin(p[0]), p[1]);
      return x;
    }
    Vector x(3);
    const double sa = std::sin(p[0]);
    x(0) = Complex(std::cos(p[0]), 0.0);
    x(1) = std::polar(sa * std::cos(p[1]), p[2]);
    x(2) = std::polar(sa * std::sin(p[1]), p[3]);
    return x;
  }

  // Per-parameter speed bounds over the cell; the cell radius is the
  // half-width dot these (a path bound on arc length).
  void speeds(const ChartCell& c, double* s) const {
    const double sa = std::sin(std::min(kHalfPi, c.hi[0]));
    if (nparams == 2) {
      s[0] = 1.0;
      s[1] = sa;
      return;
    }
    s[0] = 1.0;
    s[1] = sa;
    s[2] = sa * std::cos(std::max(0.0, c.lo[1]));
    s[3] = sa * std::sin(std::min(kHalfPi, c.hi[1]));
  }

  double cell_radius(const ChartCell& c) const {
    double s[4];
    speeds(c, s);
    double r = 0.0;
    for (int i = 0; i < nparams; ++i) r += 0.5 * (c.hi[i] - c.lo[i]) * s[i];
    return r;
  }

  int split_axis(const ChartCell& c) const {
    double s[4];
    speeds(c, s);
    int axis = 0;
    double bestw = -1.0;
    for (int i = 0; i < nparams; ++i) {
      const double w = 0.5 * (c.hi[i] - c.lo[i]) * s[i];
      if (w > bestw) {
        bestw = w;
        axis = i;
      }
    }
    return axis;
  }
};

}  // namespace

OracleRun run_sphere_oracle(const SphereFunctional& f, double resolution,
                            std::uint64_t eval_budget) {
  const int dim = f.dim();
  if (dim > 3) {
    throw DimensionTooLargeError("sphere oracle supports dim <= 3 only");
  }
  if (!(resolution > 0.0)) {
    throw OperandError("oracle resolution must be positive");
  }
  OracleRun run;
  run.lipschitz = f.lipschitz_bound();
  run.resolution = resolution;
  if (!std::isfinite(run.lipschitz)) {
    throw DegenerateInputError(
        "functional has no finite Lipschitz bound on the sphere");
  }
  if (dim == 1) {
    Vector e = Vector::Zero(1);
    e(0) = 1.0;
    run.value = f.value(e);
    run.lower_bound = run.value;
    run.evals = 1;
    run.completed = true;
    return run;
  }

  const Chart chart{dim == 2 ? 2 : 4};
  const double L = run.lipschitz;

  std::uint64_t evals = 0;
  double best = std::numeric_limits<double>::infinity();
  const auto eval_center = [&](ChartCell& c) {
    double p[4];
    for (int i = 0; i < chart.nparams; ++i) p[i] = 0.5 * (c.lo[i] + c.hi[i]);
    c.fc = f.value(chart.point(p));
    c.radius = chart.cell_radius(c);
    ++evals;
    best = std::min(best, c.fc);
  };

  // Initial grid.
  std::vector<ChartCell> active;
  if (chart.nparams == 2) {
    constexpr int na = 8, nb = 32;
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j) {
        ChartCell c{};
        c.lo[0] = kHalfPi * i / na;
        c.hi[0] = kHalfPi * (i + 1) / na;
        c.lo[1] = kTwoPi * j / nb;
        c.hi[1] = kTwoPi * (j + 1) / nb;
        eval_center(c);
        active.push_back(c);
      }
    }
  } else {
    constexpr int na = 4, ng = 4, np = 8;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < ng; ++j)
        for (int k = 0; k < np; ++k)
          for (int l = 0; l < np; ++l) {
            ChartCell c{};
            c.lo[0] = kHalfPi * i / na;
            c.hi[0] = kHalfPi * (i + 1) / na;
            c.lo[1] = kHalfPi * j / ng;
            c.hi[1] = kHalfPi * (j + 1) / ng;
            c.lo[2] = kTwoPi * k / np;
            c.hi[2] = kTwoPi * (k + 1) / np;
            c.lo[3] = kTwoPi * l / np;
            c.hi[3] = kTwoPi * (l + 1) / np;
            eval_center(c);
            active.push_back(c);
          }
  }

  // Refine: prune cells whose Lipschitz lower bound cannot undercut
  // best - L*resolution, finish cells at radius <= resolution. Every point
  // then satisfies f >= best - L*resolution, matching a uniform net.
  bool out_of_budget = false;
  std::vector<ChartCell> next;
  while (!active.empty()) {
    next.clear();
    for (const ChartCell& c : active) {
      if (c.fc - L * c.radius >= best - L * resolution) continue;
      if (c.radius <= resolution) continue;
      if (evals >= eval_budget) {
        out_of_budget = true;
        next.push_back(c);
        continue;
      }
      const int axis = chart.split_axis(c);
      const double mid = 0.5 * (c.lo[axis] + c.hi[axis]);
      ChartCell l = c, r = c;
      l.hi[axis] = mid;
      r.lo[axis] = mid;
      eval_center(l);
      eval_center(r);
      next.push_back(l);
      next.push_back(r);
    }
    active.swap(next);
    if (out_of_budget) break;
  }

  run.value = best;
  run.evals = evals;
  if (out_of_budget) {
    double lower = best - L * resolution;
    for (const ChartCell& c : active) {
      lower = std::min(lower, c.fc - L * c.radius);
    }
    run.lower_bound = lower;
    run.resolution = (best - lower) / L;
    run.completed = false;
  } else {
    run.lower_bound = best - L * resolution;
    run.completed = true;
  }
  return run;
}

double sphere_grid_oracle(const SphereFunctional& f, int dim,
                          double resolution) {
  if (dim != f.dim()) {
    throw DimensionMismatchError("oracle dim does not match the functional");
  }
  if (dim > 3) {
    throw DimensionTooLargeError("sphere oracle supports dim <= 3 only");
  }
  return run_sphere_oracle(f, resolution,
                           std::numeric_limits<std::uint64_t>::max())
      .value;
}

// ---------------------------------------------------------------------------
// Wrappers

namespace {

std::vector<Vector> assemble_starts(const SphereFunctional& f,
                                    const OptimizerOptions& opts) {
  std::vector<Vector> starts = f.suggested_starts();
  const int want = std::max<int>(opts.num_starts, 1);
  std::uint64_t i = 0;
  while (static_cast<int>(starts.size()) < want) {
    starts.push_back(generate_unit_vector(
        f.dim(), CounterRng::derive(opts.seed, 0x53545254ull, i++)));
  }
  return starts;
}

void attach_oracle(SphereOptResult& result, const SphereFunctional& f,
                   const OptimizerOptions& opts) {
  if (!opts.run_oracle || f.dim() > 3) {
    result.certified = false;
    return;
  }
  const double res = opts.oracle_resolution > 0.0
                         ? opts.oracle_resolution
                         : (f.dim() <= 2 ? 1e-3 : 2e-2);
  OracleRun run = run_sphere_oracle(f, res, opts.oracle_budget);
  result.oracle_value = run.value;
  result.oracle_lower = run.lower_bound;
  result.oracle_lipschitz = run.lipschitz;
  result.oracle_resolution = run.resolution;
  result.certified =
      result.value <=
      run.value + opts.certify_tol * std::max(1.0, std::abs(run.value));
}

SphereOptResult minimize_with_oracle(const SphereFunctional& f,
                                     const OptimizerOptions& opts) {
  SphereOptResult result =
      projected_gradient_min(f, assemble_starts(f, opts), opts);
  attach_oracle(result, f, opts);
  return result;
}

}  // namespace

SphereOptResult xi_pencil(const Matrix& a) {
  if (spectral_norm(a) == 0.0) {
    throw DegenerateInputError("xi_pencil is undefined for the zero matrix");
  }
  const Matrix abs_a = abs_value(a);
  const Matrix abs_astar = abs_value(a.adjoint());
  const Matrix p = abs_a - abs_astar;
  const Matrix q = abs_a + abs_astar;

  HermitianEig eq = hermitian_eig(q);
  const double qmax = eq.eigenvalues(eq.eigenvalues.size() - 1);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eq.eigenvalues.size(); ++i) {
    if (eq.eigenvalues(i) > tol::kernel * qmax) kept.push_back(i);
  }
  if (kept.empty()) {
    throw DegenerateInputError("pencil denominator vanishes identically");
  }

  Matrix basis(q.rows(), static_cast<Eigen::Index>(kept.size()));
  RealVector dinv_sqrt(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    basis.col(static_cast<Eigen::Index>(j)) = eq.eigenvectors.col(kept[j]);
    dinv_sqrt(static_cast<Eigen::Index>(j)) =
        1.0 / std::sqrt(eq.eigenvalues(kept[j]));
  }
  const Matrix projected = basis.adjoint() * p * basis;
  const Matrix whitened = dinv_sqrt.asDiagonal() * projected *
                          dinv_sqrt.asDiagonal();
  HermitianEig ew = hermitian_eig(0.5 * (whitened + whitened.adjoint().eval()));

  SphereOptResult result;
  result.value = std::clamp(ew.eigenvalues(0), -1.0, 1.0);
  const Vector back = basis * (dinv_sqrt.asDiagonal() * ew.eigenvectors.col(0));
  result.minimizer = back.normalized();
  PencilRatioFunctional ratio(p, q);
  const Vector g = ratio.euclidean_gradient(result.minimizer);
  result.gradient_norm =
      (g - (result.minimizer.adjoint() * g)(0, 0).real() * result.minimizer)
          .norm();
  result.starts_used = 0;
  result.certified = true;  // exact pencil solve
  return result;
}

SphereOptResult inf_xi_quadratic_deviation(const Matrix& a,
                                           const OptimizerOptions& opts) {
  QuadraticDeviationFunctional f(a);
  return minimize_with_oracle(f, opts);
}

SphereOptResult inf_xi_variance_ratio(const Matrix& a,
                                      const OptimizerOptions& opts) {
  const double nrm = spectral_norm(a);
  if (nrm == 0.0) {
    throw NotInvertibleError("zero matrix is not invertible");
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  const double sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  if (sigma_min < tol::invertible * nrm) {
    throw NotInvertibleError("smallest singular value below the gate: " +
                             std::to_string(sigma_min));
  }
  VarianceRatioFunctional f(a);
  return minimize_with_oracle(f, opts);
}

SphereOptResult kian_deficiency(const std::vector<Matrix>& as,
                                const std::vector<double>& weights, double r,
                                const OptimizerOptions& opts) {
  KianDeficiencyFunctional f(as, weights, r);
  return minimize_with_oracle(f, opts);
}

Matrix quadratic_deviation_operator(const Matrix& a, const Vector& x) {
  const Matrix abs_a = abs_value(a);
  const Matrix abs_astar = abs_value(a.adjoint());
  const Vector xn = x.normalized();
  const double c = 0.5 * quad_form(abs_a + abs_astar, xn);
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  const Matrix d1 = abs_a - c * id;
  const Matrix d2 = abs_astar - c * id;
  return d1 * d1 + d2 * d2;
}

double certified_nonneg_lower(const SphereOptResult& result) {
  if (!result.oracle_lower.has_value()) return 0.0;
  return std::max(0.0, std::min(result.value, *result.oracle_lower));
}

}  // namespace radlab
