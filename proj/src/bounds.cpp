#include "radlab/bounds.hpp"

#include <cmath>
#include <cstring>
#include <limits>

#include <Eigen/SVD>

namespace radlab {

namespace {

const std::vector<BoundInfo> kCatalog = {
    {BoundId::eq7_lower, "eq7_lower", 1.0, false, false},
    {BoundId::eq7_upper, "eq7_upper", 1.0, false, false},
    {BoundId::eq5_kittaneh, "eq5_kittaneh", 1.0, false, false},
    {BoundId::eq3_lower, "eq3_lower", 2.0, false, false},
    {BoundId::eq3_upper, "eq3_upper", 2.0, false, false},
    {BoundId::dragomir, "dragomir", 2.0, false, false},
    {BoundId::half_abs_sum, "half_abs_sum", 1.0, false, false},
    {BoundId::thm24, "thm24", 1.0, false, true},
    {BoundId::cor_power, "cor_power", 1.0, false, true},
    {BoundId::cor_c1, "cor_c1", 1.0, false, true},
    {BoundId::cor_c1_sq, "cor_c1_sq", 1.0, false, true},
    {BoundId::thm29, "thm29", 2.0, false, false},
    {BoundId::thm31_sq, "thm31_sq", 1.0, false, false},
    {BoundId::thm31_lin, "thm31_lin", 1.0, false, false},
    {BoundId::thm35, "thm35", 2.0, false, false},
    {BoundId::lem_log, "lem_log", 0.0, true, false},
    {BoundId::zou, "zou", 0.0, true, false},
    {BoundId::mixed_schwarz, "mixed_schwarz", 0.0, true, false},
    {BoundId::norm_sum, "norm_sum", 0.0, true, false},
    {BoundId::norm_power, "norm_power", 0.0, true, true},
    {BoundId::vec_cs, "vec_cs", 0.0, true, false},
    {BoundId::gram_lemma, "gram_lemma", 0.0, true, false},
    {BoundId::kian_lemma, "kian_lemma", 0.0, true, true},
};

std::string render_id(BoundId id, const BoundParams& params) {
  const BoundInfo& info = bound_info(id);
  if (!info.parametrized) return info.name;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s(%g)", info.name, params.r);
  return buf;
}

double quad_form(const Matrix& h, const Vector& x) {
  return (x.adjoint() * h * x)(0, 0).real();
}

}  // namespace

const std::vector<BoundInfo>& bound_catalog() { return kCatalog; }

const BoundInfo& bound_info(BoundId id) {
  for (const BoundInfo& info : kCatalog) {
    if (info.id == id) return info;
  }
  throw ConfigError("unknown bound id");
}

std::optional<BoundId> bound_id_from_name(std::string_view name) {
  for (const BoundInfo& info : kCatalog) {
    if (name == info.name) return info.id;
  }
  return std::nullopt;
}

double slack_threshold(double degree, double norm_scale,
                       const EvalOptions& opts) {
  return opts.slack_abs +
         opts.slack_rel * std::pow(std::max(1.0, norm_scale), degree);
}

std::string matrix_digest(const Matrix& a) {
  std::uint64_t h = 1469598103934665603ull;
  const auto feed = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const std::int64_t dim = a.rows();
  feed(&dim, sizeof(dim));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double re = a(i, j).real();
      const double im = a(i, j).imag();
      feed(&re, sizeof(re));
      feed(&im, sizeof(im));
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json BoundReport::to_json() const {
  return nlohmann::json{{"id", id},
                        {"lhs", lhs},
                        {"rhs", rhs},
                        {"slack", slack},
                        {"slack_safe", slack_safe},
                        {"degree", degree},
                        {"threshold", threshold},
                        {"applicable", applicable},
                        {"reason", reason},
                        {"witness", witness},
                        {"inputs_digest", inputs_digest}};
}

// ---------------------------------------------------------------------------

struct BoundContext::Impl {
  Matrix a;
  EvalOptions opts;
  int dim;
  double nrm;
  std::string digest;

  std::optional<RadiusResult> radius;
  std::optional<RadiusResult> radius_sq;  // of A^2, for dragomir
  std::optional<Matrix> abs_a, abs_astar;
  std::optional<double> m_norm;   // ||A*A + AA*||
  std::optional<double> s_norm;   // || |A| + |A*| ||
  std::optional<double> a2_norm;  // ||A^2||
  std::optional<double> sigma_min;
  std::optional<bool> hyponormal;
  std::optional<double> xi;   // pencil value
  std::optional<double> t31;  // ||I - A/||A|| ||
  std::optional<SphereOptResult> inf29;
  std::optional<SphereOptResult> inf35;

  Impl(Matrix m, EvalOptions o)
      : a(std::move(m)), opts(std::move(o)) {
    validate_matrix(a);
    dim = static_cast<int>(a.rows());
    nrm = spectral_norm(a);
    digest = matrix_digest(a);
  }

  double radius_tol() const {
    return opts.radius_tol_rel * std::max(nrm, 1e-12);
  }

  const RadiusResult& get_radius() {
    if (!radius) {
      radius = nrm == 0.0 ? RadiusResult{}
                          : numerical_radius(a, radius_tol());
    }
    return *radius;
  }

  const RadiusResult& get_radius_sq() {
    if (!radius_sq) {
      const Matrix a2 = a * a;
      const double n2 = spectral_norm(a2);
      radius_sq = n2 == 0.0
                      ? RadiusResult{}
                      : numerical_radius(a2, opts.radius_tol_rel *
                                                 std::max(n2, 1e-12));
    }
    return *radius_sq;
  }

  const Matrix& get_abs_a() {
    if (!abs_a) abs_a = abs_value(a);
    return *abs_a;
  }

  const Matrix& get_abs_astar() {
    if (!abs_astar) abs_astar = abs_value(a.adjoint());
    return *abs_astar;
  }

  double get_m_norm() {
    if (!m_norm) {
      m_norm = lambda_max_hermitian(a.adjoint() * a + a * a.adjoint());
    }
    return *m_norm;
  }

  double get_s_norm() {
    if (!s_norm) s_norm = lambda_max_hermitian(get_abs_a() + get_abs_astar());
    return *s_norm;
  }

  double get_a2_norm() {
    if (!a2_norm) a2_norm = spectral_norm(a * a);
    return *a2_norm;
  }

  double get_sigma_min() {
    if (!sigma_min) {
      Eigen::JacobiSVD<Matrix> svd(a);
      sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
    }
    return *sigma_min;
  }

  bool get_hyponormal() {
    if (!hyponormal) hyponormal = is_hyponormal(a);
    return *hyponormal;
  }

  double get_xi() {
    if (!xi) xi = xi_pencil(a).value;
    return *xi;
  }

  double get_t31() {
    if (!t31) {
      const Matrix id = Matrix::Identity(dim, dim);
      t31 = spectral_norm(id - a / nrm);
    }
    return *t31;
  }

  OptimizerOptions inf_opts() const {
    OptimizerOptions o = opts.optimizer;
    o.run_oracle = opts.oracle_for_inf;
    return o;
  }

  const SphereOptResult& get_inf29() {
    if (!inf29) inf29 = inf_xi_quadratic_deviation(a, inf_opts());
    return *inf29;
  }

  const SphereOptResult& get_inf35() {
    if (!inf35) inf35 = inf_xi_variance_ratio(a, inf_opts());
    return *inf35;
  }

  BoundReport blank(BoundId id, const BoundParams& params) const {
    BoundReport report;
    report.id = render_id(id, params);
    report.degree = bound_info(id).degree;
    if (bound_info(id).parametrized) report.degree = params.r;
    report.inputs_digest = digest;
    return report;
  }

  void finish(BoundReport& report) const {
    report.slack = report.rhs - report.lhs;
    if (report.witness.contains("lhs_safe") ||
        report.witness.contains("rhs_safe")) {
      const double lhs_safe = report.witness.value("lhs_safe", report.lhs);
      const double rhs_safe = report.witness.value("rhs_safe", report.rhs);
      report.slack_safe = rhs_safe - lhs_safe;
    } else {
      report.slack_safe = report.slack;
    }
    report.threshold = slack_threshold(report.degree, nrm, opts);
  }

  nlohmann::json inf_witness(const SphereOptResult& r) const {
    nlohmann::json w{{"value", r.value},
                     {"certified", r.certified},
                     {"gradient_norm", r.gradient_norm},
                     {"certified_lower", certified_nonneg_lower(r)}};
    if (r.oracle_value) w["oracle_value"] = *r.oracle_value;
    if (r.oracle_lipschitz) w["oracle_lipschitz"] = *r.oracle_lipschitz;
    if (r.oracle_resolution) w["oracle_resolution"] = *r.oracle_resolution;
    return w;
  }
};

BoundContext::BoundContext(Matrix a, EvalOptions opts)
    : impl_(std::make_unique<Impl>(std::move(a), std::move(opts))) {}

BoundContext::~BoundContext() = default;
BoundContext::BoundContext(BoundContext&&) noexcept = default;
BoundContext& BoundContext::operator=(BoundContext&&) noexcept = default;

const Matrix& BoundContext::matrix() const { return impl_->a; }
double BoundContext::norm() { return impl_->nrm; }
const RadiusResult& BoundContext::radius() { return impl_->get_radius(); }

BoundReport BoundContext::evaluate(BoundId id, const BoundParams& params) {
  Impl& c = *impl_;
  BoundReport report = c.blank(id, params);
  const double nrm = c.nrm;

  const auto need_nonzero = [&]() {
    if (nrm == 0.0) {
      report.applicable = false;
      report.reason = "zero-matrix";
      return false;
    }
    return true;
  };
  // Hyponormality gate for the xi-dressed bounds; when it fails the formula
  // is still evaluated as a probe, just not asserted.
  const auto hyponormal_gate = [&]() {
    if (!need_nonzero()) return false;
    if (!c.get_hyponormal()) {
      report.applicable = false;
      report.reason = "not-hyponormal";
    }
    return true;
  };
  const auto omega = [&]() { return c.get_radius().omega; };
  const auto radius_witness = [&](BoundReport& r) {
    const RadiusResult& rr = c.get_radius();
    r.witness["omega"] = rr.omega;
    r.witness["theta_star"] = rr.theta_star;
    r.witness["omega_certified_error"] = rr.certified_error;
  };
  const auto xi_factor = [&](double r_exp) {
    const double xi = c.get_xi();
    return std::pow(1.0 + xi * xi / 8.0, r_exp);
  };

  switch (id) {
    case BoundId::eq7_lower:
      report.lhs = 0.5 * nrm;
      report.rhs = omega();
      radius_witness(report);
      break;
    case BoundId::eq7_upper:
      report.lhs = omega();
      report.rhs = nrm;
      radius_witness(report);
      break;
    case BoundId::eq5_kittaneh:
      report.lhs = omega();
      report.rhs = 0.5 * (nrm + std::sqrt(c.get_a2_norm()));
      radius_witness(report);
      break;
    case BoundId::eq3_lower:
      report.lhs = 0.25 * c.get_m_norm();
      report.rhs = omega() * omega();
      radius_witness(report);
      break;
    case BoundId::eq3_upper:
      report.lhs = omega() * omega();
      report.rhs = 0.5 * c.get_m_norm();
      radius_witness(report);
      break;
    case BoundId::dragomir:
      report.lhs = omega() * omega();
      report.rhs = 0.5 * (c.get_radius_sq().omega + nrm * nrm);
      radius_witness(report);
      report.witness["omega_sq"] = c.get_radius_sq().omega;
      break;
    case BoundId::half_abs_sum:
      report.lhs = omega();
      report.rhs = 0.5 * c.get_s_norm();
      radius_witness(report);
      break;
    case BoundId::thm24: {
      if (!hyponormal_gate()) break;
      const ScalarFn fn = params.f ? *params.f : ScalarFn::power(params.r);
      const double scale = 1.0 / xi_factor(1.0);
      const Matrix lhs_arg = apply_fn_psd(scale * c.get_abs_a(), fn) +
                             apply_fn_psd(scale * c.get_abs_astar(), fn);
      report.lhs = fn(omega());
      report.rhs = 0.5 * lambda_max_hermitian(lhs_arg);
      report.degree = fn.kind == ScalarFn::Kind::power ? fn.exponent : 1.0;
      report.witness["xi"] = c.get_xi();
      report.witness["f"] = fn.name();
      radius_witness(report);
      break;
    }
    case BoundId::cor_power: {
      if (!hyponormal_gate()) break;
      const double r = params.r;
      report.lhs = std::pow(omega(), r);
      report.rhs = lambda_max_hermitian(psd_power(c.get_abs_a(), r) +
                                        psd_power(c.get_abs_astar(), r)) /
                   (2.0 * xi_factor(r));
      report.witness["xi"] = c.get_xi();
      radius_witness(report);
      break;
    }
    case BoundId::cor_c1: {
      if (!hyponormal_gate()) break;
      const double r = params.r;
      const double cross = spectral_norm(psd_power(c.get_abs_a(), r / 2.0) *
                                         psd_power(c.get_abs_astar(), r / 2.0));
      report.lhs = std::pow(omega(), r);
      report.rhs = (std::pow(nrm, r) + cross) / (2.0 * xi_factor(r));
      report.witness["xi"] = c.get_xi();
      radius_witness(report);
      break;
    }
    case BoundId::cor_c1_sq: {
      if (!hyponormal_gate()) break;
      const double r = params.r;
      report.lhs = std::pow(omega(), r);
      report.rhs = (std::pow(nrm, r) + std::pow(c.get_a2_norm(), r / 2.0)) /
                   (2.0 * xi_factor(r));
      report.witness["xi"] = c.get_xi();
      radius_witness(report);
      break;
    }
    case BoundId::thm29: {
      const SphereOptResult* inf = nullptr;
      if (nrm > 0.0) inf = &c.get_inf29();
      const double inf_value = inf ? inf->value : 0.0;
      const double inf_lower = inf ? certified_nonneg_lower(*inf) : 0.0;
      report.lhs = omega() * omega();
      report.rhs = 0.5 * (c.get_m_norm() - inf_value);
      report.witness["rhs_safe"] = 0.5 * (c.get_m_norm() - inf_lower);
      if (inf) report.witness["inf"] = c.inf_witness(*inf);
      radius_witness(report);
      break;
    }
    case BoundId::thm31_sq: {
      if (!need_nonzero()) break;
      const double t = c.get_t31();
      report.lhs = nrm * (1.0 - 0.5 * t * t);
      report.rhs = omega();
      report.witness["unit_deviation"] = t;
      radius_witness(report);
      break;
    }
    case BoundId::thm31_lin: {
      if (!need_nonzero()) break;
      const double t = c.get_t31();
      report.lhs = nrm * (1.0 - 0.5 * t);
      report.rhs = omega();
      report.witness["unit_deviation"] = t;
      radius_witness(report);
      break;
    }
    case BoundId::thm35: {
      if (!need_nonzero()) break;
      if (c.get_sigma_min() < tol::invertible * nrm) {
        report.applicable = false;
        report.reason = "not-invertible";
        report.lhs = omega() * omega();
        report.rhs = nrm * nrm;
        radius_witness(report);
        break;
      }
      const SphereOptResult& inf = c.get_inf35();
      const double sub = certified_nonneg_lower(inf);
      report.lhs = inf.value * inf.value + omega() * omega();
      report.rhs = nrm * nrm;
      report.witness["lhs_safe"] = sub * sub + omega() * omega();
      report.witness["inf"] = c.inf_witness(inf);
      radius_witness(report);
      break;
    }
    default:
      throw ConfigError("bound '" + std::string(bound_info(id).name) +
                        "' is a primitive check, not a radius bound");
  }
  c.finish(report);
  return report;
}

std::vector<BoundReport> BoundContext::evaluate_catalog(
    const std::vector<double>& r_values) {
  std::vector<BoundReport> reports;
  for (const BoundInfo& info : kCatalog) {
    if (info.primitive) continue;
    if (info.parametrized) {
      for (double r : r_values) {
        BoundParams params;
        params.r = r;
        reports.push_back(evaluate(info.id, params));
      }
    } else {
      reports.push_back(evaluate(info.id));
    }
  }
  return reports;
}

std::vector<BoundReport> BoundContext::verify_chain(
    const std::vector<double>& r_values) {
  Impl& c = *impl_;
  std::vector<BoundReport> reports = evaluate_catalog(r_values);

  const auto find = [&](const std::string& id) -> const BoundReport& {
    for (const BoundReport& r : reports) {
      if (r.id == id) return r;
    }
    throw ConfigError("chain is missing entry " + id);
  };

  const auto ordering = [&](const std::string& id, double lhs, double rhs,
                            double degree, bool applicable,
                            const std::string& reason) {
    BoundReport report;
    report.id = id;
    report.lhs = lhs;
    report.rhs = rhs;
    report.degree = degree;
    report.applicable = applicable;
    report.reason = reason;
    report.inputs_digest = c.digest;
    c.finish(report);
    reports.push_back(std::move(report));
  };

  // thm29 tightens the eq3 upper bound: its rhs never exceeds eq3_upper's.
  ordering("chain_thm29_vs_eq3", find("thm29").rhs, find("eq3_upper").rhs, 2.0,
           true, "");

  // When ||A - ||A|| I|| <= ||A||, the thm31 lower bounds dominate eq7's.
  const bool improves =
      c.nrm > 0.0 && c.get_t31() <= 1.0 + 1e-12;
  const std::string why = improves ? "" : "condition-not-met";
  ordering("chain_thm31_sq_vs_eq7", find("eq7_lower").lhs,
           c.nrm > 0.0 ? find("thm31_sq").lhs : 0.0, 1.0, improves, why);
  ordering("chain_thm31_lin_vs_eq7", find("eq7_lower").lhs,
           c.nrm > 0.0 ? find("thm31_lin").lhs : 0.0, 1.0, improves, why);

  // For hyponormal A, cor_power(1) refines half_abs_sum.
  const bool hypo = c.nrm > 0.0 && c.get_hyponormal();
  ordering("chain_cor1_vs_half_abs", find("cor_power(1)").rhs,
           find("half_abs_sum").rhs, 1.0, hypo,
           hypo ? "" : "not-hyponormal");
  return reports;
}

BoundReport evaluate_radius_bound(const Matrix& a, BoundId id,
                                  const BoundParams& params,
                                  const EvalOptions& opts) {
  BoundContext context(a, opts);
  return context.evaluate(id, params);
}

// ---------------------------------------------------------------------------
// Primitive checks

namespace {

BoundReport primitive_blank(BoundId id, const BoundParams& params) {
  BoundReport report;
  report.id = render_id(id, params);
  report.degree = 0.0;
  return report;
}

void finish_primitive(BoundReport& report, const EvalOptions& opts) {
  report.slack = report.rhs - report.lhs;
  if (report.witness.contains("rhs_safe")) {
    report.slack_safe =
        report.witness["rhs_safe"].get<double>() - report.lhs;
  } else {
    report.slack_safe = report.slack;
  }
  report.threshold =
      opts.slack_abs +
      opts.slack_rel *
          std::max({1.0, std::abs(report.lhs), std::abs(report.rhs)});
}

double psd_quad_form(const Matrix& h, const Vector& x) {
  return std::max(0.0, quad_form(h, x));
}

}  // namespace

BoundReport evaluate_primitive_check(BoundId id, const PrimitiveOperands& ops,
                                     const EvalOptions& opts) {
  BoundParams params;
  params.r = ops.r;
  BoundReport report = primitive_blank(id, params);

  switch (id) {
    case BoundId::lem_log: {
      if (ops.scalars.size() != 1) {
        throw OperandError("lem_log needs one scalar alpha");
      }
      const double alpha = ops.scalars[0];
      if (!(alpha >= 1.0)) throw OperandError("lem_log requires alpha >= 1");
      report.lhs = (alpha - 1.0) / (alpha + 1.0);
      report.rhs = std::log(alpha);
      break;
    }
    case BoundId::zou: {
      if (ops.scalars.size() != 2) throw OperandError("zou needs scalars a, b");
      const double a = ops.scalars[0], b = ops.scalars[1];
      if (!(a > 0.0 && b > 0.0)) throw OperandError("zou requires a, b > 0");
      const double d = std::log(a) - std::log(b);
      report.lhs = (1.0 + d * d / 8.0) * std::sqrt(a * b);
      report.rhs = 0.5 * (a + b);
      break;
    }
    case BoundId::mixed_schwarz: {
      if (ops.matrices.size() != 1 || ops.vectors.size() != 2) {
        throw OperandError("mixed_schwarz needs one matrix and vectors x, y");
      }
      const Matrix& a = ops.matrices[0];
      const Vector& x = ops.vectors[0];
      const Vector& y = ops.vectors[1];
      report.lhs = std::abs((y.adjoint() * a * x)(0, 0));
      report.rhs = std::sqrt(psd_quad_form(abs_value(a), x)) *
                   std::sqrt(psd_quad_form(abs_value(a.adjoint()), y));
      break;
    }
    case BoundId::norm_sum: {
      if (ops.matrices.size() != 2) {
        throw OperandError("norm_sum needs PSD matrices A, B");
      }
      const Matrix& a = ops.matrices[0];
      const Matrix& b = ops.matrices[1];
      report.lhs = spectral_norm(a + b);
      report.rhs = std::max(spectral_norm(a), spectral_norm(b)) +
                   spectral_norm(sqrt_psd(a) * sqrt_psd(b));
      break;
    }
    case BoundId::norm_power: {
      if (ops.matrices.size() != 2) {
        throw OperandError("norm_power needs PSD matrices A, B");
      }
      if (!(ops.r >= 0.0 && ops.r <= 1.0)) {
        throw OperandError("norm_power requires 0 <= r <= 1");
      }
      const Matrix& a = ops.matrices[0];
      const Matrix& b = ops.matrices[1];
      report.lhs = spectral_norm(psd_power(a, ops.r) * psd_power(b, ops.r));
      report.rhs = std::pow(spectral_norm(a * b), ops.r);
      break;
    }
    case BoundId::vec_cs: {
      if (ops.vectors.size() != 2) throw OperandError("vec_cs needs x, y");
      const Vector& x = ops.vectors[0];
      const Vector& y = ops.vectors[1];
      const double nx = x.norm(), ny = y.norm();
      if (nx == 0.0 || ny == 0.0) {
        throw OperandError("vec_cs requires nonzero vectors");
      }
      report.lhs = 1.0 - 0.5 * (x / nx - y / ny).squaredNorm();
      report.rhs = std::abs((y.adjoint() * x)(0, 0)) / (nx * ny);
      break;
    }
    case BoundId::gram_lemma: {
      if (ops.vectors.size() < 3) {
        throw OperandError("gram_lemma needs x, y and at least one z");
      }
      const Vector& x = ops.vectors[0];
      const Vector& y = ops.vectors[1];
      std::vector<Vector> zs(ops.vectors.begin() + 2, ops.vectors.end());
      if (x.norm() == 0.0 || y.norm() == 0.0) {
        throw OperandError("gram_lemma requires nonzero x, y");
      }
      for (const Vector& z : zs) {
        if (z.norm() == 0.0) {
          throw OperandError("gram_lemma requires nonzero z_i");
        }
      }
      for (std::size_t i = 0; i < zs.size(); ++i) {
        for (std::size_t j = 0; j < zs.size(); ++j) {
          if (std::abs((zs[i].adjoint() * zs[j])(0, 0)) == 0.0) {
            throw OperandError("gram_lemma requires <z_j, z_i> != 0");
          }
        }
      }
      Vector u = x;
      double bessel = 0.0;
      for (std::size_t i = 0; i < zs.size(); ++i) {
        double denom = 0.0;
        for (std::size_t j = 0; j < zs.size(); ++j) {
          denom += std::abs((zs[i].adjoint() * zs[j])(0, 0));
        }
        const Complex xi = (zs[i].adjoint() * x)(0, 0);  // <x, z_i>
        u -= (xi / denom) * zs[i];
        bessel += std::norm(xi) / denom;
      }
      report.lhs = std::norm((y.adjoint() * u)(0, 0));
      report.rhs = y.squaredNorm() * (x.squaredNorm() - bessel);
      break;
    }
    case BoundId::kian_lemma: {
      if (ops.matrices.empty()) {
        throw OperandError("kian_lemma needs PSD operands");
      }
      SphereOptResult deficiency;
      try {
        OptimizerOptions inf_opts = opts.optimizer;
        inf_opts.run_oracle = opts.oracle_for_inf;
        deficiency = kian_deficiency(ops.matrices, ops.weights, ops.r,
                                     inf_opts);
      } catch (const Error& err) {
        throw OperandError(err.what());
      }
      const int dim = static_cast<int>(ops.matrices[0].rows());
      Matrix wsum = Matrix::Zero(dim, dim);
      Matrix wsum_r = Matrix::Zero(dim, dim);
      for (std::size_t i = 0; i < ops.matrices.size(); ++i) {
        wsum += ops.weights[i] * ops.matrices[i];
        wsum_r += ops.weights[i] * psd_power(ops.matrices[i], ops.r);
      }
      const double sub = certified_nonneg_lower(deficiency);
      report.lhs = std::pow(lambda_max_hermitian(wsum), ops.r);
      report.rhs = lambda_max_hermitian(wsum_r) - deficiency.value;
      report.witness["rhs_safe"] = lambda_max_hermitian(wsum_r) - sub;
      report.witness["deficiency"] = {
          {"value", deficiency.value},
          {"certified", deficiency.certified},
          {"certified_lower", sub}};
      if (deficiency.oracle_value) {
        report.witness["deficiency"]["oracle_value"] = *deficiency.oracle_value;
      }
      break;
    }
    default:
      throw ConfigError("bound '" + std::string(bound_info(id).name) +
                        "' is a radius bound, not a primitive check");
  }
  finish_primitive(report, opts);
  return report;
}

}  // namespace radlab
