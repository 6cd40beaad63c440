#include "radlab/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace radlab {

void validate_matrix(const Matrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw ParseError("matrix must be square and nonempty, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) {
    throw ParseError("matrix contains a non-finite entry");
  }
}

ScalarFn ScalarFn::power(double r) {
  if (!(r >= 1.0 && r <= 2.0)) {
    throw BadExponentError("power exponent must lie in [1,2], got " +
                           std::to_string(r));
  }
  ScalarFn f;
  f.kind = Kind::power;
  f.exponent = r;
  return f;
}

double ScalarFn::operator()(double t) const {
  switch (kind) {
    case Kind::identity:
      return t;
    case Kind::power:
      return std::pow(t, exponent);
  }
  return t;
}

std::string ScalarFn::name() const {
  if (kind == Kind::identity) return "identity";
  return "power(" + std::to_string(exponent) + ")";
}

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

namespace {

double frobenius(const Matrix& a) { return a.norm(); }

void require_nearly_hermitian(const Matrix& h) {
  const double scale = frobenius(h);
  const double defect = frobenius(h - h.adjoint().eval());
  if (defect > tol::sym * std::max(scale, 1e-300)) {
    throw NotHermitianError("input is not Hermitian: ||H - H*|| = " +
                            std::to_string(defect));
  }
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& h) {
  require_nearly_hermitian(h);
  const Matrix sym = 0.5 * (h + h.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double spectral_norm(const Matrix& a) {
  if (a.isZero(0.0)) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix hermitian_fn(const Matrix& h, const std::function<double(double)>& f) {
  HermitianEig eig = hermitian_eig(h);
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped(i) = f(eig.eigenvalues(i));
  }
  return eig.eigenvectors * mapped.asDiagonal() *
         eig.eigenvectors.adjoint();
}

namespace {

// Clamps the tolerated negative window to zero, rejects anything below it.
RealVector clamped_psd_eigenvalues(const RealVector& lambda,
                                   const char* who) {
  const double scale = std::max(std::abs(lambda(0)),
                                std::abs(lambda(lambda.size() - 1)));
  RealVector out = lambda;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < 0.0) {
      if (out(i) < -tol::psd * std::max(scale, 1e-300)) {
        throw NotPsdError(std::string(who) +
                          ": eigenvalue below the PSD window: " +
                          std::to_string(out(i)));
      }
      out(i) = 0.0;
    }
  }
  return out;
}

}  // namespace

Matrix sqrt_psd(const Matrix& h) {
  HermitianEig eig = hermitian_eig(h);
  RealVector lambda = clamped_psd_eigenvalues(eig.eigenvalues, "sqrt_psd");
  RealVector roots = lambda.cwiseSqrt();
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix abs_value(const Matrix& a) { return sqrt_psd(a.adjoint() * a); }

Matrix apply_fn_psd(const Matrix& h, const ScalarFn& f) {
  HermitianEig eig = hermitian_eig(h);
  RealVector lambda = clamped_psd_eigenvalues(eig.eigenvalues, "apply_fn_psd");
  RealVector mapped(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) mapped(i) = f(lambda(i));
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix psd_power(const Matrix& h, double r) {
  if (!(r >= 0.0)) {
    throw BadExponentError("psd_power exponent must be >= 0");
  }
  HermitianEig eig = hermitian_eig(h);
  RealVector lambda = clamped_psd_eigenvalues(eig.eigenvalues, "psd_power");
  RealVector mapped(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    mapped(i) = std::pow(lambda(i), r);
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

double hyponormality_defect(const Matrix& a) {
  const Matrix commutator = a.adjoint() * a - a * a.adjoint();
  return lambda_min_hermitian(commutator);
}

bool is_hyponormal(const Matrix& a) {
  const double norm = spectral_norm(a);
  return hyponormality_defect(a) >= -tol::hyponormal * norm * norm;
}

double lambda_max_hermitian(const Matrix& h) {
  const Eigen::Index n = h.rows();
  if (n == 1) return h(0, 0).real();
  if (n == 2) {
    // Closed form; the hot path of the radius sweep.
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double b2 = std::norm(h(0, 1));
    const double tr = a + d;
    const double gap = std::sqrt((a - d) * (a - d) + 4.0 * b2);
    return 0.5 * (tr + gap);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues()(n - 1);
}

double lambda_min_hermitian(const Matrix& h) {
  return -lambda_max_hermitian((-h).eval());
}

}  // namespace radlab
