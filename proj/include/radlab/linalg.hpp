#pragma once

#include <functional>
#include <string>

#include "radlab/types.hpp"

namespace radlab {

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEig {
  RealVector eigenvalues;
  Matrix eigenvectors;  // unitary, columns are eigenvectors
};

/// Scalar functions admitted by apply_fn_psd: the power family t^r with
/// r in [1,2], plus the identity (= power(1)).
struct ScalarFn {
  enum class Kind { identity, power };

  Kind kind = Kind::identity;
  double exponent = 1.0;

  static ScalarFn identity() { return {}; }
  static ScalarFn power(double r);

  double operator()(double t) const;
  std::string name() const;
};

Matrix adjoint(const Matrix& a);

/// Requires ||H - H*|| <= tol.sym * ||H||; the input is symmetrized before
/// decomposition. Throws NotHermitianError / ConvergenceFailure.
HermitianEig hermitian_eig(const Matrix& h);

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// PSD square root. Eigenvalues in [-tol.psd*||H||, 0) are clamped to zero;
/// anything lower throws NotPsdError.
Matrix sqrt_psd(const Matrix& h);

/// |A| = (A*A)^{1/2}.
Matrix abs_value(const Matrix& a);

/// V diag(f(lambda)) V* for Hermitian PSD input (same clamping as sqrt_psd).
Matrix apply_fn_psd(const Matrix& h, const ScalarFn& f);

/// lambda_min(A*A - AA*). Nonnegative (within the gate) iff A is hyponormal,
/// which in finite dimensions forces A to be normal.
double hyponormality_defect(const Matrix& a);

bool is_hyponormal(const Matrix& a);

// Plumbing shared by the sphere functionals and the bounds catalog.

/// V diag(f(lambda)) V* for Hermitian input, no sign restriction on lambda.
Matrix hermitian_fn(const Matrix& h, const std::function<double(double)>& f);

/// H^r for Hermitian H with eigenvalues clamped to [0, inf); r >= 0.
Matrix psd_power(const Matrix& h, double r);

double lambda_max_hermitian(const Matrix& h);
double lambda_min_hermitian(const Matrix& h);

}  // namespace radlab
