#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace radlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Shared tolerance policy. Relative unless noted otherwise.
namespace tol {
inline constexpr double sym = 1e-10;         // Hermitian-input gate
inline constexpr double psd = 1e-10;         // eigenvalue clamping window
inline constexpr double kernel = 1e-12;      // pencil kernel cutoff
inline constexpr double hyponormal = 1e-10;  // defect gate, scaled by norm^2
inline constexpr double invertible = 1e-10;  // smallest singular value gate
inline constexpr double slack_abs = 1e-10;   // absolute slack floor
inline constexpr double slack_rel = 1e-8;    // relative slack term
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};
class NotPsdError : public Error {
 public:
  using Error::Error;
};
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};
class DimensionTooLargeError : public Error {
 public:
  using Error::Error;
};
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};
class WeightError : public Error {
 public:
  using Error::Error;
};
class BadExponentError : public Error {
 public:
  using Error::Error;
};
class SpecError : public Error {
 public:
  using Error::Error;
};
class OperandError : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};

// Entry gate used by IO, CLI and bindings: square with finite entries.
void validate_matrix(const Matrix& a);

}  // namespace radlab
