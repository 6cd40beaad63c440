#pragma once

#include <vector>

#include "radlab/types.hpp"

namespace radlab {

struct RadiusResult {
  double omega = 0.0;
  double theta_star = 0.0;        // in [0, 2*pi)
  Vector witness;                 // empty for the zero matrix
  double certified_error = 0.0;   // true omega lies in [omega, omega + err]
};

struct RangeBoundarySample {
  double theta = 0.0;
  double lambda_max = 0.0;
  Complex boundary_point;  // <A x_theta, x_theta> for the top eigenvector
};

/// (e^{i theta} A + e^{-i theta} A*) / 2.
Matrix rotated_real_part(const Matrix& a, double theta);

/// Numerical radius by the rotated-Hermitian-part sweep: omega(A) equals
/// max_theta lambda_max(H_theta). A coarse grid locates the peaks, golden
/// section refines the top ones, and convexity of the numerical range turns
/// the grid maximum into the certificate
///   omega <= max_k g(theta_k) / cos(pi/N).
/// The grid size is chosen so that certified_error <= tol.
RadiusResult numerical_radius(const Matrix& a, double tol);

std::vector<RangeBoundarySample> numerical_range_boundary(const Matrix& a,
                                                          int samples);

/// Exact omega for 2x2 matrices from the elliptical range theorem: the
/// boundary is the ellipse with foci at the eigenvalues and minor semi-axis
/// sqrt(||A||_F^2 - |l1|^2 - |l2|^2) / 2.
double omega_2x2_oracle(const Matrix& a);

}  // namespace radlab
