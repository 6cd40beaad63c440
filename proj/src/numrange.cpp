#include "radlab/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "radlab/linalg.hpp"

namespace radlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

// Golden-section maximization on [lo, hi]; assumes a peak in the bracket.
template <typename F>
std::pair<double, double> golden_max(const F& f, double lo, double hi,
                                     double width_tol, int max_iters = 90) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iters && (b - a) > width_tol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (f1 >= f2 && f1 >= fm) return {x1, f1};
  if (f2 >= f1 && f2 >= fm) return {x2, f2};
  return {xm, fm};
}

struct RotatedParts {
  Matrix h_cos;  // (A + A*)/2
  Matrix h_sin;  // i(A - A*)/2
  Matrix at_angle(double theta) const {
    return std::cos(theta) * h_cos + std::sin(theta) * h_sin;
  }
};

RotatedParts split_rotated(const Matrix& a) {
  const Matrix adj = a.adjoint();
  return {0.5 * (a + adj), Complex(0, 0.5) * (a - adj)};
}

}  // namespace

Matrix rotated_real_part(const Matrix& a, double theta) {
  const Matrix rotated = std::polar(1.0, theta) * a;
  return 0.5 * (rotated + rotated.adjoint().eval());
}

RadiusResult numerical_radius(const Matrix& a, double tol) {
  if (!(tol > 0.0)) throw OperandError("numerical_radius requires tol > 0");
  const double nrm = spectral_norm(a);
  if (nrm == 0.0) {
    return RadiusResult{0.0, 0.0, Vector{}, 0.0};
  }

  // Grid size from the support-function certificate: every z in W(A) obeys
  // |z| <= max_k g(theta_k) / cos(pi/N), so N must satisfy
  // g_max (1/cos(pi/N) - 1) <= tol. g_max <= ||A|| sizes it a priori.
  const double ratio = nrm / (nrm + tol);
  std::size_t grid = 1024;
  if (ratio > std::cos(std::numbers::pi / 1024.0)) {
    const double needed = std::numbers::pi / std::acos(ratio);
    if (needed > double(1 << 24)) {
      throw ConvergenceFailure("radius tolerance too tight to certify");
    }
    grid = static_cast<std::size_t>(needed) + 1;
  }

  const RotatedParts parts = split_rotated(a);
  const auto g = [&](double theta) {
    return lambda_max_hermitian(parts.at_angle(theta));
  };

  std::vector<double> values(grid);
  const double step = kTwoPi / static_cast<double>(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    values[k] = g(static_cast<double>(k) * step);
  }

  // Cyclic local maxima of the coarse sweep, strongest first.
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < grid; ++k) {
    const double prev = values[(k + grid - 1) % grid];
    const double next = values[(k + 1) % grid];
    if (values[k] >= prev && values[k] >= next) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
  if (peaks.size() > 5) peaks.resize(5);

  const double coarse_max = *std::max_element(values.begin(), values.end());
  double omega = coarse_max;
  double theta_star =
      static_cast<double>(std::max_element(values.begin(), values.end()) -
                          values.begin()) *
      step;
  for (std::size_t k : peaks) {
    const double center = static_cast<double>(k) * step;
    auto [t, v] = golden_max(g, center - step, center + step, 1e-12);
    if (v > omega) {
      omega = v;
      theta_star = t;
    }
  }

  const double upper = coarse_max / std::cos(std::numbers::pi /
                                             static_cast<double>(grid));
  RadiusResult result;
  result.omega = omega;
  result.theta_star = wrap_angle(theta_star);
  result.certified_error = std::max(0.0, upper - omega);

  HermitianEig eig = hermitian_eig(parts.at_angle(result.theta_star));
  result.witness = eig.eigenvectors.col(eig.eigenvalues.size() - 1);
  return result;
}

std::vector<RangeBoundarySample> numerical_range_boundary(const Matrix& a,
                                                          int samples) {
  if (samples < 3) {
    throw OperandError("numerical_range_boundary requires samples >= 3");
  }
  const RotatedParts parts = split_rotated(a);
  std::vector<RangeBoundarySample> out;
  out.reserve(samples);
  for (int j = 0; j < samples; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) /
                         static_cast<double>(samples);
    HermitianEig eig = hermitian_eig(parts.at_angle(theta));
    const Eigen::Index top = eig.eigenvalues.size() - 1;
    const Vector x = eig.eigenvectors.col(top);
    RangeBoundarySample sample;
    sample.theta = theta;
    sample.lambda_max = eig.eigenvalues(top);
    sample.boundary_point = (x.adjoint() * a * x)(0, 0);
    out.push_back(sample);
  }
  return out;
}

double omega_2x2_oracle(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw DimensionMismatchError("omega_2x2_oracle requires a 2x2 matrix");
  }
  // Eigenvalues in closed form.
  const Complex tr = a(0, 0) + a(1, 1);
  const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);

  const double frob2 = a.squaredNorm();
  const double minor2 =
      std::max(0.0, 0.25 * (frob2 - std::norm(l1) - std::norm(l2)));
  const double focal = 0.25 * std::norm(l1 - l2);
  const double semi_minor = std::sqrt(minor2);
  const double semi_major = std::sqrt(minor2 + focal);

  const Complex center = 0.5 * (l1 + l2);
  const Complex delta = l2 - l1;
  const Complex axis =
      (std::abs(delta) > 0.0) ? delta / std::abs(delta) : Complex(1.0, 0.0);

  const auto radius2 = [&](double t) {
    const Complex z =
        center + axis * Complex(semi_major * std::cos(t),
                                semi_minor * std::sin(t));
    return std::norm(z);
  };

  // |z(t)|^2 is a low-order trig polynomial; a dense scan plus golden
  // refinement of every cyclic local maximum nails the global one.
  constexpr int kScan = 720;
  std::vector<double> vals(kScan);
  for (int k = 0; k < kScan; ++k) {
    vals[k] = radius2(kTwoPi * k / kScan);
  }
  double best = 0.0;
  for (int k = 0; k < kScan; ++k) {
    const double prev = vals[(k + kScan - 1) % kScan];
    const double next = vals[(k + 1) % kScan];
    if (vals[k] >= prev && vals[k] >= next) {
      const double center_t = kTwoPi * k / kScan;
      const double h = kTwoPi / kScan;
      auto [t, v] = golden_max(radius2, center_t - h, center_t + h, 1e-13);
      best = std::max(best, v);
    }
    best = std::max(best, vals[k]);
  }
  return std::sqrt(best);
}

}  // namespace radlab
