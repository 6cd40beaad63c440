#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radlab/generators.hpp"
#include "radlab/linalg.hpp"

using namespace radlab;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix diag2(double a, double b) {
  return mat2(a, 0, 0, b);
}

double rel_err(const Matrix& got, const Matrix& want) {
  const double scale = std::max(want.norm(), 1e-300);
  return (got - want).norm() / scale;
}

}  // namespace

TEST_CASE("adjoint basics") {
  const Matrix id = Matrix::Identity(2, 2);
  CHECK(rel_err(adjoint(id), id) == 0.0);

  const Matrix a = mat2(0, 0, 3, 0);
  CHECK(rel_err(adjoint(a), mat2(0, 3, 0, 0)) == 0.0);

  const Matrix b = mat2(Complex(0, 1), 0, 0, 0);
  CHECK(rel_err(adjoint(b), mat2(Complex(0, -1), 0, 0, 0)) == 0.0);

  for (int k = 0; k < 10; ++k) {
    const Matrix g = generate({GeneratorKind::ginibre, 5, 100u + k});
    CHECK(rel_err(adjoint(adjoint(g)), g) == 0.0);
  }
}

TEST_CASE("hermitian_eig on known matrices") {
  auto eig = hermitian_eig(diag2(4, 9));
  CHECK(eig.eigenvalues(0) == doctest::Approx(4).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(9).epsilon(1e-14));

  eig = hermitian_eig(mat2(0, 1, 1, 0));
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1).epsilon(1e-14));

  // A*A for A = [[2,1],[0,4]]: lambda_max = (21 + sqrt(185)) / 2 from the
  // characteristic polynomial.
  const Matrix a = mat2(2, 1, 0, 4);
  eig = hermitian_eig(a.adjoint() * a);
  const double expected = 0.5 * (21.0 + std::sqrt(185.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  CHECK_THROWS_AS(hermitian_eig(mat2(0, 1, 0, 0)), NotHermitianError);
}

TEST_CASE("hermitian_eig invariants on random input") {
  for (int n : {2, 5, 16}) {
    for (int k = 0; k < 8; ++k) {
      const Matrix g = generate(
          {GeneratorKind::ginibre, n, 7u * static_cast<unsigned>(k) + n});
      const Matrix h = 0.5 * (g + g.adjoint().eval());
      const auto eig = hermitian_eig(h);
      const Matrix rebuilt = eig.eigenvectors *
                             eig.eigenvalues.asDiagonal() *
                             eig.eigenvectors.adjoint();
      CHECK(rel_err(rebuilt, h) <= 1e-12);
      const Matrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
      CHECK((gram - Matrix::Identity(n, n)).norm() <= 1e-12);
      for (Eigen::Index i = 1; i < eig.eigenvalues.size(); ++i) {
        CHECK(eig.eigenvalues(i - 1) <= eig.eigenvalues(i));
      }
    }
  }
}

TEST_CASE("spectral_norm") {
  const double expected = std::sqrt(0.5 * (21.0 + std::sqrt(185.0)));
  CHECK(spectral_norm(mat2(2, 1, 0, 4)) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(spectral_norm(mat2(2, 1, 0, 4)) == doctest::Approx(4.1594).epsilon(5e-4));
  CHECK(spectral_norm(Matrix::Zero(3, 3)) == 0.0);
  const Matrix u = generate({GeneratorKind::unitary, 4, 3});
  CHECK(spectral_norm(u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sqrt_psd") {
  CHECK(rel_err(sqrt_psd(diag2(4, 9)), diag2(2, 3)) <= 1e-14);
  const Matrix id = Matrix::Identity(3, 3);
  CHECK(rel_err(sqrt_psd(id), id) <= 1e-14);
  const Matrix a = mat2(0, 0, 3, 0);
  CHECK(rel_err(sqrt_psd(a.adjoint() * a), diag2(3, 0)) <= 1e-14);
  CHECK_THROWS_AS(sqrt_psd(diag2(1, -1)), NotPsdError);
}

TEST_CASE("sqrt_psd squares back on random PSD input") {
  for (int k = 0; k < 12; ++k) {
    const Matrix h = generate({GeneratorKind::psd, 6, 55u + k});
    const Matrix s = sqrt_psd(h);
    CHECK(rel_err(s * s, h) <= 1e-10);
    CHECK((s - s.adjoint().eval()).norm() <= 1e-12 * std::max(1.0, s.norm()));
  }
}

TEST_CASE("abs_value") {
  const Matrix a = mat2(0, 0, 3, 0);
  CHECK(rel_err(abs_value(a), diag2(3, 0)) <= 1e-14);
  CHECK(rel_err(abs_value(adjoint(a)), diag2(0, 3)) <= 1e-14);

  const Matrix h = generate({GeneratorKind::psd, 4, 9});
  CHECK(rel_err(abs_value(h), h) <= 1e-12);

  CHECK(rel_err(abs_value(diag2(-2, 3)), diag2(2, 3)) <= 1e-14);
}

TEST_CASE("norm of abs_value matches spectral norm") {
  for (int k = 0; k < 10; ++k) {
    const Matrix g = generate({GeneratorKind::ginibre, 5, 900u + k});
    CHECK(spectral_norm(abs_value(g)) ==
          doctest::Approx(spectral_norm(g)).epsilon(1e-12));
  }
}

TEST_CASE("apply_fn_psd") {
  CHECK(rel_err(apply_fn_psd(diag2(4, 9), ScalarFn::power(2.0)),
                diag2(16, 81)) <= 1e-13);
  CHECK(rel_err(apply_fn_psd(diag2(4, 9), ScalarFn::power(1.5)),
                diag2(8, 27)) <= 1e-13);
  const Matrix h = generate({GeneratorKind::psd, 5, 11});
  CHECK(rel_err(apply_fn_psd(h, ScalarFn::identity()), h) <= 1e-12);
  CHECK(rel_err(apply_fn_psd(h, ScalarFn::power(1.0)),
                apply_fn_psd(h, ScalarFn::identity())) <= 1e-13);
  CHECK_THROWS_AS(ScalarFn::power(0.5), BadExponentError);
  CHECK_THROWS_AS(ScalarFn::power(2.5), BadExponentError);
  CHECK_THROWS_AS(apply_fn_psd(diag2(1, -1), ScalarFn::power(2.0)),
                  NotPsdError);
}

TEST_CASE("apply_fn_psd commutes with unitary conjugation") {
  const ScalarFn f = ScalarFn::power(1.5);
  for (int k = 0; k < 6; ++k) {
    const Matrix h = generate({GeneratorKind::psd, 4, 31u + k});
    const Matrix u = generate({GeneratorKind::unitary, 4, 77u + k});
    const Matrix lhs = apply_fn_psd(u.adjoint() * h * u, f);
    const Matrix rhs = u.adjoint() * apply_fn_psd(h, f) * u;
    CHECK(rel_err(lhs, rhs) <= 1e-11);
  }
}

TEST_CASE("hyponormality_defect") {
  const Matrix normal = generate({GeneratorKind::normal, 4, 5});
  const double nn = spectral_norm(normal);
  CHECK(std::abs(hyponormality_defect(normal)) <= 1e-10 * nn * nn);
  CHECK(is_hyponormal(normal));

  CHECK(hyponormality_defect(mat2(0, 0, 3, 0)) ==
        doctest::Approx(-9.0).epsilon(1e-13));
  CHECK_FALSE(is_hyponormal(mat2(0, 0, 3, 0)));

  CHECK(std::abs(hyponormality_defect(Matrix::Identity(3, 3))) <= 1e-14);
}

TEST_CASE("commutator trace vanishes") {
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + (k % 5);
    const Matrix a = generate({GeneratorKind::ginibre, n, 400u + k});
    const Matrix comm = a.adjoint() * a - a * a.adjoint();
    const double nrm = spectral_norm(a);
    CHECK(std::abs(comm.trace()) <= 1e-12 * nrm * nrm * n);
  }
}

TEST_CASE("psd_power handles exponents outside the operator-convex window") {
  CHECK(rel_err(psd_power(diag2(4, 9), 0.5), diag2(2, 3)) <= 1e-13);
  CHECK(rel_err(psd_power(diag2(4, 9), 3.0), diag2(64, 729)) <= 1e-13);
  CHECK_THROWS_AS(psd_power(diag2(4, 9), -1.0), BadExponentError);
}
