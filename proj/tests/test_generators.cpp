#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radlab/generators.hpp"
#include "radlab/linalg.hpp"

using namespace radlab;

TEST_CASE("named examples") {
  const Matrix ex2 = generate(GeneratorSpec::parse("named:ex_2_11"));
  CHECK(ex2(0, 0) == Complex(0, 0));
  CHECK(ex2(1, 0) == Complex(3, 0));
  CHECK(ex2(0, 1) == Complex(0, 0));
  CHECK(ex2(1, 1) == Complex(0, 0));

  const Matrix ex3 = generate(GeneratorSpec::parse("named:ex_3_4"));
  CHECK(ex3(0, 0) == Complex(2, 0));
  CHECK(ex3(0, 1) == Complex(1, 0));
  CHECK(ex3(1, 0) == Complex(0, 0));
  CHECK(ex3(1, 1) == Complex(4, 0));

  CHECK_THROWS_AS(generate(GeneratorSpec::parse("named:nope")), SpecError);
}

TEST_CASE("spec parsing round-trips") {
  const GeneratorSpec spec = GeneratorSpec::parse("ginibre:4:42");
  CHECK(spec.kind == GeneratorKind::ginibre);
  CHECK(spec.dim == 4);
  CHECK(spec.seed == 42);
  CHECK(spec.to_string() == "ginibre:4:42");
  CHECK(GeneratorSpec::parse("named:ex_2_11").to_string() == "named:ex_2_11");

  CHECK_THROWS_AS(GeneratorSpec::parse("bogus:2:1"), SpecError);
  CHECK_THROWS_AS(GeneratorSpec::parse("ginibre"), SpecError);
  CHECK_THROWS_AS(GeneratorSpec::parse("ginibre:0:1"), SpecError);
  CHECK_THROWS_AS(GeneratorSpec::parse("nilpotent_2x2:3:1"), SpecError);
}

TEST_CASE("replaying a spec is bit-identical") {
  for (const char* text : {"ginibre:4:42", "normal:3:7", "psd:5:1",
                           "unitary:2:9", "upper_triangular_2x2:2:3",
                           "nilpotent_2x2:2:8"}) {
    const GeneratorSpec spec = GeneratorSpec::parse(text);
    const Matrix a = generate(spec);
    const Matrix b = generate(spec);
    REQUIRE(a.rows() == b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        CHECK(a(i, j).real() == b(i, j).real());
        CHECK(a(i, j).imag() == b(i, j).imag());
      }
    }
  }
  // Different seeds give different matrices.
  const Matrix a = generate(GeneratorSpec::parse("ginibre:4:1"));
  const Matrix b = generate(GeneratorSpec::parse("ginibre:4:2"));
  CHECK((a - b).norm() > 1e-6);
}

TEST_CASE("normal kind commutes, psd kind is PSD, unitary kind is unitary") {
  for (unsigned k = 0; k < 12; ++k) {
    const int n = 2 + static_cast<int>(k % 5);
    const Matrix a = generate({GeneratorKind::normal, n, 1000 + k});
    const double nrm = spectral_norm(a);
    const Matrix comm = a.adjoint() * a - a * a.adjoint();
    CHECK(spectral_norm(comm) <= 1e-10 * nrm * nrm);

    const Matrix p = generate({GeneratorKind::psd, n, 2000 + k});
    CHECK(lambda_min_hermitian(p) >= -1e-12 * spectral_norm(p));

    const Matrix u = generate({GeneratorKind::unitary, n, 3000 + k});
    CHECK((u.adjoint() * u - Matrix::Identity(n, n)).norm() <= 1e-12);
  }
}

TEST_CASE("structured 2x2 kinds") {
  const Matrix t = generate({GeneratorKind::upper_triangular_2x2, 2, 5});
  CHECK(t(1, 0) == Complex(0, 0));
  const Matrix nil = generate({GeneratorKind::nilpotent_2x2, 2, 5});
  CHECK(nil(0, 0) == Complex(0, 0));
  CHECK(nil(0, 1) == Complex(0, 0));
  CHECK(nil(1, 1) == Complex(0, 0));
  CHECK((nil * nil).norm() == 0.0);
}

TEST_CASE("unit vectors") {
  const Vector one = generate_unit_vector(1, 3);
  CHECK(std::abs(std::abs(one(0)) - 1.0) <= 1e-14);

  for (unsigned k = 0; k < 20; ++k) {
    const Vector x = generate_unit_vector(5, k);
    CHECK(std::abs(x.norm() - 1.0) <= 1e-14);
  }

  const Vector a = generate_unit_vector(4, 77);
  const Vector b = generate_unit_vector(4, 77);
  CHECK((a - b).norm() == 0.0);
}

TEST_CASE("unit vectors are Haar-symmetric in the first coordinate") {
  // |x_1|^2 is uniform on [0,1] at dim 2, so the mean over 1e4 draws stays
  // within 3 sigma = 0.0087 of 1/2.
  double sum = 0.0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const Vector x = generate_unit_vector(2, 424200u + k);
    sum += std::norm(x(0));
  }
  CHECK(std::abs(sum / draws - 0.5) <= 0.01);
}

TEST_CASE("counter rng streams are independent of call interleaving") {
  CounterRng a(9, 1), b(9, 1);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(9, 2);
  CHECK(c.next_u64() != CounterRng(9, 3).next_u64());

  CounterRng g(123, 0);
  double mean = 0.0, var = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = g.next_gaussian();
    mean += z;
    var += z * z;
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK(std::abs(mean) <= 0.03);
  CHECK(std::abs(var - 1.0) <= 0.05);
}
