#include "radlab/generators.hpp"

#include <cmath>
#include <charconv>

#include <Eigen/QR>

namespace radlab {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Stafford mix13).
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGamma))) {}

std::uint64_t CounterRng::next_u64() {
  return mix64(key_ + (counter_++) * kGamma);
}

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Marsaglia polar method.
  while (true) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }
}

Complex CounterRng::next_complex_gaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return Complex(re, im) * (1.0 / std::sqrt(2.0));
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
  return mix64(mix64(seed + kGamma) ^ mix64(a + 2 * kGamma) ^
               mix64(b + 3 * kGamma));
}

std::string kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::ginibre: return "ginibre";
    case GeneratorKind::normal: return "normal";
    case GeneratorKind::psd: return "psd";
    case GeneratorKind::unitary: return "unitary";
    case GeneratorKind::upper_triangular_2x2: return "upper_triangular_2x2";
    case GeneratorKind::nilpotent_2x2: return "nilpotent_2x2";
    case GeneratorKind::named_example: return "named";
  }
  return "?";
}

namespace {

GeneratorKind kind_from_name(std::string_view name) {
  for (GeneratorKind k :
       {GeneratorKind::ginibre, GeneratorKind::normal, GeneratorKind::psd,
        GeneratorKind::unitary, GeneratorKind::upper_triangular_2x2,
        GeneratorKind::nilpotent_2x2}) {
    if (name == kind_name(k)) return k;
  }
  if (name == "named") return GeneratorKind::named_example;
  throw SpecError("unknown generator kind '" + std::string(name) + "'");
}

std::uint64_t parse_u64(std::string_view text, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SpecError(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

Matrix ginibre_matrix(int dim, CounterRng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = rng.next_complex_gaussian();
    }
  }
  return g;
}

// Haar unitary: QR of a Ginibre sample with the R diagonal phases divided out.
Matrix haar_unitary(int dim, CounterRng& rng) {
  const Matrix g = ginibre_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  GeneratorSpec spec;
  const auto first = text.find(':');
  const std::string_view head =
      first == std::string_view::npos ? text : text.substr(0, first);
  spec.kind = kind_from_name(head);
  std::string_view rest =
      first == std::string_view::npos ? std::string_view{} : text.substr(first + 1);
  if (spec.kind == GeneratorKind::named_example) {
    if (rest.empty()) throw SpecError("named generator needs a tag");
    spec.tag = std::string(rest);
    spec.dim = 2;
    return spec;
  }
  if (rest.empty()) throw SpecError("generator spec needs 'kind:dim:seed'");
  const auto second = rest.find(':');
  if (second == std::string_view::npos) {
    throw SpecError("generator spec needs 'kind:dim:seed'");
  }
  spec.dim = static_cast<int>(parse_u64(rest.substr(0, second), "dim"));
  spec.seed = parse_u64(rest.substr(second + 1), "seed");
  if (spec.dim < 1) throw SpecError("generator dim must be >= 1");
  return spec;
}

std::string GeneratorSpec::to_string() const {
  if (kind == GeneratorKind::named_example) return "named:" + tag;
  return kind_name(kind) + ":" + std::to_string(dim) + ":" +
         std::to_string(seed);
}

Matrix generate(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::named_example) {
    if (spec.tag == "ex_2_11") {
      Matrix a = Matrix::Zero(2, 2);
      a(1, 0) = 3.0;
      return a;
    }
    if (spec.tag == "ex_3_4") {
      Matrix a(2, 2);
      a << Complex(2, 0), Complex(1, 0), Complex(0, 0), Complex(4, 0);
      return a;
    }
    throw SpecError("unknown named example '" + spec.tag + "'");
  }

  const int dim = spec.dim;
  if ((spec.kind == GeneratorKind::upper_triangular_2x2 ||
       spec.kind == GeneratorKind::nilpotent_2x2) &&
      dim != 2) {
    throw SpecError(kind_name(spec.kind) + " requires dim = 2");
  }
  CounterRng rng(spec.seed, CounterRng::derive(0x52414431ull,  // stream tag
                                               static_cast<std::uint64_t>(spec.kind),
                                               static_cast<std::uint64_t>(dim)));
  switch (spec.kind) {
    case GeneratorKind::ginibre:
      return ginibre_matrix(dim, rng);
    case GeneratorKind::normal: {
      const Matrix u = haar_unitary(dim, rng);
      Vector d(dim);
      for (int i = 0; i < dim; ++i) d(i) = rng.next_complex_gaussian();
      return u * d.asDiagonal() * u.adjoint();
    }
    case GeneratorKind::psd: {
      const Matrix g = ginibre_matrix(dim, rng);
      return g.adjoint() * g;
    }
    case GeneratorKind::unitary:
      return haar_unitary(dim, rng);
    case GeneratorKind::upper_triangular_2x2: {
      Matrix a = Matrix::Zero(2, 2);
      a(0, 0) = rng.next_complex_gaussian();
      a(0, 1) = rng.next_complex_gaussian();
      a(1, 1) = rng.next_complex_gaussian();
      return a;
    }
    case GeneratorKind::nilpotent_2x2: {
      Matrix a = Matrix::Zero(2, 2);
      a(1, 0) = rng.next_complex_gaussian();
      return a;
    }
    case GeneratorKind::named_example:
      break;  // handled above
  }
  throw SpecError("unsupported generator kind");
}

Vector generate_unit_vector(int dim, std::uint64_t seed) {
  if (dim < 1) throw SpecError("unit vector dim must be >= 1");
  CounterRng rng(seed, CounterRng::derive(0x554E4954ull,
                                          static_cast<std::uint64_t>(dim)));
  Vector x(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) x(i) = rng.next_complex_gaussian();
    const double n = x.norm();
    if (n > 1e-6) return x / n;
  }
}

}  // namespace radlab
