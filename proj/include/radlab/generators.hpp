#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "radlab/types.hpp"

namespace radlab {

/// Counter-based stream generator. The i-th 64-bit output is
/// mix64(key + i * GAMMA) where key = mix64(seed ^ mix64(stream)) and mix64
/// is the SplitMix64 finalizer, so any output can be produced from (seed,
/// stream, i) alone and replays are bit-identical. Gaussians use the
/// Marsaglia polar transform on top of the integer stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  /// Uniform in [0, 1), 53 random bits.
  double next_double();
  /// Standard real Gaussian N(0, 1).
  double next_gaussian();
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex next_complex_gaussian();

  /// Stable mix of (seed, a, b) into a derived stream seed.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class GeneratorKind {
  ginibre,
  normal,
  psd,
  unitary,
  upper_triangular_2x2,
  nilpotent_2x2,
  named_example,
};

std::string kind_name(GeneratorKind kind);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::ginibre;
  int dim = 2;
  std::uint64_t seed = 0;
  std::string tag;  // named_example only

  /// Accepts "kind:dim:seed" (e.g. "ginibre:4:42") and "named:TAG".
  static GeneratorSpec parse(std::string_view text);
  std::string to_string() const;
};

Matrix generate(const GeneratorSpec& spec);

/// Haar-uniform unit vector (normalized complex Gaussian).
Vector generate_unit_vector(int dim, std::uint64_t seed);

}  // namespace radlab
