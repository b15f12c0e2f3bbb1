#pragma once

#include <cstdint>
#include <random>

#include "fhp/common.hpp"

namespace fhp {

/// SplitMix64 finalizer; used to derive independent sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic seed for sub-stream `stream` of a master seed. Workers that
/// consume disjoint streams produce the same values regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream));
}

/// Seeded random source. All distributions are implemented on top of the
/// standardized mt19937_64 bit stream, so sequences are reproducible across
/// standard libraries (std::normal_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t master, std::uint64_t stream) {
    return Rng(derive_seed(master, stream));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0,1); never returns an exact endpoint.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by rejection (unbiased).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  /// Standard normal via Box-Muller (one value per call).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  Vec gaussian_vector(std::size_t d) {
    Vec v(d);
    for (double& x : v) x = normal();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform point on the unit sphere S^(d-1).
inline Vec sample_unit_vector(Rng& rng, std::size_t d) {
  if (d < 1) throw input_error("sample_unit_vector: d must be >= 1");
  for (;;) {
    Vec v = rng.gaussian_vector(d);
    const double nrm = norm(v);
    if (nrm > 1e-30) {
      scale_in_place(v, 1.0 / nrm);
      return v;
    }
  }
}

}  // namespace fhp
