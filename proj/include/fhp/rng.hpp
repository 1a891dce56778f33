#pragma once

// Seedable counter-style generator with a fixed normal transform. The
// standard-library distributions are implementation-defined, which would tie
// sampled values to a particular libstdc++ version; this generator produces
// the same stream on every platform. Monte Carlo code derives one key per
// sample index, so draws do not depend on how samples are split over workers.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fhp {

class Rng {
 public:
  explicit Rng(std::uint64_t key) : state_(mix(key ^ 0x6a09e667f3bcc908ull)) {}

  // Independent key for sample `index` of a run seeded with `seed`.
  static std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(index + 0xbb67ae8584caa73bull));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform on (0, 1]; never returns 0, so log() below is safe.
  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via the Box-Muller transform. Consumes exactly two
  // uniforms per draw, keeping streams aligned across callers.
  double next_normal() {
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace fhp
