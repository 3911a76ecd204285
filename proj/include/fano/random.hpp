#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace fano {

/// mt19937_64 with range mappings done by hand, so draws are identical
/// across standard libraries (the std distributions are not specified
/// bit-for-bit).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }
  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Standard normal via Box-Muller.
  double normal() {
    double u = uniform01(), v = uniform01();
    if (u < 1e-300) u = 1e-300;
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }

 private:
  std::mt19937_64 engine_;
};

/// Default seed, overridden by the FANO_SEED environment variable.
std::uint64_t default_seed();

}  // namespace fano
