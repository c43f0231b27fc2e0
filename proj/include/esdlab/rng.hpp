#pragma once

#include <cstdint>
#include <random>

namespace esdlab {

// Random stream keyed by (seed, index, stream). Each key gets an
// independently seeded engine, so draws never depend on the order in which
// indices are visited. Uniform and normal variates are derived from raw
// 64-bit words here rather than through <random> distributions, whose
// algorithms differ between standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index, std::uint32_t stream = 0);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_left();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace esdlab
