#include "esdlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace esdlab {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    stream};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t index, std::uint32_t stream)
    : engine_(make_engine(seed, index, stream)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open_left() {
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double rad = std::sqrt(-2.0 * std::log(uniform_open_left()));
  const double phi = 2.0 * std::numbers::pi * uniform();
  spare_ = rad * std::sin(phi);
  has_spare_ = true;
  return rad * std::cos(phi);
}

}  // namespace esdlab
