#include "esdlab/errors.hpp"
#include "esdlab/extremal.hpp"
#include "esdlab/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace esdlab {

NormalizedRobustness normalize_robustness(double robustness, double robustness_mres,
                                          double robustness_mfes) {
  const double span = robustness_mres - robustness_mfes;
  if (!(std::abs(span) >= 1e-12))
    throw Degenerate("normalized robustness: MRES and MFES robustness coincide");
  const double raw = (robustness - robustness_mfes) / span;
  NormalizedRobustness out;
  out.robustness = robustness;
  out.robustness_mres = robustness_mres;
  out.robustness_mfes = robustness_mfes;
  out.out_of_range = raw < -kNormalizedEps || raw > 1.0 + kNormalizedEps;
  out.value = std::clamp(raw, -kNormalizedEps, 1.0 + kNormalizedEps);
  return out;
}

NormalizedRobustness normalized_robustness(double robustness, double entanglement, double delta,
                                           Measure m) {
  const RobustnessBounds b = robustness_bounds(m, entanglement, delta);
  return normalize_robustness(robustness, b.mres, b.mfes);
}

NormalizedRobustness normalized_robustness(const DensityMatrix& rho, double delta, Measure m) {
  return normalized_robustness(s_crit_numeric(rho, delta).robustness, measure(rho, m), delta, m);
}

}  // namespace esdlab
