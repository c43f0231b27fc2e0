#pragma once

#include "esdlab/entanglement.hpp"
#include "esdlab/qstate.hpp"

namespace esdlab {

inline constexpr double kBisectionTol = 1e-12;
// Robustness of the Bell state, the largest attainable for two qubits.
inline const double kBellRobustness = 1.0 - 1.0 / std::sqrt(3.0);

enum class RobustnessMethod { PptBisection, AnsatzPolynomial, PureClosedForm };

const char* to_string(RobustnessMethod m);

struct RobustnessResult {
  double s_crit = 1.0;
  double robustness = 0.0;  // 1 - s_crit
  RobustnessMethod method = RobustnessMethod::PptBisection;
  double residual = 0.0;  // root function at s_crit
};

// Sudden-death polynomial of ansatz(p) under local parameters (s1, s2);
// positive while the evolved state is entangled.
//   4 r^2 sin^2 2t s1^2 s2^2 - [1 + (1-2r) s1 s2]^2
//     + [r cos 2t (s1 - s2) + (1-r)(s1 + s2)]^2
double esd_polynomial(const AnsatzParams& p, double s1, double s2);

// Largest s in (0, 1) with esd_polynomial(p, s^(1+delta), s^(1-delta)) = 0.
// Throws SeparableState when concurrence_ansatz(p) <= 1e-9.
RobustnessResult s_crit_ansatz(const AnsatzParams& p, double delta);

// Root of the smallest partial-transpose eigenvalue of the evolved state on
// [1/3, 1]. The root is bracketed by a 1/256 descending scan and refined by
// bisection; the scan must find exactly one crossing, otherwise
// RootNotFound lists every bracket.
RobustnessResult s_crit_numeric(const DensityMatrix& rho, double delta);

// Pure state with concurrence c: root of
//   c^2 (4 s1^2 s2^2 - (s1 - s2)^2) = (1 - s1^2)(1 - s2^2).
RobustnessResult robustness_pure(double c, double delta);

// 1 - 1/sqrt(2C + 1); the delta = 0 closed form of robustness_pure.
double robustness_pure_uniform(double c);

// 1 - sqrt((2 - c)/(2 + c)); one-sided robustness of every state in the
// c-chart with parameter c.
double robustness_one_sided_cp(double c);

struct NormalizedRobustness {
  double value = 0.0;  // clipped to [-eps, 1 + eps]
  bool out_of_range = false;  // raw value was outside [-eps, 1 + eps]
  double robustness = 0.0;
  double robustness_mres = 0.0;
  double robustness_mfes = 0.0;
};

inline constexpr double kNormalizedEps = 1e-6;

// (R - R_MFES) / (R_MRES - R_MFES); throws Degenerate when the two
// extremal values coincide.
NormalizedRobustness normalize_robustness(double robustness, double robustness_mres,
                                          double robustness_mfes);
// Same, with both extremal families evaluated at the entanglement of rho.
NormalizedRobustness normalized_robustness(const DensityMatrix& rho, double delta, Measure m);
// Same, with R and the entanglement value already known.
NormalizedRobustness normalized_robustness(double robustness, double entanglement, double delta,
                                           Measure m);

}  // namespace esdlab
