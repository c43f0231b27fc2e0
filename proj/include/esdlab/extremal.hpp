#pragma once

// Most robust (MRES) and most fragile (MFES) entangled states at fixed
// concurrence or negativity. Every family lives in the ansatz set
// ansatz(r, theta); closed forms cover the uniform (delta = 0) and
// one-sided (delta = 1) channels, root finding covers 0 < delta < 1.

#include "esdlab/entanglement.hpp"
#include "esdlab/qstate.hpp"
#include "esdlab/robustness.hpp"

#include <optional>
#include <vector>

namespace esdlab {

enum class Kind { MRES, MFES, QuasiMFES };

const char* to_string(Kind k);

struct ExtremalPoint {
  AnsatzParams params;
  Kind kind = Kind::MRES;
  Measure measure = Measure::Concurrence;
  double entanglement = 0.0;
  double robustness = 0.0;
  double delta = 0.0;
};

// --- concurrence ---------------------------------------------------------

// Pure state ansatz(1, asin(C)/2).
ExtremalPoint mres_concurrence(double c, double delta);

// One-sided MFES on 2 r cos^2(theta) = 1, theta in [0, pi/4].
ExtremalPoint mfes_concurrence_one_sided(double theta);

// Uniform-channel MFES: ansatz(C, pi/4) for C >= 1/2, otherwise
// ansatz(1/2, asin(2C)/2).
ExtremalPoint mfes_concurrence_uniform(double c);

// s1^2 (1 - s2^2) / (s2^2 (1 - s1^2)) at s1 = s^(1+delta), s2 = s^(1-delta).
double restraint_omega(double delta, double s);
// The same ratio with s^2 replaced by 2/3.
double quasi_omega(double delta);
// alpha = [1 + sqrt(8 omega (2 beta - 1) beta + 1)] / 4
double restraint_alpha(double beta, double omega);

// MFES whose critical noise parameter is s_crit: the point on the alpha-beta
// restraint where the sudden-death polynomial vanishes. delta in [0, 1],
// s_crit in (1/sqrt(3), 1).
ExtremalPoint mfes_concurrence_general(double delta, double s_crit);

// MFES with a prescribed beta = r sin^2(theta); solves for s_crit instead.
ExtremalPoint mfes_concurrence_at_beta(double delta, double beta);

// Restraint with omega replaced by quasi_omega(delta); robustness is
// computed numerically afterwards.
ExtremalPoint quasi_mfes(double delta, double beta);

// --- negativity ----------------------------------------------------------

// One-sided negativity MFES in the (c, p) chart: the p maximizing the
// negativity at fixed c.
double mfes_negativity_p(double c);
// Largest negativity over the fixed-c curve.
double max_negativity_at_c(double c);
ExtremalPoint mfes_negativity_one_sided(double c);

// Stationary point of the negativity along the sudden-death curve.
struct CurvePoint {
  AnsatzParams params;
  double negativity = 0.0;
  double lagrange_residual = 0.0;
  bool is_max = false;
  bool endpoint = false;
};

struct NegativityExtremals {
  ExtremalPoint mres;  // smallest negativity on the curve
  ExtremalPoint mfes;  // largest negativity on the curve
  std::vector<CurvePoint> candidates;
};

// Traces the curve esd_polynomial(r, theta) = 0 at the local parameters of
// (delta, s_crit) and locates the extrema of the negativity along it from
// the sign changes of dN/dr dP/dtheta - dN/dtheta dP/dr. Throws Degenerate
// when the curve collapses (delta = 1, or s_crit at the Bell value).
NegativityExtremals negativity_extremals(double delta, double s_crit);

// Lagrange function dN/dr dP/dtheta - dN/dtheta dP/dr at (r, theta).
double negativity_lagrange(const AnsatzParams& p, double s1, double s2);

// --- queries by entanglement value -----------------------------------------

// The MRES or MFES for `measure` with entanglement `value` under `delta`.
ExtremalPoint extremal_at(Kind kind, Measure measure, double value, double delta);

struct RobustnessBounds {
  double mres = 0.0;
  double mfes = 0.0;
};

RobustnessBounds robustness_bounds(Measure measure, double value, double delta);

// Residual of the parameter constraint the uniform (delta = 0) and
// one-sided (delta = 1) families obey; nullopt for other delta.
std::optional<double> constraint_residual(const ExtremalPoint& p);

// --- family sweeps ---------------------------------------------------------

// Extremal point whose critical noise parameter is s_crit. Throws
// Degenerate for the delta = 1 MRES families, whose robustness is the same
// for every member.
ExtremalPoint extremal_at_s_crit(Kind kind, Measure measure, double s_crit, double delta);

enum class FamilyGrid { Robustness, Entanglement };

// `grid` points of a family. On the robustness grid MRES/MFES sit at
// R = k R_Bell / grid, on the entanglement grid at k / grid (k = 1..grid);
// quasi-MFES always at beta = k / (2 (grid + 1)).
std::vector<ExtremalPoint> family(Kind kind, Measure measure, double delta, int grid,
                                  FamilyGrid spacing = FamilyGrid::Robustness);

}  // namespace esdlab
