#include "esdlab/extremal.hpp"

#include "esdlab/channel.hpp"
#include "esdlab/errors.hpp"
#include "roots.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace esdlab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kBellS = 1.0 / std::sqrt(3.0);

void check_unit(double x, const char* what) {
  if (!(x > 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in (0, 1], got " << x;
    throw InvalidArgument(os.str());
  }
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in [0, 1]");
}

ExtremalPoint make_point(const AnsatzParams& p, Kind kind, Measure m, double robustness,
                         double delta) {
  return {p, kind, m, measure_ansatz(p, m), robustness, delta};
}

// Root of f(x) = target on [lo, hi] for monotone f, via TOMS 748. Targets
// beyond the values at the ends clamp to the nearer end.
template <class F>
double invert_monotone(F&& f, double target, double lo, double hi) {
  const double flo = f(lo) - target;
  const double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::abs(flo) < std::abs(fhi) ? lo : hi;
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(
      [&](double x) { return f(x) - target; }, lo, hi, flo, fhi,
      boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (a + b);
}

// Bounds of the critical-s search for the general-delta families; the
// families degenerate at the Bell value and at s = 1.
constexpr double kSEdge = 1e-9;

}  // namespace

const char* to_string(Kind k) {
  switch (k) {
    case Kind::MRES: return "MRES";
    case Kind::MFES: return "MFES";
    case Kind::QuasiMFES: return "QuasiMFES";
  }
  return "?";
}

// --- concurrence -------------------------------------------------------------

ExtremalPoint mres_concurrence(double c, double delta) {
  check_unit(c, "concurrence");
  check_delta(delta);
  const AnsatzParams p{1.0, 0.5 * std::asin(c)};
  return make_point(p, Kind::MRES, Measure::Concurrence, robustness_pure(c, delta).robustness,
                    delta);
}

ExtremalPoint mfes_concurrence_one_sided(double theta) {
  if (!(theta >= 0.0 && theta <= kPi / 4)) throw InvalidArgument("theta must lie in [0, pi/4]");
  const double cos_t = std::cos(theta);
  const AnsatzParams p{std::min(1.0, 1.0 / (2.0 * cos_t * cos_t)), theta};
  return make_point(p, Kind::MFES, Measure::Concurrence, robustness_one_sided_cp(to_cp(p).c), 1.0);
}

ExtremalPoint mfes_concurrence_uniform(double c) {
  check_unit(c, "concurrence");
  const AnsatzParams p = c >= 0.5 ? AnsatzParams{c, kPi / 4}
                                  : AnsatzParams{0.5, 0.5 * std::asin(2.0 * c)};
  return make_point(p, Kind::MFES, Measure::Concurrence, s_crit_ansatz(p, 0.0).robustness, 0.0);
}

double restraint_omega(double delta, double s) {
  check_delta(delta);
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("restraint omega needs s in (0, 1)");
  if (delta == 1.0) return 0.0;
  // 1 - s_i^2 = -expm1(2 k_i ln s) keeps precision as s -> 1
  const double ls = std::log(s);
  const double ratio = std::exp(4.0 * delta * ls);  // s1^2 / s2^2
  return ratio * std::expm1(2.0 * (1.0 - delta) * ls) / std::expm1(2.0 * (1.0 + delta) * ls);
}

double quasi_omega(double delta) {
  check_delta(delta);
  const double q = 2.0 / 3.0;
  return (std::pow(q, delta - 1.0) - 1.0) / (std::pow(q, -delta - 1.0) - 1.0);
}

double restraint_alpha(double beta, double omega) {
  const double rad = 8.0 * omega * (2.0 * beta - 1.0) * beta + 1.0;
  if (rad < -1e-14) throw InvalidArgument("alpha-beta restraint: negative radicand");
  return 0.25 * (1.0 + std::sqrt(std::max(rad, 0.0)));
}

namespace {

AnsatzParams restraint_point(double beta, double omega) {
  return AnsatzParams::from_alpha_beta(restraint_alpha(beta, omega), beta);
}

}  // namespace

ExtremalPoint mfes_concurrence_general(double delta, double s_crit) {
  check_delta(delta);
  if (!(s_crit > kBellS && s_crit < 1.0))
    throw InvalidArgument("s_crit must lie in (1/sqrt(3), 1)");
  const double omega = restraint_omega(delta, s_crit);
  const auto [s1, s2] = local_noise(delta, s_crit);
  auto inside = [&](double beta) { return esd_polynomial(restraint_point(beta, omega), s1, s2) > 0.0; };

  std::vector<double> grid;
  for (int k = 64; k >= 0; --k) grid.push_back(0.5 * k / 64.0);
  const auto brackets = detail::scan_transitions(inside, grid);
  if (brackets.empty()) throw RootNotFound("alpha-beta restraint: no root in (0, 1/2]");
  if (brackets.size() > 1)
    throw RootNotFound("alpha-beta restraint: several roots in (0, 1/2]", brackets);
  const double beta = detail::bisect(inside, brackets.front().lo, brackets.front().hi, 1e-15);
  return make_point(restraint_point(beta, omega), Kind::MFES, Measure::Concurrence, 1.0 - s_crit,
                    delta);
}

ExtremalPoint mfes_concurrence_at_beta(double delta, double beta) {
  check_delta(delta);
  if (!(beta > 0.0 && beta <= 0.5)) throw InvalidArgument("beta must lie in (0, 1/2]");
  if (beta == 0.5)
    return make_point({1.0, kPi / 4}, Kind::MFES, Measure::Concurrence, kBellRobustness, delta);
  auto inside = [&](double s) {
    const auto [s1, s2] = local_noise(delta, s);
    return esd_polynomial(restraint_point(beta, restraint_omega(delta, s)), s1, s2) > 0.0;
  };
  const double top = 1.0 - kSEdge;
  const double bottom = kBellS + kSEdge;
  const auto grid = detail::descending_grid(top, bottom, (top - bottom) / 128.0);
  const auto brackets = detail::scan_transitions(inside, grid);
  if (brackets.empty()) throw RootNotFound("mfes_concurrence_at_beta: no critical point");
  const double s = detail::bisect(inside, brackets.front().lo, brackets.front().hi, 1e-14);
  return make_point(restraint_point(beta, restraint_omega(delta, s)), Kind::MFES,
                    Measure::Concurrence, 1.0 - s, delta);
}

ExtremalPoint quasi_mfes(double delta, double beta) {
  check_delta(delta);
  if (!(beta > 0.0 && beta <= 0.5)) throw InvalidArgument("beta must lie in (0, 1/2]");
  const AnsatzParams p = restraint_point(beta, quasi_omega(delta));
  return make_point(p, Kind::QuasiMFES, Measure::Concurrence, s_crit_ansatz(p, delta).robustness,
                    delta);
}

// --- negativity --------------------------------------------------------------

namespace {

// Removable 0/0 of the closed-form maximizer.
const double kCpSingular = 1.0 - 1.0 / std::sqrt(5.0);
constexpr double kCpSingularWindow = 1e-4;

// dN/dp at fixed c, where N(p) = (2p / D) (sqrt(c^2 + (1-c)^2 p^2) - (1-c) p)
// and D = c + (2 - c) p^2.
double negativity_cp_slope(double c, double p) {
  const double q = 1.0 - c;
  const double root = std::sqrt(c * c + q * q * p * p);
  const double g = root - q * p;
  const double dg = q * q * p / root - q;
  const double d = c + (2.0 - c) * p * p;
  const double dd = 2.0 * (2.0 - c) * p;
  return 2.0 * (g + p * dg) / d - 2.0 * p * g * dd / (d * d);
}

}  // namespace

double mfes_negativity_p(double c) {
  check_unit(c, "c");
  if (c == 1.0) return 1.0;
  if (std::abs(c - kCpSingular) > kCpSingularWindow) {
    const double num =
        2.0 * std::sqrt(2.0 - c) * (c - 1.0) * std::pow(c, 1.5) + 2.0 * c * c - c * c * c;
    const double den = -8.0 + 24.0 * c - 20.0 * c * c + 5.0 * c * c * c;
    const double ratio = num / den;
    if (!(ratio >= 0.0)) throw InvalidArgument("negativity MFES: negative radicand");
    return std::sqrt(ratio);
  }
  // Near the removable singularity: the maximizer is the root of dN/dp,
  // which is positive at p = 0 and negative at p = 1 for c < 1.
  return detail::bisect([&](double p) { return negativity_cp_slope(c, p) > 0.0; }, 0.0, 1.0,
                        1e-15);
}

double max_negativity_at_c(double c) {
  return negativity_ansatz(from_cp({c, mfes_negativity_p(c)}));
}

ExtremalPoint mfes_negativity_one_sided(double c) {
  const AnsatzParams p = from_cp({c, mfes_negativity_p(c)});
  return make_point(p, Kind::MFES, Measure::Negativity, robustness_one_sided_cp(c), 1.0);
}

double negativity_lagrange(const AnsatzParams& p, double s1, double s2) {
  const double r = p.r;
  const double sin2 = std::sin(2.0 * p.theta);
  const double cos2 = std::cos(2.0 * p.theta);
  const double sin4 = std::sin(4.0 * p.theta);
  const double a = sin2 * sin2;
  const double u = s1 * s2;
  const double d = s1 - s2;
  const double w = s1 + s2;

  const double q = std::sqrt(r * r * a + (1.0 - r) * (1.0 - r));
  const double dn_dr = (r * a - (1.0 - r)) / q + 1.0;
  const double dn_dt = r * r * sin4 / q;

  const double k = cos2 * d - w;
  const double lin = r * k + w;
  const double dp_dr = 8.0 * a * u * u * r + 4.0 * u * (1.0 + u - 2.0 * u * r) + 2.0 * k * lin;
  const double dp_dt = 8.0 * u * u * r * r * sin4 - 4.0 * r * d * sin2 * lin;
  return dn_dr * dp_dt - dn_dt * dp_dr;
}

namespace {

constexpr int kCurveSamples = 512;

// The curve esd_polynomial(r, theta) = 0 at fixed (s1, s2). For each theta
// the polynomial is quadratic in r, negative at r = 0 and positive at r = 1
// inside (theta_lo, theta_hi), so exactly one root lies in (0, 1).
struct EsdCurve {
  double s1, s2, u, d, w;
  double theta_lo, theta_hi;

  EsdCurve(double delta, double s) {
    std::tie(s1, s2) = local_noise(delta, s);
    u = s1 * s2;
    d = s1 - s2;
    w = s1 + s2;
    // pure states (r = 1) sit on the curve where sin^2 2theta equals this
    const double num = (1.0 - u) * (1.0 - u) - d * d;
    const double den = 4.0 * u * u - d * d;
    if (!(den > 0.0) || !(num > 0.0) || !(num < den))
      throw Degenerate("sudden-death curve is degenerate at these parameters");
    theta_lo = 0.5 * std::asin(std::sqrt(num / den));
    theta_hi = kPi / 2 - theta_lo;
  }

  double r_at(double theta) const {
    if (theta <= theta_lo || theta >= theta_hi) return 1.0;
    const double b = std::cos(2.0 * theta);
    const double k = b * d - w;
    const double a2 = -4.0 * u * u * b * b + k * k;
    const double a1 = 4.0 * u * (1.0 + u) + 2.0 * w * k;
    const double a0 = w * w - (1.0 + u) * (1.0 + u);
    auto poly = [&](double r) { return (a2 * r + a1) * r + a0; };
    double root = -1.0;
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (std::abs(a2) < 1e-300) {
      root = -a0 / a1;
    } else if (disc >= 0.0) {
      const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
      const double x1 = q / a2;
      const double x2 = q != 0.0 ? a0 / q : x1;
      const bool ok1 = x1 >= 0.0 && x1 <= 1.0;
      const bool ok2 = x2 >= 0.0 && x2 <= 1.0;
      if (ok1 != ok2) root = ok1 ? x1 : x2;
    }
    if (root < 0.0 || root > 1.0) {
      root = detail::bisect([&](double r) { return poly(r) > 0.0; }, 0.0, 1.0, 1e-16);
    }
    return root;
  }

  AnsatzParams point(double theta) const { return {r_at(theta), theta}; }
  double negativity(double theta) const { return negativity_ansatz(point(theta)); }
  double lagrange(double theta) const { return negativity_lagrange(point(theta), s1, s2); }
};

}  // namespace

NegativityExtremals negativity_extremals(double delta, double s_crit) {
  check_delta(delta);
  if (delta == 1.0)
    throw Degenerate("negativity extremals: the one-sided curve is degenerate; use the c-chart");
  if (!(s_crit > kBellS && s_crit < 1.0))
    throw InvalidArgument("s_crit must lie in (1/sqrt(3), 1)");
  const EsdCurve curve(delta, s_crit);
  const double width = curve.theta_hi - curve.theta_lo;

  // Chebyshev spacing clusters samples near the endpoints, where r -> 1.
  std::vector<double> thetas(kCurveSamples);
  for (int k = 0; k < kCurveSamples; ++k)
    thetas[k] = curve.theta_lo + width * 0.5 * (1.0 - std::cos(kPi * k / (kCurveSamples - 1)));
  thetas.front() = curve.theta_lo;
  thetas.back() = curve.theta_hi;

  std::vector<double> lag(kCurveSamples);
  for (int k = 0; k < kCurveSamples; ++k) lag[k] = curve.lagrange(thetas[k]);

  NegativityExtremals out;
  auto add_endpoint = [&](double theta) {
    CurvePoint cp;
    cp.params = {1.0, theta};
    cp.negativity = negativity_ansatz(cp.params);
    cp.lagrange_residual = negativity_lagrange(cp.params, curve.s1, curve.s2);
    cp.endpoint = true;
    out.candidates.push_back(cp);
  };

  add_endpoint(curve.theta_lo);
  for (int k = 1; k + 1 < kCurveSamples; ++k) {
    if ((lag[k] > 0.0) == (lag[k + 1] > 0.0)) continue;
    const double theta = detail::bisect([&](double t) { return curve.lagrange(t) > 0.0; },
                                        thetas[k], thetas[k + 1], 1e-15);
    const double h = 1e-6 * width;
    const double n0 = curve.negativity(theta);
    const double nm = curve.negativity(std::max(theta - h, curve.theta_lo));
    const double np = curve.negativity(std::min(theta + h, curve.theta_hi));
    const bool is_max = n0 >= nm && n0 >= np;
    const bool is_min = n0 <= nm && n0 <= np;
    if (!is_max && !is_min) continue;
    CurvePoint cp;
    cp.params = curve.point(theta);
    cp.negativity = n0;
    cp.lagrange_residual = curve.lagrange(theta);
    cp.is_max = is_max;
    out.candidates.push_back(cp);
  }
  add_endpoint(curve.theta_hi);
  // Endpoints are both maximal and minimal candidates; whichever interior
  // point beats them by more than round-off wins. The two endpoints are the
  // same pure state up to a local unitary; MRES reports the theta > pi/4 one
  // so that its theta(r) curve stays continuous.
  constexpr double kTie = 1e-12;
  const CurvePoint* best_min = &out.candidates.back();
  const CurvePoint* best_max = &out.candidates.front();
  for (const auto& cp : out.candidates) {
    if ((cp.endpoint || !cp.is_max) && cp.negativity < best_min->negativity - kTie) best_min = &cp;
    if ((cp.endpoint || cp.is_max) && cp.negativity > best_max->negativity + kTie) best_max = &cp;
  }
  const double robustness = 1.0 - s_crit;
  out.mres = make_point(best_min->params, Kind::MRES, Measure::Negativity, robustness, delta);
  out.mfes = make_point(best_max->params, Kind::MFES, Measure::Negativity, robustness, delta);
  return out;
}

// --- queries by entanglement value --------------------------------------------

ExtremalPoint extremal_at(Kind kind, Measure measure, double value, double delta) {
  check_unit(value, "entanglement");
  check_delta(delta);
  if (kind == Kind::QuasiMFES)
    throw InvalidArgument("quasi-MFES is parametrized by beta, not by entanglement");
  const double s_lo = kBellS + kSEdge;
  const double s_hi = 1.0 - kSEdge;

  if (measure == Measure::Concurrence) {
    if (kind == Kind::MRES) return mres_concurrence(value, delta);
    if (delta == 0.0) return mfes_concurrence_uniform(value);
    // on 2 r cos^2(theta) = 1 the concurrence is tan(theta)
    if (delta == 1.0) return mfes_concurrence_one_sided(std::atan(value));
    if (value == 1.0)
      return make_point({1.0, kPi / 4}, Kind::MFES, measure, kBellRobustness, delta);
    const double s = invert_monotone(
        [&](double x) { return mfes_concurrence_general(delta, x).entanglement; }, value, s_lo, s_hi);
    return mfes_concurrence_general(delta, s);
  }

  const bool pure_mres = delta == 1.0 && kind == Kind::MRES;
  const bool pure_mfes = delta == 0.0 && kind == Kind::MFES;
  if (pure_mres || pure_mfes) {
    // same branch as negativity_extremals picks for each kind
    const double half = 0.5 * std::asin(value);
    const AnsatzParams p{1.0, pure_mres ? kPi / 2 - half : half};
    return make_point(p, kind, measure, robustness_pure(value, delta).robustness, delta);
  }
  if (delta == 0.0) {
    // ansatz(r, pi/4) with sqrt(r^2 + (1-r)^2) - (1-r) = N
    const double r = std::min(1.0, -value + std::sqrt(2.0 * value * value + 2.0 * value));
    const AnsatzParams p{r, kPi / 4};
    return make_point(p, kind, measure, s_crit_ansatz(p, 0.0).robustness, delta);
  }
  if (delta == 1.0) {
    if (value == 1.0) return mfes_negativity_one_sided(1.0);
    const double c = invert_monotone(max_negativity_at_c, value, 1e-12, 1.0);
    return mfes_negativity_one_sided(c);
  }
  if (value == 1.0) return make_point({1.0, kPi / 4}, kind, measure, kBellRobustness, delta);
  auto pick = [&](double s) {
    const auto ex = negativity_extremals(delta, s);
    return kind == Kind::MRES ? ex.mres : ex.mfes;
  };
  const double s =
      invert_monotone([&](double x) { return pick(x).entanglement; }, value, s_lo, s_hi);
  return pick(s);
}

RobustnessBounds robustness_bounds(Measure measure, double value, double delta) {
  return {extremal_at(Kind::MRES, measure, value, delta).robustness,
          extremal_at(Kind::MFES, measure, value, delta).robustness};
}

std::optional<double> constraint_residual(const ExtremalPoint& p) {
  if (p.kind == Kind::QuasiMFES) return std::nullopt;
  const double r = p.params.r;
  const double t = p.params.theta;
  const bool mres = p.kind == Kind::MRES;
  if (p.delta == 0.0) {
    if (p.measure == Measure::Concurrence) {
      if (mres) return std::abs(r - 1.0);
      return p.entanglement < 0.5 ? std::abs(r - 0.5) : std::abs(t - kPi / 4);
    }
    return mres ? std::abs(t - kPi / 4) : std::abs(r - 1.0);
  }
  if (p.delta == 1.0) {
    if (mres) return std::abs(r - 1.0);
    if (p.measure == Measure::Concurrence) return std::abs(2.0 * r * std::cos(t) * std::cos(t) - 1.0);
    const CpParams cp = to_cp(p.params);
    return std::abs(cp.p - mfes_negativity_p(cp.c));
  }
  return std::nullopt;
}

ExtremalPoint extremal_at_s_crit(Kind kind, Measure measure, double s_crit, double delta) {
  check_delta(delta);
  if (kind == Kind::QuasiMFES)
    throw InvalidArgument("quasi-MFES is parametrized by beta, not by s_crit");
  if (!(s_crit >= kBellS && s_crit < 1.0))
    throw InvalidArgument("s_crit must lie in [1/sqrt(3), 1)");
  if (kind == Kind::MRES && delta == 1.0)
    throw Degenerate("every one-sided MRES has the Bell robustness; no member has s_crit != 1/sqrt(3)");
  if (s_crit == kBellS) return make_point({1.0, kPi / 4}, kind, measure, kBellRobustness, delta);

  if (measure == Measure::Concurrence) {
    if (kind == Kind::MFES) return mfes_concurrence_general(delta, s_crit);
    const double target = 1.0 - s_crit;
    const double c = invert_monotone([&](double x) { return robustness_pure(x, delta).robustness; },
                                     target, 1e-12, 1.0);
    return mres_concurrence(c, delta);
  }
  if (delta == 1.0) {
    // s^2 = (2 - c) / (2 + c) on the one-sided c-chart
    const double s2 = s_crit * s_crit;
    return mfes_negativity_one_sided(2.0 * (1.0 - s2) / (1.0 + s2));
  }
  const auto ex = negativity_extremals(delta, s_crit);
  return kind == Kind::MRES ? ex.mres : ex.mfes;
}

std::vector<ExtremalPoint> family(Kind kind, Measure measure, double delta, int grid,
                                  FamilyGrid spacing) {
  check_delta(delta);
  if (grid < 1) throw InvalidArgument("family grid must be positive");
  std::vector<ExtremalPoint> out;
  out.reserve(static_cast<std::size_t>(grid));
  if (kind == Kind::QuasiMFES) {
    if (measure != Measure::Concurrence)
      throw InvalidArgument("quasi-MFES is defined for concurrence only");
    for (int k = 1; k <= grid; ++k) out.push_back(quasi_mfes(delta, 0.5 * k / (grid + 1)));
    return out;
  }
  for (int k = 1; k <= grid; ++k) {
    const double frac = static_cast<double>(k) / grid;
    if (spacing == FamilyGrid::Entanglement) {
      out.push_back(extremal_at(kind, measure, frac, delta));
    } else {
      const double s = k == grid ? kBellS : 1.0 - frac * kBellRobustness;
      out.push_back(extremal_at_s_crit(kind, measure, s, delta));
    }
  }
  return out;
}

}  // namespace esdlab
