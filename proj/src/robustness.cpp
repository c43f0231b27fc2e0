#include "esdlab/robustness.hpp"

#include "esdlab/channel.hpp"
#include "esdlab/errors.hpp"
#include "roots.hpp"

#include <cmath>
#include <sstream>

namespace esdlab {

namespace {

constexpr double kScanStep = 1.0 / 256.0;
constexpr double kScanBottom = 1.0 / 3.0;
constexpr int kValidationPoints = 64;
constexpr double kSeparableTol = 1e-9;
// PT eigenvalues above -this count as nonnegative when classifying a grid
// point; keeps round-off from registering as extra crossings.
constexpr double kCrossingTol = 1e-14;

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in [0, 1]");
}

RobustnessResult make_result(double s, RobustnessMethod m, double residual) {
  return {s, 1.0 - s, m, residual};
}

// Topmost transition of `inside` on the standard scan grid, refined by
// bisection.
template <class Pred>
double topmost_root(Pred&& inside, const char* what) {
  const auto grid = detail::descending_grid(1.0, kScanBottom, kScanStep);
  const auto brackets = detail::scan_transitions(inside, grid);
  if (brackets.empty()) {
    std::ostringstream os;
    os << what << ": no sign change on [1/3, 1]";
    throw RootNotFound(os.str());
  }
  return detail::bisect(inside, brackets.front().lo, brackets.front().hi, kBisectionTol);
}

}  // namespace

const char* to_string(RobustnessMethod m) {
  switch (m) {
    case RobustnessMethod::PptBisection: return "PptBisection";
    case RobustnessMethod::AnsatzPolynomial: return "AnsatzPolynomial";
    case RobustnessMethod::PureClosedForm: return "PureClosedForm";
  }
  return "?";
}

double esd_polynomial(const AnsatzParams& p, double s1, double s2) {
  const double sin2 = std::sin(2.0 * p.theta);
  const double cos2 = std::cos(2.0 * p.theta);
  const double u = s1 * s2;
  const double a = 1.0 + (1.0 - 2.0 * p.r) * u;
  const double b = p.r * cos2 * (s1 - s2) + (1.0 - p.r) * (s1 + s2);
  return 4.0 * p.r * p.r * sin2 * sin2 * u * u - a * a + b * b;
}

RobustnessResult s_crit_ansatz(const AnsatzParams& p, double delta) {
  check_delta(delta);
  p.validate();
  if (concurrence_ansatz(p) <= kSeparableTol)
    throw SeparableState("ansatz state is separable; no sudden-death point");
  auto poly = [&](double s) {
    const auto [s1, s2] = local_noise(delta, s);
    return esd_polynomial(p, s1, s2);
  };
  const double s = topmost_root([&](double x) { return poly(x) > 0.0; }, "s_crit_ansatz");
  return make_result(s, RobustnessMethod::AnsatzPolynomial, poly(s));
}

RobustnessResult s_crit_numeric(const DensityMatrix& rho, double delta) {
  check_delta(delta);
  if (negativity(rho) <= kSeparableTol)
    throw SeparableState("state is separable; no sudden-death point");

  auto g = [&](double s) {
    const auto [s1, s2] = local_noise(delta, s);
    return min_pt_eigenvalue(apply_depolarizing_local(rho, s1, s2));
  };
  auto inside = [&](double s) { return g(s) < -kCrossingTol; };

  const auto grid = detail::descending_grid(1.0, kScanBottom, kScanStep);
  const auto brackets = detail::scan_transitions(inside, grid);
  if (brackets.empty()) throw RootNotFound("s_crit_numeric: no crossing on [1/3, 1]");
  if (brackets.size() > 1) {
    std::ostringstream os;
    os << "s_crit_numeric: " << brackets.size() << " crossings on [1/3, 1]";
    throw RootNotFound(os.str(), brackets);
  }

  const double s = detail::bisect(inside, brackets.front().lo, brackets.front().hi, kBisectionTol);

  for (int k = 1; k <= kValidationPoints; ++k) {
    const double above = s + (1.0 - s) * k / kValidationPoints;
    const double below = kScanBottom + (s - kScanBottom) * (k - 1) / kValidationPoints;
    if (!(g(above) < 0.0) || g(below) < -kPsdTol) {
      std::ostringstream os;
      os << "s_crit_numeric: single-crossing check failed near s = " << (g(above) < 0.0 ? below : above);
      throw RootNotFound(os.str(), brackets);
    }
  }
  return make_result(s, RobustnessMethod::PptBisection, g(s));
}

RobustnessResult robustness_pure(double c, double delta) {
  check_delta(delta);
  if (!(c > 0.0 && c <= 1.0)) throw InvalidArgument("pure-state concurrence must lie in (0, 1]");
  auto f = [&](double s) {
    const auto [s1, s2] = local_noise(delta, s);
    const double lhs = c * c * (4.0 * s1 * s1 * s2 * s2 - (s1 - s2) * (s1 - s2));
    return lhs - (1.0 - s1 * s1) * (1.0 - s2 * s2);
  };
  const double s = topmost_root([&](double x) { return f(x) > 0.0; }, "robustness_pure");
  return make_result(s, RobustnessMethod::PureClosedForm, f(s));
}

double robustness_pure_uniform(double c) { return 1.0 - 1.0 / std::sqrt(2.0 * c + 1.0); }

double robustness_one_sided_cp(double c) { return 1.0 - std::sqrt((2.0 - c) / (2.0 + c)); }

}  // namespace esdlab
