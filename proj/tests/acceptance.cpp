// Acceptance run: one PASS/FAIL line per criterion. Exits 0 when the set of
// failing criteria equals the --expect-fail list.
#include "esdlab/channel.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/extremal.hpp"
#include "esdlab/mcstats.hpp"
#include "esdlab/robustness.hpp"
#include "esdlab/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace esdlab;
using std::numbers::pi;

namespace {

// pinned tolerances
constexpr double kBellTol = 1e-8;
constexpr double kBellSeconds = 1.0;
constexpr double kOneSidedTol = 1e-7;
constexpr double kCpTol = 1e-7;
constexpr double kUniformTol = 1e-8;
constexpr double kFactorizationSeconds = 30.0;
constexpr double kFidelityFloor = 1 - 1e-4;
constexpr double kEnvelopeSeconds = 600.0;
constexpr std::size_t kEnvelopeDraws = 20000;
constexpr double kConstraintTol = 1e-9;
constexpr double kLagrangeTol = 1e-8;
constexpr double kLagrangeMargin = 1e-3;
constexpr double kTrendP = 0.01;
constexpr std::size_t kTrendMinCount = 10;

const double kBellS = 1.0 / std::sqrt(3.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// robustness grid strictly inside (0, R_Bell)
std::vector<double> s_grid(int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(1 - k * (1 - kBellS) / (n + 1.0));
  return out;
}

Outcome bell_robustness() {
  const auto t0 = std::chrono::steady_clock::now();
  const DensityMatrix bell = make_ansatz({1.0, pi / 4});
  double worst = 0.0;
  for (double delta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    worst = std::max(worst, std::abs(s_crit_numeric(bell, delta).s_crit - kBellS));
    worst = std::max(worst, std::abs(s_crit_ansatz({1.0, pi / 4}, delta).s_crit - kBellS));
  }
  const double t = seconds_since(t0);
  return {worst <= kBellTol && t < kBellSeconds, fmt("max |s - 1/sqrt3| = %.2e, %.3f s", worst, t)};
}

Outcome one_sided_pure() {
  double worst = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double theta = 0.5 * pi * k / 51.0;
    const double r = s_crit_numeric(make_ansatz({1.0, theta}), 1.0).robustness;
    worst = std::max(worst, std::abs(r - kBellRobustness));
  }
  return {worst <= kOneSidedTol, fmt("50 angles, max |R - R_Bell| = %.2e", worst)};
}

Outcome cp_chart() {
  double worst = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    Rng rng(2024, i, 105);
    const double c = rng.uniform_open_left();
    const double p = std::tan(rng.uniform(1e-6, pi / 2 - 1e-6));
    const double r = s_crit_numeric(make_ansatz(from_cp({c, p})), 1.0).robustness;
    worst = std::max(worst, std::abs(r - robustness_one_sided_cp(c)));
  }
  return {worst <= kCpTol, fmt("500 points, max error %.2e", worst)};
}

Outcome uniform_pure_law() {
  double worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double c = k / 100.0;
    const double r = s_crit_numeric(make_ansatz({1.0, 0.5 * std::asin(c)}), 0.0).robustness;
    worst = std::max(worst, std::abs(r - (1 - 1 / std::sqrt(2 * c + 1))));
  }
  return {worst <= kUniformTol, fmt("100 values, max error %.2e", worst)};
}

Outcome factorization() {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport rep = verify_factorization();
  const double t = seconds_since(t0);
  std::string detail;
  for (const auto& c : rep.checks) detail += fmt("%s %zu/%zu worst %.1e, ", c.name.c_str(), c.cases - c.failures, c.cases, c.worst);
  return {rep.passed() && t < kFactorizationSeconds, detail + fmt("%.2f s", t)};
}

Outcome quasi_mfes_fidelity() {
  const SuiteReport rep = verify_quasifidelity();
  const double min_f = 1 - rep.checks.at(0).worst;
  return {rep.checks.at(0).cases == 81 && min_f >= kFidelityFloor,
          fmt("81 cases, min fidelity 1 - %.2e (%s)", rep.checks[0].worst, rep.checks[0].worst_case.c_str())};
}

// ensembles reused by the trend criterion
std::map<std::pair<double, SpectrumMode>, Ensemble> g_ensembles;

Outcome envelope() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, violations = 0, skipped = 0;
  double worst = 0.0;
  for (double delta : {0.0, 0.5, 1.0}) {
    for (SpectrumMode mode : {SpectrumMode::UniformSimplex, SpectrumMode::AlphaAngles}) {
      Ensemble e = run_ensemble({11, kEnvelopeDraws, mode, 0.0}, delta);
      for (Measure m : {Measure::Concurrence, Measure::Negativity}) {
        const EnvelopeReport rep = envelope_check(e.records, delta, m);
        checked += rep.checked;
        violations += rep.violations;
        skipped += rep.skipped;
        if (!rep.worst.empty()) worst = std::max(worst, rep.worst.front().excess);
      }
      g_ensembles.emplace(std::pair{delta, mode}, std::move(e));
    }
  }
  const double t = seconds_since(t0);
  return {violations == 0 && skipped == 0 && t < kEnvelopeSeconds,
          fmt("%zu checks, %zu violations, %zu skipped, worst excess %.1e, %.0f s", checked, violations,
              skipped, worst, t)};
}

// dN/dtheta along a fixed-c line of the (c, p) chart, from
// r = c / (1 - (1 - c) cos 2t) and N = sqrt(r^2 sin^2 2t + (1 - r)^2) - (1 - r)
double negativity_slope_at_fixed_c(double c, double theta) {
  const double k = std::cos(2 * theta), dk = -2 * std::sin(2 * theta);
  const double d = 1 - (1 - c) * k;
  const double r = c / d, dr = c * (1 - c) * dk / (d * d);
  const double a = 1 - k * k, da = -2 * k * dk;
  const double root = std::sqrt(r * r * a + (1 - r) * (1 - r));
  return (2 * r * dr * a + r * r * da - 2 * (1 - r) * dr) / (2 * root) + dr;
}

Outcome extremal_constraints() {
  double worst = 0.0, worst_robustness = 0.0;
  std::string where;
  for (double delta : {0.0, 1.0}) {
    for (Measure m : {Measure::Concurrence, Measure::Negativity}) {
      for (Kind k : {Kind::MRES, Kind::MFES}) {
        for (double s : s_grid(50)) {
          ExtremalPoint p;
          if (k == Kind::MRES && delta == 1.0) {
            // every pure state; sample by entanglement instead
            p = extremal_at(k, m, (1 - s) / (1 - kBellS), delta);
          } else {
            p = extremal_at_s_crit(k, m, s, delta);
          }
          double res;
          if (delta == 1.0 && m == Measure::Negativity && k == Kind::MFES) {
            res = std::abs(negativity_slope_at_fixed_c(to_cp(p.params).c, p.params.theta));
          } else {
            res = constraint_residual(p).value();
          }
          const double r_num = s_crit_numeric(make_ansatz(p.params), delta).robustness;
          worst_robustness = std::max(worst_robustness, std::abs(r_num - p.robustness));
          if (res > worst) {
            worst = res;
            where = fmt("delta=%g %s %s", delta, to_string(m), to_string(k));
          }
        }
      }
    }
  }
  return {worst <= kConstraintTol && worst_robustness <= kUniformTol,
          fmt("8 cells x 50, max residual %.1e%s%s, max robustness error %.1e", worst,
              where.empty() ? "" : " at ", where.c_str(), worst_robustness)};
}

Outcome lagrange_extremals() {
  double worst0 = 0.0, min_r = 1.0;
  for (double s : s_grid(20)) {
    const NegativityExtremals e0 = negativity_extremals(0.0, s);
    worst0 = std::max({worst0, std::abs(e0.mres.params.theta - pi / 4), std::abs(e0.mfes.params.r - 1.0)});
    min_r = std::min(min_r, negativity_extremals(0.5, s).mfes.params.r);
  }
  return {worst0 <= kLagrangeTol && min_r > 0.75 + kLagrangeMargin,
          fmt("delta=0 max deviation %.1e, delta=0.5 min MFES r %.4f", worst0, min_r)};
}

Outcome trends() {
  const Ensemble& e0 = g_ensembles.at({0.0, SpectrumMode::AlphaAngles});
  const Ensemble& e1 = g_ensembles.at({1.0, SpectrumMode::AlphaAngles});
  auto corr = [](const Ensemble& e, BinKey key, Quantity q, double key_max = INFINITY) {
    return trend(binned_averages(e.records, key, kDefaultBins, q), kTrendMinCount, key_max);
  };
  const Correlation c = corr(e0, BinKey::Robustness, Quantity::C);
  const Correlation sl = corr(e0, BinKey::Robustness, Quantity::SL);
  // about 10 bins lie below 0.4, where p < 0.01 needs |rho| >= 0.79; the
  // r_tilde_c trend clears that only for some seeds
  const Correlation tc = corr(e1, BinKey::RTildeC, Quantity::DeltaR, 0.4);
  const Correlation tn = corr(e1, BinKey::RTildeN, Quantity::DeltaR, 0.4);
  const bool pass = c.rho > 0.95 && c.p_value < kTrendP && sl.rho < -0.9 && sl.p_value < kTrendP &&
                    tc.rho < 0 && tc.p_value < kTrendP && tn.rho < 0 && tn.p_value < kTrendP;
  auto show = [](const char* name, const Correlation& x) {
    return fmt("%s rho=%.3f p=%.1e n=%zu", name, x.rho, x.p_value, x.n);
  };
  return {pass, show("R:C", c) + ", " + show("R:S_L", sl) + ", " + show("r_tilde_c:delta_r", tc) + ", " +
                    show("r_tilde_n:delta_r", tn)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> expect_fail;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"bell_robustness", bell_robustness},
      {"one_sided_pure", one_sided_pure},
      {"cp_chart", cp_chart},
      {"uniform_pure_law", uniform_pure_law},
      {"factorization", factorization},
      {"quasi_mfes_fidelity", quasi_mfes_fidelity},
      {"envelope", envelope},
      {"extremal_constraints", extremal_constraints},
      {"lagrange_extremals", lagrange_extremals},
      {"trends", trends},
  };
  std::set<std::string> failed;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(name);
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  const std::set<std::string> expected(expect_fail.begin(), expect_fail.end());
  std::printf("%zu/%zu passed", criteria.size() - failed.size(), criteria.size());
  if (!expected.empty()) {
    std::printf("; expected to fail:");
    for (const auto& n : expected) std::printf(" %s", n.c_str());
  }
  std::printf("\n");
  return failed == expected ? 0 : 1;
}
