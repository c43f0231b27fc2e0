#include "esdlab/verify.hpp"

#include "esdlab/channel.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/extremal.hpp"
#include "esdlab/mcstats.hpp"
#include "esdlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace esdlab {

namespace {

constexpr std::uint32_t kChannelStream = 10;
constexpr double kFactorTol = 1e-8;
constexpr double kFidelityTol = 1e-4;

// Records one case; `error` > tolerance is a failure. Keeps the worst.
void record(CheckSummary& c, double error, const std::string& where) {
  ++c.cases;
  if (!(error <= c.tolerance)) ++c.failures;
  if (c.cases == 1 || !(error <= c.worst)) {
    c.worst = error;
    c.worst_case = where;
  }
}

// Random one-sided channel: a local unitary, then depolarizing noise with
// parameter s on qubit 1 only.
struct OneSided {
  Matrix4c u;
  double s;

  DensityMatrix operator()(const DensityMatrix& rho) const {
    const DensityMatrix rotated = DensityMatrix::trusted(u * rho.matrix() * u.adjoint());
    return apply_depolarizing_local(rotated, s, 1.0);
  }
};

OneSided random_channel(std::uint64_t seed, std::size_t i) {
  Rng rng(seed, i, kChannelStream);
  return {random_local_unitary(seed, i), rng.uniform_open_left()};
}

LocalFilter random_filter(std::uint64_t seed, std::size_t i) {
  Rng rng(seed, i, kChannelStream + 1);
  Eigen::Vector3d dir(rng.normal(), rng.normal(), rng.normal());
  LocalFilter f;
  f.a = dir.normalized() * rng.uniform(0.0, 0.95);
  f.side = Side::Qubit2;
  return f;
}

std::string case_name(const char* what, std::size_t i) {
  std::ostringstream os;
  os << what << " #" << i;
  return os.str();
}

}  // namespace

bool SuiteReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

SuiteReport verify_factorization(std::uint64_t seed, std::size_t count) {
  SuiteReport rep{"factorization", {}};
  CheckSummary pure{"pure-law", 0, 0, 0.0, kFactorTol, {}};
  // slack is reported as its negation so that "larger is worse" everywhere
  CheckSummary mixed{"mixed-inequality", 0, 0, 0.0, kFactorTol, {}};
  CheckSummary pairs{"filter-pairs", 0, 0, 0.0, kFactorTol, {}};

  const DensityMatrix bell = make_ansatz({1.0, std::numbers::pi / 4});
  const RandomSpec mixed_spec{seed, count, SpectrumMode::UniformSimplex, 0.0};
  for (std::size_t i = 0; i < count; ++i) {
    const OneSided ch = random_channel(seed, i);
    const double bell_factor = concurrence(ch(bell));

    const DensityMatrix psi = random_pure_state(seed, i);
    record(pure, std::abs(concurrence(ch(psi)) - bell_factor * concurrence(psi)),
           case_name("pure", i));

    const DensityMatrix rho = random_state(mixed_spec, i);
    record(mixed, concurrence(ch(rho)) - bell_factor * concurrence(rho), case_name("mixed", i));

    const DensityMatrix rho1 = apply_filter(rho, random_filter(seed, i)).state;
    record(pairs,
           std::abs(concurrence(ch(rho1)) * concurrence(rho) -
                    concurrence(ch(rho)) * concurrence(rho1)),
           case_name("filtered", i));
  }
  rep.checks = {pure, mixed, pairs};
  return rep;
}

SuiteReport verify_quasifidelity() {
  SuiteReport rep{"quasifidelity", {}};
  CheckSummary c{"quasi-vs-mfes infidelity", 0, 0, 0.0, kFidelityTol, {}};
  for (int di = 1; di <= 9; ++di) {
    for (int bi = 1; bi <= 9; ++bi) {
      const double delta = di / 10.0;
      const double beta = bi * 0.05;
      std::ostringstream where;
      where << "delta=" << delta << " beta=" << beta;
      try {
        const ExtremalPoint q = quasi_mfes(delta, beta);
        const ExtremalPoint m = extremal_at(Kind::MFES, Measure::Concurrence, q.entanglement, delta);
        record(c, 1.0 - fidelity(make_ansatz(q.params), make_ansatz(m.params)), where.str());
      } catch (const Error& e) {
        record(c, std::numeric_limits<double>::infinity(), where.str() + ": " + e.what());
      }
    }
  }
  rep.checks = {c};
  return rep;
}

SuiteReport verify_envelope(std::uint64_t seed, std::size_t count, const std::vector<double>& deltas,
                            const std::vector<SpectrumMode>& modes) {
  SuiteReport rep{"envelope", {}};
  for (SpectrumMode mode : modes) {
    for (double delta : deltas) {
      const Ensemble e = run_ensemble({seed, count, mode, 0.0}, delta);
      for (Measure m : {Measure::Concurrence, Measure::Negativity}) {
        const EnvelopeReport env = envelope_check(e.records, delta, m);
        std::ostringstream name;
        name << "envelope " << to_string(m) << " delta=" << delta << " "
             << (mode == SpectrumMode::UniformSimplex ? "simplex" : "alpha");
        CheckSummary c{name.str(), env.checked, env.violations, 0.0, env.tol, {}};
        if (!env.worst.empty()) {
          c.worst = env.worst.front().excess + env.tol;  // distance outside [R_MFES, R_MRES]
          std::ostringstream w;
          w << "seed=" << env.worst.front().seed << " index=" << env.worst.front().index;
          c.worst_case = w.str();
        }
        rep.checks.push_back(c);
      }
    }
  }
  return rep;
}

}  // namespace esdlab
