#pragma once

// Self-checks over many random cases, reported as one row per check.

#include "esdlab/qstate.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace esdlab {

struct CheckSummary {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;      // largest error (or smallest slack) seen
  double tolerance = 0.0;
  std::string worst_case;  // provenance of `worst`

  bool passed() const { return failures == 0 && cases > 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckSummary> checks;

  bool passed() const;
};

// Concurrence under random one-sided channels (depolarizing with random s
// after a random unitary, both on qubit 1):
//   pure-law           |C[$ psi] - C[$ psi+] C(psi)| <= 1e-8
//   mixed-inequality   C[$ psi+] C(rho) - C[$ rho] >= -1e-8
//   filter-pairs       |C[$ rho1] C(rho0) - C[$ rho0] C(rho1)| <= 1e-8, with
//                      rho1 a random qubit-2 filter applied to rho0
SuiteReport verify_factorization(std::uint64_t seed = 1, std::size_t count = 200);

// Fidelity between each quasi-MFES and the MFES of equal concurrence over
// delta in {0.1, ..., 0.9} x beta in {0.05, ..., 0.45}; passes at >= 1 - 1e-4.
SuiteReport verify_quasifidelity();

// Envelope of random states between the MFES and MRES robustness for both
// measures, at each delta and spectrum mode.
SuiteReport verify_envelope(std::uint64_t seed, std::size_t count,
                            const std::vector<double>& deltas = {0.0, 0.5, 1.0},
                            const std::vector<SpectrumMode>& modes = {SpectrumMode::UniformSimplex,
                                                                      SpectrumMode::AlphaAngles});

}  // namespace esdlab
