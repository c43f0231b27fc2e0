#pragma once

#include "esdlab/qstate.hpp"

namespace esdlab {

enum class Measure { Concurrence, Negativity };

const char* to_string(Measure m);

struct Measures {
  double concurrence = 0.0;
  double negativity = 0.0;
};

// Partial-transpose eigenvalues above -this are treated as round-off.
inline constexpr double kClampTol = 1e-12;

// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the square roots of
// the eigenvalues of sqrt(rho) rho~ sqrt(rho) in decreasing order.
double concurrence(const DensityMatrix& rho);

// Partial transpose over qubit 2. Unit trace and Hermitian, but not a state.
Matrix4c partial_transpose(const Matrix4c& m);
inline Matrix4c partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix());
}

// Smallest eigenvalue of rho^{T2}.
double min_pt_eigenvalue(const DensityMatrix& rho);

// 2 * |sum of negative PT eigenvalues|. Throws Error if more than one PT
// eigenvalue is negative, which cannot happen for two qubits.
double negativity(const DensityMatrix& rho);

Measures measures(const DensityMatrix& rho);
double measure(const DensityMatrix& rho, Measure m);

// Closed forms on the ansatz family.
double concurrence_ansatz(const AnsatzParams& p);  // r sin 2theta
double negativity_ansatz(const AnsatzParams& p);   // sqrt(r^2 sin^2 2theta + (1-r)^2) - (1-r)
double measure_ansatz(const AnsatzParams& p, Measure m);

// Lower edge of the concurrence-negativity region:
// sqrt((1 - C)^2 + C^2) - (1 - C), attained by ansatz(C, pi/4).
double min_negativity_for_concurrence(double c);

}  // namespace esdlab
