#include "esdlab/entanglement.hpp"

#include "esdlab/errors.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace esdlab {

const char* to_string(Measure m) { return m == Measure::Concurrence ? "C" : "N"; }

namespace {

const Matrix4c& sigma_yy() {
  static const Matrix4c yy = detail::kron(detail::pauli(2), detail::pauli(2));
  return yy;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  // With rho = A A^dag, the square roots of the eigenvalues of
  // sqrt(rho) rho~ sqrt(rho) are the singular values of A^T (sy x sy) A.
  // Taking them from an SVD keeps absolute accuracy near 1e-16; square
  // roots of computed eigenvalues would only give about 1e-8.
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.matrix());
  Eigen::Vector4d w = es.eigenvalues();
  for (int i = 0; i < 4; ++i) w(i) = std::sqrt(std::max(w(i), 0.0));
  const Matrix4c a = es.eigenvectors() * w.cast<std::complex<double>>().asDiagonal();
  const Matrix4c tau = a.transpose() * sigma_yy() * a;
  Eigen::JacobiSVD<Matrix4c> svd(tau);
  const Eigen::Vector4d sv = svd.singularValues();  // descending
  return std::max(0.0, sv(0) - sv(1) - sv(2) - sv(3));
}

Matrix4c partial_transpose(const Matrix4c& m) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) out(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
  return out;
}

double min_pt_eigenvalue(const DensityMatrix& rho) {
  return detail::hermitian_eigenvalues(partial_transpose(rho.matrix()))(0);
}

double negativity(const DensityMatrix& rho) {
  const Eigen::Vector4d w = detail::hermitian_eigenvalues(partial_transpose(rho.matrix()));
  int negatives = 0;
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (w(i) < -kClampTol) {
      ++negatives;
      sum += w(i);
    }
  }
  if (negatives > 1) throw Error("partial transpose has more than one negative eigenvalue");
  return std::min(2.0 * std::abs(sum), 1.0);
}

Measures measures(const DensityMatrix& rho) { return {concurrence(rho), negativity(rho)}; }

double measure(const DensityMatrix& rho, Measure m) {
  return m == Measure::Concurrence ? concurrence(rho) : negativity(rho);
}

double concurrence_ansatz(const AnsatzParams& p) {
  p.validate();
  return p.r * std::sin(2.0 * p.theta);
}

double negativity_ansatz(const AnsatzParams& p) {
  p.validate();
  const double s = p.r * std::sin(2.0 * p.theta);
  const double q = 1.0 - p.r;
  // sqrt(s^2 + q^2) - q, rewritten to avoid cancellation when s << q
  const double h = std::hypot(s, q);
  return h + q > 0.0 ? s * s / (h + q) : 0.0;
}

double measure_ansatz(const AnsatzParams& p, Measure m) {
  return m == Measure::Concurrence ? concurrence_ansatz(p) : negativity_ansatz(p);
}

double min_negativity_for_concurrence(double c) {
  return negativity_ansatz({std::clamp(c, 0.0, 1.0), std::numbers::pi / 4});
}

}  // namespace esdlab
