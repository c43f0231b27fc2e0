#pragma once

// Reference implementations used only by the tests. They take the long way
// round (general eigensolvers, explicit index formulas, grid searches) so a
// bug in the library does not cancel out against the same bug here.

#include "esdlab/qstate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cd = std::complex<double>;
using esdlab::Matrix4c;
using esdlab::Matrix2c;

inline Matrix2c pauli(int k) {
  Matrix2c m;
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cd(0, -1), cd(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

// Ansatz built from kets: r |psi><psi| + (1-r)|01><01|.
inline Matrix4c ansatz(double r, double theta) {
  Eigen::Vector4cd psi(std::cos(theta), 0, 0, std::sin(theta));
  Eigen::Vector4cd e01(0, 1, 0, 0);
  return r * psi * psi.adjoint() + (1 - r) * e01 * e01.adjoint();
}

// <a b| rho^{T2} |c d> = <a d| rho |c b>
inline Matrix4c partial_transpose(const Matrix4c& rho) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  return out;
}

inline Eigen::Vector4d pt_eigenvalues(const Matrix4c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(partial_transpose(rho), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double negativity(const Matrix4c& rho) {
  double n = 0;
  for (double l : pt_eigenvalues(rho))
    if (l < 0) n -= 2 * l;
  return n;
}

// Wootters' recipe taken literally: eigenvalues of the non-Hermitian
// R = rho (sy x sy) rho* (sy x sy) by a general complex eigensolver.
inline double concurrence(const Matrix4c& rho) {
  const Matrix4c yy = kron(pauli(2), pauli(2));
  const Matrix4c r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix4c> es(r, false);
  std::array<double, 4> l;
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Pauli expansion rho = 1/4 sum T_ij s_i x s_j with the local parts scaled
// by s1, s2 and the correlations by s1 s2.
inline Matrix4c depolarize(const Matrix4c& rho, double s1, double s2) {
  Matrix4c out = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Matrix4c p = kron(pauli(i), pauli(j));
      const cd t = (rho * p).trace();
      const double f = (i ? s1 : 1.0) * (j ? s2 : 1.0);
      out += 0.25 * f * t * p;
    }
  return out;
}

// Smallest s on a fine grid (then bisected) where the evolved ansatz is
// still NPT; brute force, no polynomial.
inline double s_crit_brute(const Matrix4c& rho, double delta) {
  auto npt = [&](double s) {
    const Matrix4c e = depolarize(rho, std::pow(s, 1 + delta), std::pow(s, 1 - delta));
    return pt_eigenvalues(e)(0) < 0;
  };
  double hi = 1.0, lo = 1.0;
  const int n = 4000;
  for (int k = 1; k <= n; ++k) {
    const double s = 1.0 - static_cast<double>(k) / n;
    if (!npt(s)) {
      lo = s;
      break;
    }
    hi = s;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (npt(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Negativity and sudden-death robustness of ansatz(r, theta), from the
// brute-force critical point above.
inline double robustness_brute(double r, double theta, double delta) {
  return 1.0 - s_crit_brute(ansatz(r, theta), delta);
}

// s_crit at delta = 0 for ansatz(r, pi/4). With s1 = s2 = s and x = s^2
// the sudden-death condition expands to
//   4 r^2 x^2 - (1 + (1-2r) x)^2 + 4 (1-r)^2 x = 0,
// i.e. 2.2 x^2 + 1.36 x - 1 = 0 for r = 0.8.
inline double s_crit_bell_diag_uniform(double r) {
  const double a = 4 * r * r - (1 - 2 * r) * (1 - 2 * r);
  const double b = 4 * (1 - r) * (1 - r) - 2 * (1 - 2 * r);
  const double c = -1;
  const double x = (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
  return std::sqrt(x);
}

}  // namespace oracle
