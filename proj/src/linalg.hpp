#pragma once

// Small Hermitian helpers shared by the modules. Not installed.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace esdlab::detail {

// Ascending eigenvalues of a Hermitian matrix (lower triangle is used).
template <class Mat>
auto hermitian_eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().eval();
}

// Principal square root of a PSD matrix; eigenvalues below zero (round-off)
// are clamped to zero.
template <class Mat>
Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  auto w = es.eigenvalues().eval();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::sqrt(std::max(w(i), 0.0));
  const auto& v = es.eigenvectors();
  return v * w.asDiagonal() * v.adjoint();
}

template <class Mat>
Mat hermitian_part(const Mat& m) {
  return (m + m.adjoint()) / 2.0;
}

inline Eigen::Matrix2cd pauli(int k) {
  using C = std::complex<double>;
  Eigen::Matrix2cd s;
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, C(0, -1), C(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace esdlab::detail
