#pragma once

// Two-qubit density matrices in the product basis (|00>, |01>, |10>, |11>);
// qubit 1 is the left tensor factor.

#include "esdlab/rng.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>

namespace esdlab {

using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

// Hermitian, unit-trace, positive semidefinite 4x4 matrix. Instances are
// immutable once constructed.
class DensityMatrix {
 public:
  // Validates all invariants; throws InvalidState with the first violation.
  explicit DensityMatrix(const Matrix4c& m);

  // Skips validation. For matrices that are valid by construction (channel
  // outputs, mixtures of valid states); the diagonal is symmetrized anyway.
  static DensityMatrix trusted(const Matrix4c& m);

  static DensityMatrix maximally_mixed();
  // |ket><ket| for a (not necessarily normalized) ket.
  static DensityMatrix pure(const Eigen::Vector4cd& ket);

  const Matrix4c& matrix() const noexcept { return m_; }
  std::complex<double> operator()(int i, int j) const { return m_(i, j); }

  // Ascending eigenvalues.
  Eigen::Vector4d eigenvalues() const;
  double purity() const;  // tr rho^2

 private:
  struct TrustedTag {};
  DensityMatrix(const Matrix4c& m, TrustedTag) : m_(m) {}

  Matrix4c m_;
};

struct AnsatzParams {
  double r = 0.0;
  double theta = 0.0;

  double alpha() const;  // r cos^2 theta
  double beta() const;   // r sin^2 theta

  // Throws InvalidArgument unless 0 <= r <= 1 and 0 <= theta <= pi/2.
  void validate() const;

  static AnsatzParams from_alpha_beta(double alpha, double beta);
};

// Alternate chart of the ansatz family: the state obtained by filtering
// ansatz(c, pi/4) on qubit 2 with diag(1, p) (up to normalization).
struct CpParams {
  double c = 0.0;
  double p = 0.0;
};

CpParams to_cp(const AnsatzParams& a);
AnsatzParams from_cp(const CpParams& cp);

// r |psi(theta)><psi(theta)| + (1 - r) |01><01|,
// |psi(theta)> = cos(theta)|00> + sin(theta)|11>.
DensityMatrix make_ansatz(const AnsatzParams& p);

struct BlochData {
  double r1_len = 0.0;
  double r2_len = 0.0;
  double delta_r = 0.0;  // r1_len - r2_len
};

Matrix2c reduced_state(const DensityMatrix& rho, int qubit);  // qubit in {1, 2}
Eigen::Vector3d bloch_vector(const Matrix2c& reduced);
BlochData bloch_vectors(const DensityMatrix& rho);

// (4/3)(1 - tr rho^2)
double linear_entropy(const DensityMatrix& rho);

// [tr sqrt(sqrt(a) b sqrt(a))]^2
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

enum class SpectrumMode { UniformSimplex, AlphaAngles };

struct RandomSpec {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  SpectrumMode spectrum_mode = SpectrumMode::UniformSimplex;
  // 0 disables the weighted mixture with a random ansatz state.
  double mix_delta_max = 0.0;

  void validate() const;
};

// Eigenvalues {cos^2 a1 cos^2 a2, cos^2 a1 sin^2 a2, sin^2 a1 cos^2 a3,
// sin^2 a1 sin^2 a3}.
std::array<double, 4> alpha_angle_spectrum(double a1, double a2, double a3);

// Haar unitary from a complex Ginibre matrix (QR with phase-fixed R).
Matrix4c haar_unitary(Rng& rng);

// Deterministic in (spec, index) alone; independent of call order.
DensityMatrix random_state(const RandomSpec& spec, std::size_t index);

// Haar-random pure state for (seed, index); used by tests and verification.
DensityMatrix random_pure_state(std::uint64_t seed, std::size_t index);

// Random local unitary U_A (x) U_B for (seed, index).
Matrix4c random_local_unitary(std::uint64_t seed, std::size_t index);

}  // namespace esdlab
