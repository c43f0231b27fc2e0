#include "esdlab/qstate.hpp"

#include "esdlab/errors.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace esdlab {

using cd = std::complex<double>;

DensityMatrix::DensityMatrix(const Matrix4c& m) : m_(m) {
  if (!m.allFinite()) throw InvalidState("density matrix has non-finite entries");
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermitianTol) {
        std::ostringstream os;
        os << "density matrix is not Hermitian at (" << i << "," << j << ")";
        throw InvalidState(os.str());
      }
    }
  }
  const cd tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "density matrix trace is " << tr.real() << " (expected 1)";
    throw InvalidState(os.str());
  }
  m_ = detail::hermitian_part(m);
  const double lmin = eigenvalues()(0);
  if (lmin < -kPsdTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lmin;
    throw InvalidState(os.str());
  }
}

DensityMatrix DensityMatrix::trusted(const Matrix4c& m) {
  return DensityMatrix(detail::hermitian_part(m), TrustedTag{});
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return trusted(Matrix4c::Identity() / 4.0);
}

DensityMatrix DensityMatrix::pure(const Eigen::Vector4cd& ket) {
  const double n = ket.squaredNorm();
  if (!(n > 0.0)) throw InvalidArgument("pure state from a zero vector");
  return trusted(ket * ket.adjoint() / n);
}

Eigen::Vector4d DensityMatrix::eigenvalues() const { return detail::hermitian_eigenvalues(m_); }

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return m_.cwiseAbs2().sum();
}

double AnsatzParams::alpha() const {
  const double c = std::cos(theta);
  return r * c * c;
}

double AnsatzParams::beta() const {
  const double s = std::sin(theta);
  return r * s * s;
}

void AnsatzParams::validate() const {
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("ansatz r must lie in [0, 1]");
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
    throw InvalidArgument("ansatz theta must lie in [0, pi/2]");
}

AnsatzParams AnsatzParams::from_alpha_beta(double alpha, double beta) {
  const double r = alpha + beta;
  if (!(r > 0.0)) return {0.0, 0.0};
  const double cos2 = std::clamp((alpha - beta) / r, -1.0, 1.0);
  return {std::min(r, 1.0), 0.5 * std::acos(cos2)};
}

CpParams to_cp(const AnsatzParams& a) {
  const double cos2 = std::cos(2.0 * a.theta);
  const double denom = 1.0 - a.r * cos2;
  const double c = denom > 0.0 ? (a.r - a.r * cos2) / denom : 1.0;
  return {c, std::tan(a.theta)};
}

AnsatzParams from_cp(const CpParams& cp) {
  const double p2 = cp.p * cp.p;
  const double denom = cp.c + (2.0 - cp.c) * p2;
  const double r = denom > 0.0 ? cp.c * (1.0 + p2) / denom : 0.0;
  return {std::clamp(r, 0.0, 1.0), std::atan(cp.p)};
}

DensityMatrix make_ansatz(const AnsatzParams& p) {
  p.validate();
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = p.r * c * c;
  m(3, 3) = p.r * s * s;
  m(0, 3) = m(3, 0) = p.r * c * s;
  m(1, 1) = 1.0 - p.r;
  return DensityMatrix::trusted(m);
}

Matrix2c reduced_state(const DensityMatrix& rho, int qubit) {
  const Matrix4c& m = rho.matrix();
  Matrix2c out = Matrix2c::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      for (int k = 0; k < 2; ++k) {
        if (qubit == 1)
          out(a, ap) += m(2 * a + k, 2 * ap + k);
        else
          out(a, ap) += m(2 * k + a, 2 * k + ap);
      }
    }
  }
  return out;
}

Eigen::Vector3d bloch_vector(const Matrix2c& reduced) {
  return {2.0 * reduced(0, 1).real(), -2.0 * reduced(0, 1).imag(),
          (reduced(0, 0) - reduced(1, 1)).real()};
}

BlochData bloch_vectors(const DensityMatrix& rho) {
  BlochData b;
  b.r1_len = std::min(bloch_vector(reduced_state(rho, 1)).norm(), 1.0);
  b.r2_len = std::min(bloch_vector(reduced_state(rho, 2)).norm(), 1.0);
  b.delta_r = b.r1_len - b.r2_len;
  return b;
}

double linear_entropy(const DensityMatrix& rho) {
  return std::clamp(4.0 / 3.0 * (1.0 - rho.purity()), 0.0, 1.0);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  const Matrix4c sa = detail::psd_sqrt(a.matrix());
  const Matrix4c inner = detail::hermitian_part(Matrix4c(sa * b.matrix() * sa));
  const Eigen::Vector4d w = detail::hermitian_eigenvalues(inner);
  double tr = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (w(i) < -kPsdTol) throw InvalidState("fidelity: product matrix is not PSD");
    tr += std::sqrt(std::max(w(i), 0.0));
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

void RandomSpec::validate() const {
  if (count == 0) throw InvalidArgument("random spec count must be positive");
  if (!(mix_delta_max >= 0.0 && mix_delta_max <= 1.0))
    throw InvalidArgument("mix_delta_max must lie in [0, 1]");
}

std::array<double, 4> alpha_angle_spectrum(double a1, double a2, double a3) {
  const double c1 = std::cos(a1) * std::cos(a1);
  const double s1 = 1.0 - c1;
  const double c2 = std::cos(a2) * std::cos(a2);
  const double c3 = std::cos(a3) * std::cos(a3);
  return {c1 * c2, c1 * (1.0 - c2), s1 * c3, s1 * (1.0 - c3)};
}

Matrix4c haar_unitary(Rng& rng) {
  Matrix4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cd(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix4c> qr(g);
  Matrix4c q = qr.householderQ();
  const Matrix4c& r = qr.matrixQR();
  for (int j = 0; j < 4; ++j) {
    const double mag = std::abs(r(j, j));
    const cd phase = mag > 0.0 ? r(j, j) / mag : cd(1.0);
    q.col(j) *= phase;
  }
  return q;
}

namespace {

enum Stream : std::uint32_t { kStateStream = 1, kPureStream = 2, kLocalStream = 3 };

std::array<double, 4> draw_spectrum(SpectrumMode mode, Rng& rng) {
  if (mode == SpectrumMode::AlphaAngles) {
    const double h = std::numbers::pi / 2;
    const double a1 = rng.uniform(0.0, h);
    const double a2 = rng.uniform(0.0, h);
    const double a3 = rng.uniform(0.0, h);
    return alpha_angle_spectrum(a1, a2, a3);
  }
  // Normalized exponentials are uniform on the simplex.
  std::array<double, 4> w{};
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(rng.uniform_open_left());
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

Matrix2c haar_unitary2(Rng& rng) {
  Matrix2c g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cd(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix2c> qr(g);
  Matrix2c q = qr.householderQ();
  const Matrix2c& r = qr.matrixQR();
  for (int j = 0; j < 2; ++j) {
    const double mag = std::abs(r(j, j));
    q.col(j) *= mag > 0.0 ? r(j, j) / mag : cd(1.0);
  }
  return q;
}

}  // namespace

DensityMatrix random_state(const RandomSpec& spec, std::size_t index) {
  if (index >= spec.count) throw InvalidArgument("random_state index out of range");
  Rng rng(spec.seed, index, kStateStream);

  // Mixture parameters are drawn first so the stream layout is fixed.
  double r = 0.0, theta = 0.0, delta = 1.0;
  if (spec.mix_delta_max > 0.0) {
    r = rng.uniform();
    theta = rng.uniform(0.0, std::numbers::pi / 2);
    delta = rng.uniform(0.0, spec.mix_delta_max);
  }

  const auto spectrum = draw_spectrum(spec.spectrum_mode, rng);
  const Matrix4c u = haar_unitary(rng);
  Eigen::Vector4d d(spectrum[0], spectrum[1], spectrum[2], spectrum[3]);
  Matrix4c m = u * d.cast<cd>().asDiagonal() * u.adjoint();

  if (spec.mix_delta_max > 0.0) {
    m = (1.0 - delta) * make_ansatz({r, theta}).matrix() + delta * m;
  }
  return DensityMatrix::trusted(m);
}

DensityMatrix random_pure_state(std::uint64_t seed, std::size_t index) {
  Rng rng(seed, index, kPureStream);
  Eigen::Vector4cd ket;
  for (int i = 0; i < 4; ++i) ket(i) = cd(rng.normal(), rng.normal());
  return DensityMatrix::pure(ket);
}

Matrix4c random_local_unitary(std::uint64_t seed, std::size_t index) {
  Rng rng(seed, index, kLocalStream);
  const Matrix2c ua = haar_unitary2(rng);
  const Matrix2c ub = haar_unitary2(rng);
  return detail::kron(ua, ub);
}

}  // namespace esdlab
