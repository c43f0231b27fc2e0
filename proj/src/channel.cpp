#include "esdlab/channel.hpp"

#include "esdlab/errors.hpp"
#include "linalg.hpp"

#include <cmath>

namespace esdlab {

ChannelParams::ChannelParams(double delta, double s) : delta_(delta), s_(s) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("channel delta must lie in [0, 1]");
  if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("channel s must lie in (0, 1]");
  std::tie(s1_, s2_) = local_noise(delta, s);
}

double ChannelParams::time() const { return -std::log(s_); }

std::pair<double, double> local_noise(double delta, double s) {
  const double s1 = std::pow(s, 1.0 + delta);
  const double s2 = delta == 1.0 ? 1.0 : std::pow(s, 1.0 - delta);
  return {s1, s2};
}

DensityMatrix apply_depolarizing_local(const DensityMatrix& rho, double s1, double s2) {
  // rho' = s1 s2 rho + s2 (1-s1) I/2 x rho_B + s1 (1-s2) rho_A x I/2
  //        + (1-s1)(1-s2) I/4
  const Matrix4c& m = rho.matrix();
  const Matrix2c ra = reduced_state(rho, 1);
  const Matrix2c rb = reduced_state(rho, 2);
  const Matrix2c id = Matrix2c::Identity();
  Matrix4c out = s1 * s2 * m;
  out += s2 * (1.0 - s1) * detail::kron(id / 2.0, rb);
  out += s1 * (1.0 - s2) * detail::kron(ra, id / 2.0);
  out += (1.0 - s1) * (1.0 - s2) * Matrix4c::Identity() / 4.0;
  return DensityMatrix::trusted(out);
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, const ChannelParams& ch) {
  return apply_depolarizing_local(rho, ch.s1(), ch.s2());
}

DensityMatrix apply_depolarizing_kraus(const DensityMatrix& rho, const ChannelParams& ch) {
  auto kraus = [](double s) {
    std::array<Matrix2c, 4> k;
    k[0] = 0.5 * std::sqrt(3.0 * s + 1.0) * Matrix2c::Identity();
    for (int j = 1; j <= 3; ++j) k[j] = 0.5 * std::sqrt(1.0 - s) * detail::pauli(j);
    return k;
  };
  const auto k1 = kraus(ch.s1());
  const auto k2 = kraus(ch.s2());
  Matrix4c out = Matrix4c::Zero();
  for (const auto& a : k1) {
    for (const auto& b : k2) {
      const Matrix4c e = detail::kron(a, b);
      out += e * rho.matrix() * e.adjoint();
    }
  }
  return DensityMatrix::trusted(out);
}

void LocalFilter::validate() const {
  if (!a.allFinite() || a.norm() > 1.0 + 1e-12)
    throw InvalidArgument("filter vector must satisfy |a| <= 1");
}

Matrix2c LocalFilter::matrix() const {
  Matrix2c m = detail::pauli(0);
  for (int k = 0; k < 3; ++k) m += a(k) * detail::pauli(k + 1);
  return m;
}

FilterResult apply_filter(const DensityMatrix& rho, const LocalFilter& f) {
  f.validate();
  const Matrix2c id = Matrix2c::Identity();
  const Matrix4c op =
      f.side == Side::Qubit2 ? detail::kron(id, f.matrix()) : detail::kron(f.matrix(), id);
  const Matrix4c out = op * rho.matrix() * op.adjoint();
  const double tr = out.trace().real();
  if (!(tr > 1e-12)) throw Degenerate("filter annihilates the state");
  return {DensityMatrix::trusted(out / tr), 1.0 / tr};
}

}  // namespace esdlab
