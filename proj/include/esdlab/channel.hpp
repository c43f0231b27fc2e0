#pragma once

#include "esdlab/qstate.hpp"

#include <utility>

namespace esdlab {

// Local depolarizing noise with nonuniform coupling. The global noise
// parameter s = exp(-t) sets per-qubit parameters s1 = s^(1+delta) and
// s2 = s^(1-delta); delta = 1 leaves qubit 2 untouched.
class ChannelParams {
 public:
  // delta in [0, 1], s in (0, 1]; throws InvalidArgument otherwise.
  ChannelParams(double delta, double s);

  double delta() const noexcept { return delta_; }
  double s() const noexcept { return s_; }
  double s1() const noexcept { return s1_; }
  double s2() const noexcept { return s2_; }
  double time() const;  // -ln s

 private:
  double delta_;
  double s_;
  double s1_;
  double s2_;
};

// Per-qubit parameters for (delta, s) without constructing ChannelParams.
std::pair<double, double> local_noise(double delta, double s);

// Shrinks each local Bloch component by s_i and the correlation tensor by
// s1 s2 (closed form of the Kraus map).
DensityMatrix apply_depolarizing(const DensityMatrix& rho, const ChannelParams& ch);
// Same map from per-qubit parameters; s1 or s2 may be 1 to leave a qubit alone.
DensityMatrix apply_depolarizing_local(const DensityMatrix& rho, double s1, double s2);

// Explicit Kraus sum E0 = sqrt(3s+1)/2 I, Ej = sqrt(1-s)/2 sigma_j per qubit.
DensityMatrix apply_depolarizing_kraus(const DensityMatrix& rho, const ChannelParams& ch);

enum class Side { Qubit1, Qubit2 };

// M = I + a.sigma acting on one qubit; |a| <= 1 keeps M PSD.
struct LocalFilter {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Side side = Side::Qubit2;

  void validate() const;
  Matrix2c matrix() const;
};

struct FilterResult {
  DensityMatrix state;
  double gamma;  // 1 / tr[(M) rho (M^dag)]
};

// gamma (I x M) rho (I x M^dag) (or M x I for Side::Qubit1). Throws
// Degenerate when the filter annihilates the state.
FilterResult apply_filter(const DensityMatrix& rho, const LocalFilter& f);

}  // namespace esdlab
