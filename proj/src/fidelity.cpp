// cdg/fidelity.cpp — average gate fidelity implementation.
#include "cdg/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

Eigen::Matrix4cd rzz_ideal(double theta_zz) {
  Eigen::Matrix4cd R = Eigen::Matrix4cd::Zero();
  const cxd ph = std::exp(cxd(0.0, theta_zz));
  R(0, 0) = 1.0;
  R(1, 1) = ph;
  R(2, 2) = ph;
  R(3, 3) = 1.0;
  return R;
}

IdealGate make_ideal_gate(double theta_zz) {
  IdealGate g;
  g.angle = theta_zz;
  g.matrix = rzz_ideal(theta_zz);
  return g;
}

double average_gate_fidelity(const Eigen::Matrix4cd& ideal,
                             const Eigen::Matrix4cd& U) {
  const cxd tr_ru = (ideal.adjoint() * U).trace();
  const double tr_uu = (U * U.adjoint()).trace().real();
  const double f = (std::norm(tr_ru) + tr_uu) / 20.0;
  if (!std::isfinite(f))
    throw std::runtime_error("average_gate_fidelity: non-finite gate matrix");
  if (f > 1.0 + 1e-6)
    throw std::runtime_error(
        "average_gate_fidelity: value above 1 — basis normalization fault upstream");
  return f;
}

double average_gate_fidelity(const IdealGate& ideal, const Eigen::Matrix4cd& U) {
  return average_gate_fidelity(ideal.matrix, U);
}

double best_fit_conditional_phase(const Eigen::Matrix4cd& U) {
  // tr(R(θ)†U) = (U00 + U33) + e^{−iθ}(U11 + U22); the modulus is maximal at
  // θ = arg[(U11+U22)·conj(U00+U33)].
  const cxd c0 = U(0, 0) + U(3, 3);
  const cxd c1 = U(1, 1) + U(2, 2);
  return std::arg(c1 * std::conj(c0));
}

}  // namespace cdg
