// cdg/fidelity.hpp — ideal conditional-phase gate and the average gate
// fidelity of a projected 4×4 gate matrix.
#pragma once

#include "cdg/units.hpp"

namespace cdg {

// Ideal conditional-phase gate diag(1, e^{iθ}, e^{iθ}, 1) in the
// {00, 01, 10, 11} computational order; θ = π/2 is the gate targeted here
// (equivalent to R_zz(π/2) up to single-qubit Z rotations and global phase).
struct IdealGate {
  double angle = 0.0;
  Eigen::Matrix4cd matrix;
};

IdealGate make_ideal_gate(double theta_zz = two_pi / 4.0);

// Matrix of the ideal gate alone.
Eigen::Matrix4cd rzz_ideal(double theta_zz = two_pi / 4.0);

// Average gate fidelity over pure two-qubit states,
//   F̄ = (|tr(R†U)|² + tr(UU†)) / 20.
// Valid for U projected onto the computational subspace; leakage makes
// tr(UU†) < 4 and is penalized. Anchors: U = R gives 1, U = I₄ gives 0.6,
// U = R† gives 0.2. Values above 1 + 1e−6 indicate an upstream basis
// normalization fault and throw std::runtime_error.
double average_gate_fidelity(const Eigen::Matrix4cd& ideal,
                             const Eigen::Matrix4cd& U);
double average_gate_fidelity(const IdealGate& ideal, const Eigen::Matrix4cd& U);

// The conditional phase θ maximizing F̄(R(θ), U) — diagnostic that separates
// a mis-calibrated pulse area (wrong θ, fixable by amplitude) from leakage.
double best_fit_conditional_phase(const Eigen::Matrix4cd& U);

}  // namespace cdg
