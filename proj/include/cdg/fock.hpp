// cdg/fock.hpp — truncated Fock-space operators for one KPO mode and
// two-mode tensor embeddings.
#pragma once

#include "cdg/units.hpp"

namespace cdg {

// Single-mode operator bundle for one SQUID-array KPO.
//
// The zero-point scales follow from the mode's effective Josephson and
// charging energies: phase_op = (2N E_C / E_J_eff)^{1/4} (a† + a),
// charge_op = i (E_J_eff / 32 N E_C)^{1/4} (a† − a). cos_phi_over_N is
// evaluated by exact spectral calculus (eigendecomposition of phase_op/N),
// not a Taylor series: cat amplitudes |alpha| ≈ 2 put too much weight at
// large phase for a low-order expansion.
struct FockOperators {
  int dim_per_mode = 0;
  Eigen::MatrixXcd annihilate;
  Eigen::MatrixXcd number;
  Eigen::MatrixXcd phase_op;        // φ, radians
  Eigen::MatrixXcd charge_op;       // n (Cooper pairs), Hermitian
  Eigen::MatrixXcd cos_phi_over_N;  // cos(φ/N), dimensionless
};

// Build the operator bundle. dim_per_mode ≥ 1 (dim 1 yields the trivial
// one-level space where phase_op = 0 and cos_phi_over_N = 1). Energies are
// angular frequencies and must be positive; squid_count ≥ 1.
FockOperators build_mode_operators(int dim_per_mode, double charging_energy,
                                   double josephson_energy_eff, int squid_count);

// op ⊗ I (mode_index 1) or I ⊗ op (mode_index 2) over the dim² product
// space, mode-1-major ordering: basis index = m1 * dim_per_mode + m2.
Eigen::MatrixXcd two_mode_embed(const Eigen::MatrixXcd& op, int mode_index,
                                int dim_per_mode);

}  // namespace cdg
