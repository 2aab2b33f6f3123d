// cdg/basis.hpp — hybridized normal modes, b-mode KPO parameters, cat-state
// construction, and the four two-qubit computational basis states expressed
// in the bare-mode Fock space.
#pragma once

#include "cdg/rwa.hpp"

namespace cdg {

// Normal modes of the linear coupled-KPO block [[ω̃_1, g], [g, ω̃_2]]:
// ω_± = (ω̃_1+ω̃_2 ± sqrt(Δ₁₂²+4g²))/2, with b_1 ↔ ω_−, b_2 ↔ ω_+.
// U_tilde columns are the normalized eigenvectors (−g, ω̃_1−ω_∓)ᵀ, so
// a_j = Σ_k U_tilde(j,k)·b_k.
struct NormalModes {
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  Eigen::Matrix2d U_tilde;
};

NormalModes normal_modes(double omega_1, double omega_2, double g);

// KPO parameters transformed to the b-modes:
//   K_jb = K_1·Ũ_{1j}⁴ + K_2·Ũ_{2j}⁴,  K_12b = 2(K_1Ũ_{11}²Ũ_{12}² + K_2Ũ_{21}²Ũ_{22}²),
//   P_jb = P_j·Ũ_{jj}²,  β_j = sqrt(P_jb/K_jb).
// beta_approx_j = α_j/|Ũ_jj| is the first-order shortcut, reported for
// comparison; beta_j is the exact ratio and is what the basis uses.
struct BModeParams {
  double K_1b = 0.0, K_2b = 0.0, K_12b = 0.0;
  double P_1b = 0.0, P_2b = 0.0;
  double beta_1 = 0.0, beta_2 = 0.0;
  double beta_approx_1 = 0.0, beta_approx_2 = 0.0;
};

BModeParams b_mode_params(const NormalModes& modes, const RwaParams& rwa);

// Truncated coherent state: amplitudes e^{−|α|²/2}α^m/sqrt(m!), renormalized
// after truncation. Throws std::invalid_argument when the pre-normalization
// leakage 1 − Σ|c_m|² exceeds max_leakage.
Vec coherent_state(cxd alpha, int dim, double max_leakage = 1e-6);

// The four computational basis states |00⟩,|01⟩,|10⟩,|11⟩ (columns, in that
// order) built from b-mode cats and back-transformed to bare-mode coherent
// products, plus their Gram matrix. The states are near- but not exactly
// orthogonal; construction aborts (std::runtime_error) when the Gram matrix
// deviates from identity by more than 0.05 in any entry.
//
// max_leakage is forwarded to the underlying coherent states; production
// truncations around 12 photons carry per-coherent-state leakage of order
// 1e−4 (renormalized away), so the default here is looser than the
// coherent_state default.
struct ComputationalBasis {
  int dim_per_mode = 0;
  Mat states;                // dim² × 4
  Eigen::Matrix4cd gram;     // statesᴴ·states
  double max_gram_deviation = 0.0;
};

ComputationalBasis computational_basis(const BModeParams& bparams,
                                       const NormalModes& modes, int dim,
                                       double max_leakage = 1e-2);

}  // namespace cdg
