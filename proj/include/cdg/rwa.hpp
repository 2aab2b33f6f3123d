// cdg/rwa.hpp — rotating-frame RWA model: KPO parameters (Kerr, pump,
// drive strengths) derived from the circuit, and the time-dependent
// rotating-frame Hamiltonian used as the fast propagation path.
#pragma once

#include <memory>
#include <utility>

#include "cdg/circuit.hpp"
#include "cdg/ham_action.hpp"

namespace cdg {

// Rotating-frame model parameters. All angular frequencies.
//
// The conversion factor between a KPO-1 flux-drive angle and its
// rotating-frame strength is conv_1·tanθ_0 with conv_j = sqrt(Ẽ_Jj·E_Cj/2N):
// P_1 = conv_1·tanθ_0·δ_1, p_g(t) = conv_1·tanθ_0·δ_g(t), and likewise
// p_g′ from δ_g′; mode 2 uses conv_2. With the compensation angles applied
// the residual detunings Δ_j are zero by construction.
struct RwaParams {
  double Delta_1 = 0.0, Delta_2 = 0.0;  // residual detunings
  double K_1 = 0.0, K_2 = 0.0;          // Kerr coefficients E_Cj/N²
  double P_1 = 0.0, P_2 = 0.0;          // pump strengths
  double g = 0.0;                       // beam-splitter coupling
  double Delta_12 = 0.0;                // ω̃_1 − ω̃_2
  double conv_1 = 0.0, conv_2 = 0.0;    // sqrt(Ẽ_Jj·E_Cj/2N)
  double tan_theta0 = 0.0;
  double delta_1 = 0.0, delta_2 = 0.0;  // pump flux amplitudes (rad)

  double drive_conversion_1() const { return conv_1 * tan_theta0; }
  double drive_conversion_2() const { return conv_2 * tan_theta0; }
  double p_g(double t, const PulseProgram& pr) const {
    return drive_conversion_1() * delta_g(t, pr);
  }
  double p_g_prime(double t, const PulseProgram& pr) const {
    return drive_conversion_1() * delta_g_prime(t, pr);
  }
  // Cancellation detuning Δ_1c(t) = 2·conv_1·tanθ_0·θ_c(t) on mode 1.
  double cancellation_detuning(double t, const PulseProgram& pr) const {
    return 2.0 * drive_conversion_1() * theta_c(t, pr);
  }
};

// Pump amplitudes from the photon-number target: δ_j = P_j/(conv_j·tanθ_0)
// with P_j = P_over_K·K_j. The default target puts ~4 photons in each cat.
std::pair<double, double> kpo_targets_to_amplitudes(double P_over_K,
                                                    const CircuitParams& circuit);

// Assemble RwaParams from the derived circuit and its eigenfrequencies.
RwaParams rwa_params_from_circuit(const CircuitParams& circuit,
                                  const EigenFrequencies& ef,
                                  double P_over_K = 4.0);

// Dense Hamiltonian snapshot at time t (test/inspection path):
//   H(t) = Σ_j [Δ_j n_j − (K_j/2)a_j†²a_j² + (P_j/2)(a_j†²+a_j²)]
//        + [½(p_g − i·p_g′)e^{iΔ₁₂t} a_1†² + h.c.]
//        + [g·e^{iΔ₁₂t} a_1†a_2 + h.c.]
//        + Δ_1c(t)·n_1                      (cancellation, when enabled)
Eigen::MatrixXcd build_rwa_hamiltonian(double t, const RwaParams& rwa,
                                       const PulseProgram& program,
                                       const FockOperators& ops1,
                                       const FockOperators& ops2);

// Precomputed sparse terms of the RWA Hamiltonian for fast propagation.
// H_0 is the drives-off Kerr+pump part recentered by +Σ_j P_j²/2K_j·I so the
// cat manifold sits near zero energy (the shift is a global phase).
struct RwaTerms {
  int dim_per_mode = 0;
  SpMat H_0;
  SpMat G_plus, G_minus;  // a_1†², a_1²
  SpMat C_plus, C_minus;  // a_1†a_2, a_1a_2†
  SpMat N_1;              // a_1†a_1
  RwaParams prm;

  // Largest integration step that still resolves the Δ₁₂ beat (≥ 40 steps
  // per period).
  double max_dt() const;
  HamAction action(const PulseProgram& program) const;
};

RwaTerms build_rwa_terms(const RwaParams& rwa, int dim_per_mode);

}  // namespace cdg
