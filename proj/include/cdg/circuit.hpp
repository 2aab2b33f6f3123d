// cdg/circuit.hpp — lab-frame superconducting-circuit model: parameter
// derivation, flux-drive angles, and the decomposed time-dependent
// Hamiltonian of the two flux-pumped SQUID-array KPOs with capacitive
// coupling.
#pragma once

#include "cdg/fock.hpp"
#include "cdg/ham_action.hpp"
#include "cdg/pulse.hpp"

namespace cdg {

// Full physical parameter set of the two-KPO circuit. All energies are
// angular frequencies (rad/s); theta_0 is the DC flux angle in radians.
struct CircuitParams {
  double omega_1 = 0.0, omega_2 = 0.0;     // bare mode frequencies
  double E_C1 = 0.0, E_C2 = 0.0;           // shunt charging energies
  double E_Ccpl = 0.0;                     // coupling-capacitor charging energy
  double E_J1 = 0.0, E_J2 = 0.0;           // Josephson energies
  double E_Jeff1 = 0.0, E_Jeff2 = 0.0;     // E_Jj·cos(theta_0)
  double theta_0 = 0.0;
  int squid_count = 0;                     // N junctions per array
  double g = 0.0;                          // derived capacitive coupling
};

// Solve the design equations for a target coupling strength: effective
// Josephson energies from omega_j² = 8 E_Cj E_Jeffj / N, bare E_Jj from the
// DC flux angle, and the coupling capacitor from the target g. Throws
// std::invalid_argument when no positive-capacitor solution exists (g_target
// too large or zero).
CircuitParams derive_circuit_params(double omega_1, double omega_2, double E_C1,
                                    double E_C2, double theta_0, int squid_count,
                                    double g_target);

// Recompute g from the stored parameters (round-trip self-consistency).
double coupling_from_params(const CircuitParams& params);

// Total time-dependent angle subtracted from theta_0 inside the mode-j
// junction cosine: pump tone + (mode 1 only) gate tones, plus the static
// compensation angle θ_j = (δ_j² + δ_g² + δ_g′²)/(4 tanθ_0) and (mode 1
// only) the cancellation angle θ_c(t).
double flux_angle(double t, int mode, const PulseProgram& program,
                  const CircuitParams& params);

// Fixed matrices of the decomposition
//   H(t) = H_static + f_1(t)·D_1 + f_2(t)·D_2,
// where D_j is the embedded junction operator N·E_Jj·cos(φ_j/N) with its
// identity component removed (the dropped component is a state-independent
// global phase), f_j(t) = cosθ_0 − cos(θ_0 − flux_angle(t, j)), and
// H_static is the drives-off Hamiltonian shifted by −energy_offset·I so the
// computational-basis energies sit near zero (integrator conditioning; the
// shift is another pure global phase, recorded here).
struct CircuitTerms {
  int dim_per_mode = 0;
  SpMat H_static;            // recentered, sparse
  SpMat D_1, D_2;            // trace-removed drive matrices, sparse
  double d1_mean = 0.0, d2_mean = 0.0;  // removed means, tr(D_j)/dim²
  double energy_offset = 0.0;           // subtracted from H_static
  double cos_theta0 = 0.0;
  CircuitParams prm;

  // Largest integration step that still resolves the fastest drive tone
  // (≥ 40 steps per period of the higher pump frequency). The production
  // default is far below this bound; see the propagator module.
  double max_dt(const PulseProgram& program) const;
  // out = H(t)·in for a block of state columns; not thread-safe, build one
  // per concurrent propagation. The CircuitTerms object must outlive it.
  HamAction action(const PulseProgram& program) const;
};

// Assemble the decomposition at the given per-mode operators. energy_offset
// defaults to the mean drives-off energy of the four computational-basis
// states when `offset_hint` is NaN (computed from the exact ground manifold
// is the caller's job; the hint path lets system setup reuse its basis).
CircuitTerms hamiltonian_terms(const CircuitParams& params, const FockOperators& ops1,
                               const FockOperators& ops2, double offset_hint);

// Scalar drive coefficient f_j(t) of the decomposition above.
double drive_coefficient(double t, int mode, const PulseProgram& program,
                         const CircuitParams& params);

// Dense drives-off Hamiltonian with NO recentering (eigenfrequency input).
Eigen::MatrixXcd static_circuit_hamiltonian(const CircuitParams& params,
                                            const FockOperators& ops1,
                                            const FockOperators& ops2);

// Transition energies of the drives-off circuit. Diagonalizes the static H
// at the operator truncation, identifies the single-excitation eigenstates
// by maximal overlap with |1,0⟩ and |0,1⟩, and returns their energies above
// the ground state. Throws std::runtime_error if either overlap is below
// 0.5 (truncation or parameter fault).
struct EigenFrequencies {
  double omega_tilde_1 = 0.0;
  double omega_tilde_2 = 0.0;
  double Delta_12 = 0.0;  // ω̃_1 − ω̃_2
};
EigenFrequencies eigenfrequencies(const CircuitParams& params, int dim_per_mode);

// Shared identification helper: given any static two-mode Hamiltonian,
// return (E_{|1,0⟩-like} − E_ground, E_{|0,1⟩-like} − E_ground).
EigenFrequencies identify_mode_transitions(const Eigen::MatrixXcd& H_static,
                                           int dim_per_mode);

// Anharmonicity crosscheck: numerical per-mode anharmonicity
// (E_{0→1} − E_{1→2}) of the drives-off circuit vs the transmon-limit Kerr
// coefficient K_j = E_Cj/N².
struct AnharmonicityReport {
  double anharm_1 = 0.0, anharm_2 = 0.0;   // numerical, rad/s
  double K_1 = 0.0, K_2 = 0.0;             // transmon-limit, rad/s
  double rel_dev_1 = 0.0, rel_dev_2 = 0.0; // |anharm − K|/K
};
AnharmonicityReport crosscheck_rwa_vs_circuit(const CircuitParams& params,
                                              int dim_per_mode);

}  // namespace cdg
