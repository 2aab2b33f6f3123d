// cdg/staticmodel.hpp — effective static model: the beat-averaged
// commutator correction to the KPO Hamiltonian, the AC-Zeeman shift it
// predicts, and the dynamic verification against the RWA model.
#pragma once

#include "cdg/rwa.hpp"

namespace cdg {

// Pieces of H_stat(t) = H_KPO + [O_t, O_t†]/Δ₁₂ with
//   O_t = g·a_1†a_2 + ½(p_g(t) − i·p_g′(t))·a_1†².
// (The raising-type combination: its commutator expands to
//   g²(n_1−n_2) − g·p_g(a_1†a_2†+a_1a_2) + i·g·p_g′(a_1†a_2†−a_1a_2)
//   − (p_g²+p_g′²)(n_1+½),
// which is the closed form implemented here and cross-checked against the
// brute-force matrix commutator in the tests.)
struct StaticModelTerms {
  int dim_per_mode = 0;
  RwaParams prm;

  // Dense inspection path.
  Mat H_KPO;  // drives-off Kerr+pump of both modes, recentered like RwaTerms
  Mat O_t(double t, const PulseProgram& program) const;
  Mat commutator_over_detuning(double t, const PulseProgram& program) const;

  // Sparse propagation path.
  SpMat H_0;      // H_KPO + g²(n_1−n_2)/Δ₁₂ (the drive-independent part)
  SpMat X_plus;   // a_1†a_2† + a_1a_2
  SpMat Y_minus;  // a_1†a_2† − a_1a_2
  SpMat Z_n1;     // n_1 + ½·I
  SpMat N_1;      // n_1

  double max_dt() const;
  HamAction action(const PulseProgram& program) const;
};

// Throws std::invalid_argument when Δ₁₂ = 0 (the expansion divides by it).
StaticModelTerms build_static_terms(const RwaParams& rwa, int dim_per_mode);

// Dense H_stat(t); test/inspection path.
Mat build_static_hamiltonian(double t, const StaticModelTerms& terms,
                             const PulseProgram& program);

// Instantaneous drive-induced detuning of mode 1:
//   −(p_g(t)² + p_g′(t)²)/Δ₁₂.
// The cancellation waveform is seeded to oppose exactly this shift.
double ac_zeeman_shift(double t, const RwaParams& rwa, const PulseProgram& program);

// Propagate `initial` under both the RWA and static models over [0, T_g]
// and return the final-state overlap |⟨ψ_RWA|ψ_stat⟩|². High overlap
// justifies the beat-averaged expansion in the given drive regime.
double verify_static_vs_rwa(const Vec& initial, const PulseProgram& program,
                            const RwaParams& rwa, double T_g, int dim_per_mode,
                            double dt);

}  // namespace cdg
