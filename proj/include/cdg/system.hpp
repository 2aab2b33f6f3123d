// cdg/system.hpp — one-stop assembly of a runnable gate system: circuit
// parameters, eigenfrequencies, model terms, computational basis, frame
// rotation, and the base pulse program. Immutable after construction and
// shareable across threads (actions are created per use).
#pragma once

#include <memory>
#include <string>

#include "cdg/basis.hpp"
#include "cdg/circuit.hpp"
#include "cdg/propagator.hpp"
#include "cdg/rwa.hpp"
#include "cdg/staticmodel.hpp"

namespace cdg {

enum class ModelKind { circuit, rwa, staticmodel };

std::string to_string(ModelKind m);
ModelKind model_kind_from_string(const std::string& name);

// Default circuit design point: ω_1/2π = 10 GHz, ω_2/2π = 11 GHz,
// E_Cj/2π = 300 MHz, θ_0 = π/4, N = 5 junctions, g/2π = 10 MHz target.
CircuitParams default_circuit_params();

struct SystemOptions {
  ModelKind model = ModelKind::rwa;
  int truncation = 12;       // max Fock index per mode; dim = truncation + 1
  double dt = 0.0;           // integrator step (s); 0 → model default
  double P_over_K = 4.0;     // pump working point (≈4 photons per cat)
  double trim_p1 = 0.0;      // pump-frequency trims (rad/s), default none
  double trim_p2 = 0.0;
  double basis_max_leakage = 1e-2;
  double norm_tol = 1e-6;
  int N_f = 2;               // envelope frequency components per waveform
};

struct GateSystem {
  ModelKind model = ModelKind::rwa;
  int dim_per_mode = 0;
  SystemOptions options;
  CircuitParams circuit;
  EigenFrequencies ef;
  RwaParams rwa;
  NormalModes modes;
  BModeParams bmode;
  ComputationalBasis basis;
  FrameRotation frame;
  IntegratorSettings settings;
  PulseProgram base_program;  // pumps + tone frequencies; no gate waveform

  std::shared_ptr<const CircuitTerms> circuit_terms;  // model == circuit
  std::shared_ptr<const RwaTerms> rwa_terms;          // model == rwa
  std::shared_ptr<const StaticModelTerms> static_terms;

  // Complete program: base pumps with the gate waveform filled in.
  // Vectors shorter than N_f are zero-padded; longer ones set N_f.
  PulseProgram program_for(double T_g, const std::vector<double>& A,
                           const std::vector<double>& B,
                           const std::vector<double>& C, bool enable_sta,
                           bool enable_cancellation) const;

  HamAction action(const PulseProgram& program) const;

  // Measurement rotation at gate time T_g for this model's frame.
  Mat measurement_W(double T_g) const;

  // Propagate the four basis states and score the gate.
  GateMatrix gate(const PulseProgram& program) const;
};

GateSystem make_gate_system(const CircuitParams& circuit, const SystemOptions& opt);

// Cross-model check: propagate `initial` under the lab-frame circuit model
// and the RWA model with the same program, rotate the circuit state into
// the rotating frame with exp(+i(ω̃_1 n_1 + ω̃_2 n_2)T_g), and return the
// squared overlap. dt values ≤ 0 select the per-model defaults.
double rwa_vs_circuit_overlap(const CircuitParams& circuit, int dim_per_mode,
                              const PulseProgram& program, const Vec& initial,
                              double dt_circuit = 0.0, double dt_rwa = 0.0);

}  // namespace cdg
