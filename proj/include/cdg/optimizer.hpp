// cdg/optimizer.hpp — bound-constrained quasi-Newton pulse optimization with
// parallel finite-difference gradients, cancellation-waveform seeding, and
// gate-time sweeps.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdg/system.hpp"

namespace cdg {

struct OptimizeFlags {
  bool sta = false;
  bool cancellation = false;
};

struct OptimizeSettings {
  int max_iterations = 200;
  double fd_step = 1e-4;         // rad, central differences
  double bound = 0.5;            // |A_n|,|B_n|,|C_n| ≤ bound (rad)
  double improvement_tol = 1e-6; // stop when best infidelity improves less…
  int improvement_window = 3;    // …than this over this many iterations
  int lbfgs_memory = 6;
  int workers = 1;               // parallel finite-difference evaluations
  int coarse_scan_points = 5;    // cold-start 1-D scan for A_1
};

struct OptimizationRecord {
  double T_g = 0.0;  // seconds
  OptimizeFlags flags;
  std::string model;
  std::vector<double> A, B, C;  // radians, length N_f
  double fidelity = 0.0;
  std::vector<double> infidelity_history;  // best value after each iteration
  long objective_evaluations = 0;
  double wall_time_s = 0.0;
  bool converged = false;
  std::string status = "ok";
};

// Active coefficient blocks: [A] always; [B] when flags.sta; [C] when
// flags.cancellation. Vector length is therefore N_f·(1 + sta + cancellation).
int coefficient_count(const GateSystem& system, OptimizeFlags flags);
PulseProgram program_from_coefficients(const GateSystem& system,
                                       const std::vector<double>& coeffs,
                                       double T_g, OptimizeFlags flags);

// Infidelity 1 − F̄ of the gate the coefficients produce. Deterministic for
// fixed inputs. Propagation failures propagate as PropagationError — never
// encoded as a large objective value.
double objective(const GateSystem& system, const std::vector<double>& coeffs,
                 double T_g, OptimizeFlags flags);

// Analytic cold-start estimate of A_1: the fundamental raised-cosine
// amplitude whose integrated conditional-phase rate reaches π/2 at T_g.
double analytic_gate_amplitude(const RwaParams& rwa, const BModeParams& bmode,
                               double T_g);

// Least-squares projection of the predicted AC-Zeeman compensation angle
//   θ_c(t) = (p_g(t)² + p_g′(t)²)/(2·Δ₁₂·conv_1·tanθ_0)
// onto the raised-cosine waveform basis; the optimizer's starting C.
std::vector<double> seed_cancellation(const std::vector<double>& A,
                                      const std::vector<double>& B, double T_g,
                                      const RwaParams& rwa, int N_f,
                                      bool sta_enabled);

// Bound-constrained limited-memory BFGS from `init` (or the documented
// cold start when absent). Returns the best iterate; non-convergence within
// max_iterations returns best-so-far with converged=false, never an error.
OptimizationRecord optimize_pulse(const GateSystem& system, double T_g,
                                  OptimizeFlags flags,
                                  const OptimizeSettings& settings,
                                  const std::optional<std::vector<double>>& init =
                                      std::nullopt);

// Optimize every (T_g, flags) cell, warm-starting along decreasing T_g
// within each flag configuration. Per-cell failures are recorded in the
// cell's status and the sweep continues. Records are returned grouped by
// flag set, in the order of `flag_sets`, each group following the order of
// `T_list`.
std::vector<OptimizationRecord> sweep_gate_times(
    const GateSystem& system, const std::vector<double>& T_list,
    const std::vector<OptimizeFlags>& flag_sets, const OptimizeSettings& settings);

}  // namespace cdg
