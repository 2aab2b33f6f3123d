// cdg/pulse.hpp — gate-pulse program: pump tones, gate drive envelopes, and
// the cancellation-term waveform.
#pragma once

#include <vector>

#include "cdg/units.hpp"

namespace cdg {

// Complete drive schedule for one gate run.
//
// Envelope conventions (t in [0, T_g], n = 1..N_f):
//   δ_g(t)  = Σ_n (A_n/2)·(1 − cos(2πnt/T_g))        main gate pulse
//   δ_g′(t) = Σ_n  B_n·n·sin(2πnt/T_g)               counterdiabatic quadrature
//   θ_c(t)  = Σ_n (C_n/2)·(1 − cos(2πnt/T_g))        cancellation angle (KPO1)
// All three vanish at t = 0 and t = T_g by construction. δ_g′ is used only
// when enable_sta is set, θ_c only when enable_cancellation is set.
struct PulseProgram {
  double delta_1 = 0.0;       // pump amplitude, KPO1 (rad)
  double delta_2 = 0.0;       // pump amplitude, KPO2 (rad)
  double omega_p1 = 0.0;      // pump frequency incl. trim (rad/s)
  double omega_p2 = 0.0;      // pump frequency incl. trim (rad/s)
  double omega_g = 0.0;       // gate drive frequency = ω̃_1 + ω̃_2 (rad/s)
  double T_g = 0.0;           // gate time (s)
  int N_f = 2;                // frequency components per envelope
  std::vector<double> A;      // length N_f (rad)
  std::vector<double> B;      // length N_f (rad)
  std::vector<double> C;      // length N_f (rad)
  bool enable_sta = false;
  bool enable_cancellation = false;
};

// Throws std::invalid_argument unless T_g > 0 and A, B, C all have length N_f.
void validate(const PulseProgram& p);

// Gate-pulse envelope δ_g(t) in radians.
double delta_g(double t, const PulseProgram& p);

// Counterdiabatic envelope δ_g′(t) in radians; zero when enable_sta is off.
double delta_g_prime(double t, const PulseProgram& p);

// Cancellation angle θ_c(t) in radians; zero when enable_cancellation is off.
double theta_c(double t, const PulseProgram& p);

}  // namespace cdg
