// cdg/pulse.cpp — envelope evaluation.
#include "cdg/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

void validate(const PulseProgram& p) {
  if (!(p.T_g > 0.0))
    throw std::invalid_argument("PulseProgram: T_g must be positive");
  if (p.N_f < 1)
    throw std::invalid_argument("PulseProgram: N_f must be >= 1");
  const auto nf = static_cast<size_t>(p.N_f);
  if (p.A.size() != nf || p.B.size() != nf || p.C.size() != nf)
    throw std::invalid_argument("PulseProgram: A, B, C must each have length N_f");
}

double delta_g(double t, const PulseProgram& p) {
  double v = 0.0;
  const double w = two_pi * t / p.T_g;
  for (int n = 1; n <= p.N_f; ++n)
    v += 0.5 * p.A[n - 1] * (1.0 - std::cos(n * w));
  return v;
}

double delta_g_prime(double t, const PulseProgram& p) {
  if (!p.enable_sta) return 0.0;
  double v = 0.0;
  const double w = two_pi * t / p.T_g;
  for (int n = 1; n <= p.N_f; ++n)
    v += p.B[n - 1] * n * std::sin(n * w);
  return v;
}

double theta_c(double t, const PulseProgram& p) {
  if (!p.enable_cancellation) return 0.0;
  double v = 0.0;
  const double w = two_pi * t / p.T_g;
  for (int n = 1; n <= p.N_f; ++n)
    v += 0.5 * p.C[n - 1] * (1.0 - std::cos(n * w));
  return v;
}

}  // namespace cdg
