// cdg/rwa.cpp — rotating-frame RWA model implementation.
#include "cdg/rwa.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

std::pair<double, double> kpo_targets_to_amplitudes(double P_over_K,
                                                    const CircuitParams& circuit) {
  if (P_over_K <= 0.0)
    throw std::invalid_argument("kpo_targets_to_amplitudes: P_over_K must be positive");
  const double tan_t0 = std::tan(circuit.theta_0);
  const double N = double(circuit.squid_count);
  auto amp = [&](double E_C, double E_Jeff) {
    const double K = E_C / (N * N);
    const double conv = std::sqrt(E_Jeff * E_C / (2.0 * N));
    return P_over_K * K / (conv * tan_t0);
  };
  return {amp(circuit.E_C1, circuit.E_Jeff1), amp(circuit.E_C2, circuit.E_Jeff2)};
}

RwaParams rwa_params_from_circuit(const CircuitParams& circuit,
                                  const EigenFrequencies& ef, double P_over_K) {
  RwaParams r;
  const double N = double(circuit.squid_count);
  r.K_1 = circuit.E_C1 / (N * N);
  r.K_2 = circuit.E_C2 / (N * N);
  r.P_1 = P_over_K * r.K_1;
  r.P_2 = P_over_K * r.K_2;
  r.g = circuit.g;
  r.Delta_12 = ef.Delta_12;
  r.conv_1 = std::sqrt(circuit.E_Jeff1 * circuit.E_C1 / (2.0 * N));
  r.conv_2 = std::sqrt(circuit.E_Jeff2 * circuit.E_C2 / (2.0 * N));
  r.tan_theta0 = std::tan(circuit.theta_0);
  auto [d1, d2] = kpo_targets_to_amplitudes(P_over_K, circuit);
  r.delta_1 = d1;
  r.delta_2 = d2;
  return r;
}

namespace {

// Single-mode Kerr + pump block: Δ·n − (K/2)a†²a² + (P/2)(a†² + a²).
Mat kpo_block(const FockOperators& ops, double Delta, double K, double P) {
  const Mat& a = ops.annihilate;
  const Mat ad = a.adjoint();
  return Delta * ops.number - 0.5 * K * (ad * ad * a * a) +
         0.5 * P * (ad * ad + a * a);
}

}  // namespace

Mat build_rwa_hamiltonian(double t, const RwaParams& rwa,
                          const PulseProgram& program, const FockOperators& ops1,
                          const FockOperators& ops2) {
  if (ops1.dim_per_mode != ops2.dim_per_mode)
    throw std::invalid_argument("build_rwa_hamiltonian: mode dimensions differ");
  const int d = ops1.dim_per_mode;
  const Mat h1 = kpo_block(ops1, rwa.Delta_1, rwa.K_1, rwa.P_1);
  const Mat h2 = kpo_block(ops2, rwa.Delta_2, rwa.K_2, rwa.P_2);
  Mat H = two_mode_embed(h1, 1, d) + two_mode_embed(h2, 2, d);

  const Mat a1 = two_mode_embed(ops1.annihilate, 1, d);
  const Mat a2 = two_mode_embed(ops2.annihilate, 2, d);
  const Mat a1d = a1.adjoint();

  const cxd phase = std::exp(cxd(0.0, rwa.Delta_12 * t));
  const cxd z_g = 0.5 * cxd(rwa.p_g(t, program), -rwa.p_g_prime(t, program)) * phase;
  const cxd z_c = rwa.g * phase;

  Mat G = a1d * a1d;
  Mat C = a1d * a2;
  H += z_g * G + std::conj(z_g) * G.adjoint();
  H += z_c * C + std::conj(z_c) * C.adjoint();
  H += rwa.cancellation_detuning(t, program) * (a1d * a1);
  return H;
}

RwaTerms build_rwa_terms(const RwaParams& rwa, int dim_per_mode) {
  if (dim_per_mode < 1)
    throw std::invalid_argument("build_rwa_terms: dim_per_mode must be >= 1");
  RwaTerms terms;
  terms.dim_per_mode = dim_per_mode;
  terms.prm = rwa;
  const int d = dim_per_mode;

  // Truncated harmonic ladder (the RWA model is already expressed in ladder
  // operators; only the dimension matters here).
  Mat a = Mat::Zero(d, d);
  for (int m = 1; m < d; ++m) a(m - 1, m) = std::sqrt(double(m));
  FockOperators ops;
  ops.dim_per_mode = d;
  ops.annihilate = a;
  ops.number = (a.adjoint() * a).eval();

  Mat h1 = kpo_block(ops, rwa.Delta_1, rwa.K_1, rwa.P_1);
  Mat h2 = kpo_block(ops, rwa.Delta_2, rwa.K_2, rwa.P_2);
  Mat H0 = two_mode_embed(h1, 1, d) + two_mode_embed(h2, 2, d);
  // Recenter so the cat manifold sits at zero energy: the single-mode
  // Kerr-pump term factors as −(K/2)(a†²−α²)(a²−α²) + P²/2K with α²=P/K,
  // so the degenerate |±α⟩ doublet has eigenvalue +P_j²/2K_j per mode.
  // The shift is a global phase and does not affect gate fidelities; it
  // keeps the integrated phase small for better step-size headroom.
  const double shift = rwa.P_1 * rwa.P_1 / (2.0 * rwa.K_1) +
                       rwa.P_2 * rwa.P_2 / (2.0 * rwa.K_2);
  H0 -= shift * Mat::Identity(d * d, d * d);

  const Mat a1 = two_mode_embed(a, 1, d);
  const Mat a2 = two_mode_embed(a, 2, d);
  const Mat a1d = a1.adjoint();

  auto sparsify = [](const Mat& m) {
    SpMat s = m.sparseView(1.0, 1e-14);
    s.makeCompressed();
    return s;
  };
  terms.H_0 = sparsify(H0);
  terms.G_plus = sparsify(a1d * a1d);
  terms.G_minus = sparsify(a1 * a1);
  terms.C_plus = sparsify(a1d * a2);
  terms.C_minus = sparsify(a1 * a2.adjoint());
  terms.N_1 = sparsify(a1d * a1);
  return terms;
}

double RwaTerms::max_dt() const {
  // Fastest explicit frequency: the Δ₁₂ phasor; the recentered H_0 spectrum
  // stays well below it at the truncations used here. Require ≥ 40 steps per
  // beat period.
  const double f = std::abs(prm.Delta_12);
  if (f <= 0.0) return 1e-3;  // static phasor; caller still limits dt.
  return two_pi / f / 40.0;
}

HamAction RwaTerms::action(const PulseProgram& program) const {
  // Captures `this` by pointer; the RwaTerms object must outlive the action.
  // Scratch buffer lives in the shared_ptr so each action instance owns its
  // own storage (one action per concurrent propagation).
  auto scratch = std::make_shared<Mat>();
  const RwaTerms* T = this;
  PulseProgram pr = program;
  return [T, pr, scratch](double t, const Mat& in, Mat& out) {
    const RwaParams& p = T->prm;
    const cxd phase = std::exp(cxd(0.0, p.Delta_12 * t));
    const cxd z_g = 0.5 * cxd(p.p_g(t, pr), -p.p_g_prime(t, pr)) * phase;
    const cxd z_c = p.g * phase;
    const double d_can = p.cancellation_detuning(t, pr);

    Mat& tmp = *scratch;
    out.noalias() = T->H_0 * in;
    tmp.noalias() = T->G_plus * in;
    out.noalias() += z_g * tmp;
    tmp.noalias() = T->G_minus * in;
    out.noalias() += std::conj(z_g) * tmp;
    tmp.noalias() = T->C_plus * in;
    out.noalias() += z_c * tmp;
    tmp.noalias() = T->C_minus * in;
    out.noalias() += std::conj(z_c) * tmp;
    if (d_can != 0.0) {
      tmp.noalias() = T->N_1 * in;
      out.noalias() += d_can * tmp;
    }
  };
}

}  // namespace cdg
