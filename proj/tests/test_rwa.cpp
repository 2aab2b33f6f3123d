// Tests for the rotating-frame model: parameter assembly, Hermiticity,
// sparse/dense consistency, and physical invariants of the KPO dynamics.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cdg/basis.hpp>
#include <cdg/propagator.hpp>
#include <cdg/rwa.hpp>
#include <cdg/system.hpp>

#include <algorithm>
#include <vector>

using namespace cdg;

namespace {

FockOperators ladder_ops(int d) {
  Mat a = Mat::Zero(d, d);
  for (int m = 1; m < d; ++m) a(m - 1, m) = std::sqrt(double(m));
  FockOperators ops;
  ops.dim_per_mode = d;
  ops.annihilate = a;
  ops.number = (a.adjoint() * a).eval();
  return ops;
}

PulseProgram drive_program(double T_g, std::vector<double> A,
                           std::vector<double> B, std::vector<double> C) {
  PulseProgram p;
  p.T_g = T_g;
  p.N_f = 2;
  p.A = std::move(A);
  p.B = std::move(B);
  p.C = std::move(C);
  p.enable_sta = true;
  p.enable_cancellation = true;
  return p;
}

}  // namespace

TEST_CASE("parameter assembly from the default circuit") {
  const CircuitParams c = default_circuit_params();
  const EigenFrequencies ef = eigenfrequencies(c, 13);
  const RwaParams r = rwa_params_from_circuit(c, ef, 4.0);

  CHECK(r.K_1 == doctest::Approx(hz_to_angular(12e6)).epsilon(1e-12));
  CHECK(r.K_2 == doctest::Approx(hz_to_angular(12e6)).epsilon(1e-12));
  CHECK(r.P_1 == doctest::Approx(4.0 * r.K_1).epsilon(1e-12));
  CHECK(r.P_2 == doctest::Approx(4.0 * r.K_2).epsilon(1e-12));
  CHECK(r.g == doctest::Approx(hz_to_angular(10e6)).epsilon(1e-9));
  CHECK(r.Delta_12 == ef.Delta_12);
  CHECK(r.Delta_1 == 0.0);
  CHECK(r.Delta_2 == 0.0);
  CHECK(r.tan_theta0 == doctest::Approx(1.0).epsilon(1e-12));  // theta_0 = pi/4

  // pump amplitude round-trip: delta_j * conv_j * tan(theta_0) = P_j
  CHECK(r.delta_1 * r.drive_conversion_1() == doctest::Approx(r.P_1).epsilon(1e-12));
  CHECK(r.delta_2 * r.drive_conversion_2() == doctest::Approx(r.P_2).epsilon(1e-12));
}

TEST_CASE("Hamiltonian is Hermitian with every drive active") {
  const CircuitParams c = default_circuit_params();
  const EigenFrequencies ef = eigenfrequencies(c, 13);
  const RwaParams r = rwa_params_from_circuit(c, ef, 4.0);
  const FockOperators ops = ladder_ops(7);
  const PulseProgram prog =
      drive_program(20e-9, {0.08, -0.02}, {0.03, 0.01}, {-0.02, 0.01});
  for (double t : {0.0, 3.1e-9, 8.9e-9, 17.2e-9}) {
    const Mat H = build_rwa_hamiltonian(t, r, prog, ops, ops);
    CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() <
          1e-12 * H.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("sparse action equals the dense Hamiltonian minus the recentering") {
  const CircuitParams c = default_circuit_params();
  const EigenFrequencies ef = eigenfrequencies(c, 13);
  const RwaParams r = rwa_params_from_circuit(c, ef, 4.0);
  const int d = 8;
  const FockOperators ops = ladder_ops(d);
  const RwaTerms terms = build_rwa_terms(r, d);
  const PulseProgram prog =
      drive_program(20e-9, {0.08, -0.02}, {0.03, 0.01}, {-0.02, 0.01});

  const double shift =
      r.P_1 * r.P_1 / (2.0 * r.K_1) + r.P_2 * r.P_2 / (2.0 * r.K_2);

  Mat v = Mat::Zero(d * d, 1);
  for (int i = 0; i < d * d; ++i)
    v(i, 0) = cxd(std::sin(0.4 * i + 0.2), std::cos(1.1 * i));
  v /= v.norm();

  const HamAction act = terms.action(prog);
  for (double t : {0.0, 2.7e-9, 12.5e-9}) {
    const Mat H = build_rwa_hamiltonian(t, r, prog, ops, ops);
    const Mat expect = H * v - shift * v;
    Mat out(d * d, 1);
    act(t, v, out);
    CHECK((out - expect).cwiseAbs().maxCoeff() <
          1e-12 * expect.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("Kerr-pump block has a near-degenerate coherent doublet at zero") {
  // Single recentered mode: -(K/2)(a+2 - b^2)(a^2 - b^2) with b^2 = P/K
  // annihilates both |b> and |-b>, so the spectrum must contain two
  // eigenvalues at zero (up to exponentially small truncation edge effects)
  // whose eigenspace carries the coherent states.
  const CircuitParams c = default_circuit_params();
  const EigenFrequencies ef = eigenfrequencies(c, 13);
  const RwaParams r = rwa_params_from_circuit(c, ef, 4.0);
  const int d = 26;

  Mat a = Mat::Zero(d, d);
  for (int m = 1; m < d; ++m) a(m - 1, m) = std::sqrt(double(m));
  const Mat ad = a.adjoint();
  Mat h = -0.5 * r.K_1 * (ad * ad * a * a) + 0.5 * r.P_1 * (ad * ad + a * a);
  h -= (r.P_1 * r.P_1 / (2.0 * r.K_1)) * Mat::Identity(d, d);

  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  std::vector<double> mags(d);
  for (int i = 0; i < d; ++i) mags[i] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] < 1e-4 * r.K_1);
  CHECK(mags[1] < 1e-4 * r.K_1);
  CHECK(mags[2] > 0.5 * r.K_1);  // the rest of the spectrum is far away

  // |b> lies in the span of the two zero-eigenvalue eigenvectors.
  const double beta = std::sqrt(r.P_1 / r.K_1);
  const Vec coh = coherent_state(beta, d);
  double inside = 0.0;
  for (int i = 0; i < d; ++i)
    if (std::abs(es.eigenvalues()(i)) < 1e-4 * r.K_1)
      inside += std::norm((es.eigenvectors().col(i).adjoint() * coh)(0, 0));
  CHECK(inside > 1.0 - 1e-8);
}

TEST_CASE("uncoupled drives-off cat product is stationary") {
  // With g = 0 and no gate drive, |beta_1> x |beta_2> is an eigenstate of
  // the recentered Hamiltonian with eigenvalue zero, so the overlap with the
  // initial state must stay at 1 (not merely up to a phase).
  const CircuitParams c = default_circuit_params();
  const EigenFrequencies ef = eigenfrequencies(c, 13);
  RwaParams r = rwa_params_from_circuit(c, ef, 4.0);
  r.g = 0.0;
  const int d = 26;
  const RwaTerms terms = build_rwa_terms(r, d);

  const Vec coh1 = coherent_state(std::sqrt(r.P_1 / r.K_1), d);
  const Vec coh2 = coherent_state(std::sqrt(r.P_2 / r.K_2), d);
  Mat psi = Mat::Zero(d * d, 1);
  for (int m1 = 0; m1 < d; ++m1)
    for (int m2 = 0; m2 < d; ++m2) psi(m1 * d + m2, 0) = coh1(m1) * coh2(m2);

  PulseProgram prog = drive_program(5e-9, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
  const Mat psi0 = psi;
  IntegratorSettings s;
  s.dt = 5e-12;
  evolve_block(psi, terms.action(prog), 0.0, prog.T_g, s);
  const cxd ip = (psi0.col(0).adjoint() * psi.col(0))(0, 0);
  CHECK(ip.real() > 1.0 - 1e-6);
  CHECK(std::abs(ip.imag()) < 1e-6);
}

TEST_CASE("gate drive conserves mode-1 photon parity when g = 0") {
  // Every remaining term moves mode-1 photons in pairs, so the parity
  // expectation of an even cat must stay 1 under a strong gate drive.
  const CircuitParams c = default_circuit_params();
  const EigenFrequencies ef = eigenfrequencies(c, 13);
  RwaParams r = rwa_params_from_circuit(c, ef, 4.0);
  r.g = 0.0;
  // The strong drive inflates the cat, so give it Fock headroom well past
  // the production truncation and a finer step; the default norm tolerance
  // stays active as part of the check.
  const int d = 26;
  const RwaTerms terms = build_rwa_terms(r, d);

  const double beta = std::sqrt(r.P_1 / r.K_1);
  Vec even = coherent_state(beta, d) + coherent_state(-beta, d);
  even /= even.norm();
  const Vec coh2 = coherent_state(std::sqrt(r.P_2 / r.K_2), d);
  Mat psi = Mat::Zero(d * d, 1);
  for (int m1 = 0; m1 < d; ++m1)
    for (int m2 = 0; m2 < d; ++m2) psi(m1 * d + m2, 0) = even(m1) * coh2(m2);

  const PulseProgram prog =
      drive_program(10e-9, {0.10, 0.02}, {0.02, 0.0}, {0.01, 0.0});
  IntegratorSettings s;
  s.dt = 2e-12;
  evolve_block(psi, terms.action(prog), 0.0, prog.T_g, s);

  double parity = 0.0;
  for (int m1 = 0; m1 < d; ++m1) {
    double marg = 0.0;
    for (int m2 = 0; m2 < d; ++m2) marg += std::norm(psi(m1 * d + m2, 0));
    parity += (m1 % 2 == 0 ? marg : -marg);
  }
  CHECK(parity == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("beat-resolution step bound") {
  const CircuitParams c = default_circuit_params();
  const EigenFrequencies ef = eigenfrequencies(c, 13);
  const RwaParams r = rwa_params_from_circuit(c, ef, 4.0);
  const RwaTerms terms = build_rwa_terms(r, 8);
  const double period = two_pi / std::abs(r.Delta_12);
  CHECK(terms.max_dt() == doctest::Approx(period / 40.0).epsilon(1e-12));
  CHECK(kRwaDefaultDt < terms.max_dt());
}
