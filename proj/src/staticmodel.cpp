// cdg/staticmodel.cpp — effective static model implementation.
#include "cdg/staticmodel.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "cdg/propagator.hpp"

namespace cdg {

namespace {

Mat ladder(int d) {
  Mat a = Mat::Zero(d, d);
  for (int m = 1; m < d; ++m) a(m - 1, m) = std::sqrt(double(m));
  return a;
}

}  // namespace

StaticModelTerms build_static_terms(const RwaParams& rwa, int dim_per_mode) {
  if (dim_per_mode < 1)
    throw std::invalid_argument("build_static_terms: dim_per_mode must be >= 1");
  if (rwa.Delta_12 == 0.0)
    throw std::invalid_argument("build_static_terms: Delta_12 must be nonzero");

  StaticModelTerms t;
  t.dim_per_mode = dim_per_mode;
  t.prm = rwa;
  const int d = dim_per_mode;
  const int dim2 = d * d;

  const Mat a = ladder(d);
  const Mat n = (a.adjoint() * a).eval();
  const Mat a1 = two_mode_embed(a, 1, d);
  const Mat a2 = two_mode_embed(a, 2, d);
  const Mat n1 = two_mode_embed(n, 1, d);
  const Mat n2 = two_mode_embed(n, 2, d);

  auto kpo_block = [&](double K, double P) {
    const Mat ad = a.adjoint();
    return (-0.5 * K * (ad * ad * a * a) + 0.5 * P * (ad * ad + a * a)).eval();
  };
  t.H_KPO = two_mode_embed(kpo_block(rwa.K_1, rwa.P_1), 1, d) +
            two_mode_embed(kpo_block(rwa.K_2, rwa.P_2), 2, d);
  const double shift = rwa.P_1 * rwa.P_1 / (2.0 * rwa.K_1) +
                       rwa.P_2 * rwa.P_2 / (2.0 * rwa.K_2);
  t.H_KPO -= shift * Mat::Identity(dim2, dim2);

  auto sparsify = [](const Mat& m) {
    SpMat s = m.sparseView(1.0, 1e-14);
    s.makeCompressed();
    return s;
  };
  const Mat H0 = t.H_KPO + (rwa.g * rwa.g / rwa.Delta_12) * (n1 - n2);
  t.H_0 = sparsify(H0);
  t.X_plus = sparsify(a1.adjoint() * a2.adjoint() + a1 * a2);
  t.Y_minus = sparsify(a1.adjoint() * a2.adjoint() - a1 * a2);
  t.Z_n1 = sparsify(n1 + 0.5 * Mat::Identity(dim2, dim2));
  t.N_1 = sparsify(n1);
  return t;
}

Mat StaticModelTerms::O_t(double t, const PulseProgram& program) const {
  const int d = dim_per_mode;
  const Mat a = ladder(d);
  const Mat a1 = two_mode_embed(a, 1, d);
  const Mat a2 = two_mode_embed(a, 2, d);
  const cxd zg = 0.5 * cxd(prm.p_g(t, program), -prm.p_g_prime(t, program));
  return prm.g * (a1.adjoint() * a2) + zg * (a1.adjoint() * a1.adjoint());
}

Mat StaticModelTerms::commutator_over_detuning(double t,
                                               const PulseProgram& program) const {
  const int d = dim_per_mode;
  const int dim2 = d * d;
  const Mat a = ladder(d);
  const Mat n = (a.adjoint() * a).eval();
  const Mat a1 = two_mode_embed(a, 1, d);
  const Mat a2 = two_mode_embed(a, 2, d);
  const Mat n1 = two_mode_embed(n, 1, d);
  const Mat n2 = two_mode_embed(n, 2, d);

  const double pg = prm.p_g(t, program);
  const double pgp = prm.p_g_prime(t, program);
  const Mat cross = a1.adjoint() * a2.adjoint();
  Mat comm = prm.g * prm.g * (n1 - n2) -
             prm.g * pg * (cross + cross.adjoint()) +
             cxd(0.0, 1.0) * prm.g * pgp * (cross - cross.adjoint()) -
             (pg * pg + pgp * pgp) * (n1 + 0.5 * Mat::Identity(dim2, dim2));
  return comm / prm.Delta_12;
}

Mat build_static_hamiltonian(double t, const StaticModelTerms& terms,
                             const PulseProgram& program) {
  Mat H = terms.H_KPO + terms.commutator_over_detuning(t, program);
  if (program.enable_cancellation) {
    const int d = terms.dim_per_mode;
    const Mat a = ladder(d);
    H += terms.prm.cancellation_detuning(t, program) *
         two_mode_embed((a.adjoint() * a).eval(), 1, d);
  }
  return H;
}

double ac_zeeman_shift(double t, const RwaParams& rwa, const PulseProgram& program) {
  if (rwa.Delta_12 == 0.0)
    throw std::invalid_argument("ac_zeeman_shift: Delta_12 must be nonzero");
  const double pg = rwa.p_g(t, program);
  const double pgp = rwa.p_g_prime(t, program);
  return -(pg * pg + pgp * pgp) / rwa.Delta_12;
}

double StaticModelTerms::max_dt() const {
  // No explicit fast tone remains; the envelope bandwidth (≤ a few/T_g) and
  // the Kerr spectrum set the scale. Cap at the same value as the RWA model
  // so both models run on identical grids in comparisons.
  const double f = std::abs(prm.Delta_12);
  if (f <= 0.0) return 1e-3;
  return two_pi / f / 40.0;
}

HamAction StaticModelTerms::action(const PulseProgram& program) const {
  auto scratch = std::make_shared<Mat>();
  const StaticModelTerms* T = this;
  PulseProgram pr = program;
  return [T, pr, scratch](double t, const Mat& in, Mat& out) {
    const RwaParams& p = T->prm;
    const double pg = p.p_g(t, pr);
    const double pgp = p.p_g_prime(t, pr);
    const double inv = 1.0 / p.Delta_12;
    const double c_x = -p.g * pg * inv;
    const cxd c_y = cxd(0.0, p.g * pgp * inv);
    const double c_z = -(pg * pg + pgp * pgp) * inv;
    const double d_can = p.cancellation_detuning(t, pr);

    Mat& tmp = *scratch;
    out.noalias() = T->H_0 * in;
    tmp.noalias() = T->X_plus * in;
    out.noalias() += c_x * tmp;
    tmp.noalias() = T->Y_minus * in;
    out.noalias() += c_y * tmp;
    tmp.noalias() = T->Z_n1 * in;
    out.noalias() += c_z * tmp;
    if (d_can != 0.0) {
      tmp.noalias() = T->N_1 * in;
      out.noalias() += d_can * tmp;
    }
  };
}

double verify_static_vs_rwa(const Vec& initial, const PulseProgram& program,
                            const RwaParams& rwa, double T_g, int dim_per_mode,
                            double dt) {
  RwaTerms rterms = build_rwa_terms(rwa, dim_per_mode);
  StaticModelTerms sterms = build_static_terms(rwa, dim_per_mode);

  IntegratorSettings s;
  s.dt = dt;

  Mat psi_r = initial;
  Mat psi_s = initial;
  evolve_block(psi_r, rterms.action(program), 0.0, T_g, s);
  evolve_block(psi_s, sterms.action(program), 0.0, T_g, s);
  const cxd ov = (psi_r.col(0).adjoint() * psi_s.col(0))(0, 0);
  return std::norm(ov);
}

}  // namespace cdg
