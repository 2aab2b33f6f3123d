// cdg/propagator.cpp — RK4 integration, frame rotation, gate assembly.
#include "cdg/propagator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdg/fidelity.hpp"
#include "cdg/fock.hpp"

namespace cdg {

namespace {

// One RK4 step of i·dψ/dt = H(t)ψ for the whole column block.
// k_i hold raw H·(stage) products; the −i enters through the increments.
struct Rk4Workspace {
  Mat k1, k2, k3, k4, stage;
};

inline void rk4_step(Mat& psi, const HamAction& H, double t, double h,
                     Rk4Workspace& w) {
  const cxd mih(0.0, -h);
  H(t, psi, w.k1);
  w.stage = psi + (mih * 0.5) * w.k1;
  H(t + 0.5 * h, w.stage, w.k2);
  w.stage = psi + (mih * 0.5) * w.k2;
  H(t + 0.5 * h, w.stage, w.k3);
  w.stage = psi + mih * w.k3;
  H(t + h, w.stage, w.k4);
  psi += (mih / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
}

void check_norms(const Mat& psi, double tol, double t) {
  for (Eigen::Index c = 0; c < psi.cols(); ++c) {
    const double n = psi.col(c).norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
      std::ostringstream msg;
      msg << "evolve_block: norm drift " << (n - 1.0) << " on column " << c
          << " at t = " << t << " s exceeds tolerance " << tol;
      throw PropagationError(msg.str());
    }
  }
}

}  // namespace

void evolve_block(Mat& psi, const HamAction& H, double t0, double t1,
                  const IntegratorSettings& s) {
  if (!(t1 > t0)) throw std::invalid_argument("evolve_block: t1 must exceed t0");
  if (!(s.dt > 0.0)) throw std::invalid_argument("evolve_block: dt must be positive");
  if (!H) throw std::invalid_argument("evolve_block: empty Hamiltonian action");

  const double span = t1 - t0;
  const long nsteps = std::max(1L, static_cast<long>(std::ceil(span / s.dt - 1e-12)));
  const double h = span / double(nsteps);
  const int stride = std::max(1, s.norm_check_stride);

  Rk4Workspace w;
  for (long step = 0; step < nsteps; ++step) {
    const double t = t0 + double(step) * h;
    rk4_step(psi, H, t, h, w);
    if (step % stride == stride - 1 || step == nsteps - 1)
      check_norms(psi, s.norm_tol, t + h);
  }
}

TwoModeState evolve(const TwoModeState& state, const HamAction& H, double t1,
                    const IntegratorSettings& settings) {
  Mat block = state.amplitudes;
  evolve_block(block, H, state.time, t1, settings);
  TwoModeState out;
  out.amplitudes = block.col(0);
  out.time = t1;
  return out;
}

FrameRotation make_frame_rotation(double omega_tilde_1, double omega_tilde_2,
                                  double g, int d) {
  if (d < 1)
    throw std::invalid_argument("make_frame_rotation: dim_per_mode must be >= 1");
  const int dim2 = d * d;

  Mat a = Mat::Zero(d, d);
  for (int m = 1; m < d; ++m) a(m - 1, m) = std::sqrt(double(m));
  const Mat n = a.adjoint() * a;

  const Mat a1 = two_mode_embed(a, 1, d);
  const Mat a2 = two_mode_embed(a, 2, d);
  Mat M = omega_tilde_1 * two_mode_embed(n, 1, d) +
          omega_tilde_2 * two_mode_embed(n, 2, d) +
          g * (a1.adjoint() * a2 + a2.adjoint() * a1);

  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("make_frame_rotation: diagonalization failed");

  FrameRotation fr;
  fr.dim_per_mode = d;
  fr.eigenvalues = es.eigenvalues();
  fr.V = es.eigenvectors();
  fr.bare_diagonal.resize(dim2);
  for (int m1 = 0; m1 < d; ++m1)
    for (int m2 = 0; m2 < d; ++m2)
      fr.bare_diagonal(m1 * d + m2) = omega_tilde_1 * m1 + omega_tilde_2 * m2;
  return fr;
}

Mat FrameRotation::measurement_rotation(double T, bool undo_bare_frame) const {
  const int dim2 = dim_per_mode * dim_per_mode;
  Vec phases(dim2);
  for (int k = 0; k < dim2; ++k)
    phases(k) = std::exp(cxd(0.0, eigenvalues(k) * T));
  Mat W = V * phases.asDiagonal() * V.adjoint();
  if (undo_bare_frame) {
    for (int k = 0; k < dim2; ++k) {
      const cxd ph = std::exp(cxd(0.0, -bare_diagonal(k) * T));
      W.col(k) *= ph;
    }
  }
  return W;
}

GateMatrix run_gate(const Mat& basis, const HamAction& H, const Mat& frame_W,
                    double T_g, const IntegratorSettings& settings) {
  if (basis.cols() != 4)
    throw std::invalid_argument("run_gate: basis must hold exactly four columns");
  if (frame_W.rows() != basis.rows() || frame_W.cols() != basis.rows())
    throw std::invalid_argument("run_gate: frame rotation dimension mismatch");

  Mat psi = basis;
  evolve_block(psi, H, 0.0, T_g, settings);

  const Mat rotated = frame_W * psi;
  const Mat overlaps = basis.adjoint() * rotated;  // 4×4

  GateMatrix gm;
  gm.U = overlaps;
  gm.fidelity = average_gate_fidelity(rzz_ideal(), gm.U);
  return gm;
}

PhotonTrace photon_trace(const Vec& initial, const HamAction& H, double T_g,
                         const IntegratorSettings& s, double sample_dt) {
  if (!(s.dt > 0.0)) throw std::invalid_argument("photon_trace: dt must be positive");
  if (!(T_g > 0.0)) throw std::invalid_argument("photon_trace: T_g must be positive");
  if (sample_dt < s.dt)
    throw std::invalid_argument("photon_trace: sample_dt must be >= integrator dt");

  const int dim2 = int(initial.size());
  const int d = int(std::lround(std::sqrt(double(dim2))));
  if (d * d != dim2)
    throw std::invalid_argument("photon_trace: state length is not a perfect square");

  Eigen::VectorXd w1(dim2), w2(dim2);
  for (int m1 = 0; m1 < d; ++m1)
    for (int m2 = 0; m2 < d; ++m2) {
      w1(m1 * d + m2) = double(m1);
      w2(m1 * d + m2) = double(m2);
    }

  const long nsteps = std::max(1L, static_cast<long>(std::ceil(T_g / s.dt - 1e-12)));
  const double h = T_g / double(nsteps);
  const long stride = std::max(1L, static_cast<long>(std::llround(sample_dt / h)));

  PhotonTrace tr;
  Mat psi = initial;
  auto sample = [&](double t) {
    const Eigen::ArrayXd p = psi.col(0).array().abs2();
    const double n1 = (w1.array() * p).sum();
    const double n2 = (w2.array() * p).sum();
    tr.times.push_back(t);
    tr.n_1.push_back(n1);
    tr.n_2.push_back(n2);
    tr.peak_n_1 = std::max(tr.peak_n_1, n1);
    tr.peak_n_2 = std::max(tr.peak_n_2, n2);
  };

  sample(0.0);
  Rk4Workspace w;
  const int check = std::max(1, s.norm_check_stride);
  for (long step = 0; step < nsteps; ++step) {
    const double t = double(step) * h;
    rk4_step(psi, H, t, h, w);
    if (step % check == check - 1 || step == nsteps - 1)
      check_norms(psi, s.norm_tol, t + h);
    if ((step + 1) % stride == 0 || step == nsteps - 1) sample(t + h);
  }
  return tr;
}

}  // namespace cdg
