// cdg/fock.cpp — construction of truncated single-mode operators.
#include "cdg/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

FockOperators build_mode_operators(int dim_per_mode, double charging_energy,
                                   double josephson_energy_eff, int squid_count) {
  if (dim_per_mode < 1)
    throw std::invalid_argument("build_mode_operators: dim_per_mode must be >= 1");
  if (charging_energy <= 0.0 || josephson_energy_eff <= 0.0)
    throw std::invalid_argument("build_mode_operators: energies must be positive");
  if (squid_count < 1)
    throw std::invalid_argument("build_mode_operators: squid_count must be >= 1");

  const int d = dim_per_mode;
  const double N = static_cast<double>(squid_count);

  FockOperators ops;
  ops.dim_per_mode = d;
  ops.annihilate = Mat::Zero(d, d);
  for (int m = 1; m < d; ++m) ops.annihilate(m - 1, m) = std::sqrt(double(m));
  ops.number = ops.annihilate.adjoint() * ops.annihilate;

  const double phi_zp = std::pow(2.0 * N * charging_energy / josephson_energy_eff, 0.25);
  const double q_zp = std::pow(josephson_energy_eff / (32.0 * N * charging_energy), 0.25);
  ops.phase_op = phi_zp * (ops.annihilate.adjoint() + ops.annihilate);
  ops.charge_op = cxd(0.0, 1.0) * q_zp * (ops.annihilate.adjoint() - ops.annihilate);

  // cos(φ/N) by spectral calculus: φ/N is real-symmetric tridiagonal.
  Eigen::MatrixXd phi_over_N = ops.phase_op.real() / N;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi_over_N);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("build_mode_operators: eigendecomposition of phase_op/N failed");
  Eigen::MatrixXd cosm =
      es.eigenvectors() * es.eigenvalues().array().cos().matrix().asDiagonal() *
      es.eigenvectors().transpose();
  ops.cos_phi_over_N = cosm.cast<cxd>();
  return ops;
}

Eigen::MatrixXcd two_mode_embed(const Eigen::MatrixXcd& op, int mode_index,
                                int dim_per_mode) {
  if (op.rows() != dim_per_mode || op.cols() != dim_per_mode)
    throw std::invalid_argument("two_mode_embed: operator dimension mismatch");
  if (mode_index != 1 && mode_index != 2)
    throw std::invalid_argument("two_mode_embed: mode_index must be 1 or 2");

  const int d = dim_per_mode;
  Mat out = Mat::Zero(d * d, d * d);
  if (mode_index == 1) {
    // op ⊗ I: block (i,j) = op(i,j)·I
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (op(i, j) != cxd(0, 0))
          for (int k = 0; k < d; ++k) out(i * d + k, j * d + k) = op(i, j);
  } else {
    // I ⊗ op
    for (int k = 0; k < d; ++k) out.block(k * d, k * d, d, d) = op;
  }
  return out;
}

}  // namespace cdg
