// cdg/basis.cpp — computational-basis construction.
#include "cdg/basis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cdg {

NormalModes normal_modes(double omega_1, double omega_2, double g) {
  if (omega_1 == omega_2 && g == 0.0)
    throw std::invalid_argument(
        "normal_modes: degenerate uncoupled modes have no preferred basis");
  NormalModes nm;
  const double s = std::hypot(omega_1 - omega_2, 2.0 * g);
  nm.omega_minus = 0.5 * (omega_1 + omega_2 - s);
  nm.omega_plus = 0.5 * (omega_1 + omega_2 + s);

  auto column = [&](double lambda) {
    Eigen::Vector2d u(-g, omega_1 - lambda);
    const double n = u.norm();
    if (n == 0.0) u = Eigen::Vector2d(1.0, 0.0);  // g = 0, λ = ω_1 exactly
    else u /= n;
    return u;
  };
  nm.U_tilde.col(0) = column(nm.omega_minus);
  nm.U_tilde.col(1) = column(nm.omega_plus);
  // g = 0 degenerate handling: λ_∓ coincide with ω_j and the generic
  // formula can give a zero column for one of them; rebuild orthonormally.
  if (g == 0.0) {
    nm.U_tilde.setIdentity();
    if (omega_1 > omega_2) {
      nm.U_tilde << 0.0, 1.0, 1.0, 0.0;  // b_1 ↔ ω_− = ω_2
    }
  }
  return nm;
}

BModeParams b_mode_params(const NormalModes& modes, const RwaParams& rwa) {
  const Eigen::Matrix2d& U = modes.U_tilde;
  auto p4 = [](double x) { return x * x * x * x; };
  auto p2 = [](double x) { return x * x; };

  BModeParams b;
  b.K_1b = rwa.K_1 * p4(U(0, 0)) + rwa.K_2 * p4(U(1, 0));
  b.K_2b = rwa.K_1 * p4(U(0, 1)) + rwa.K_2 * p4(U(1, 1));
  b.K_12b = 2.0 * (rwa.K_1 * p2(U(0, 0)) * p2(U(0, 1)) +
                   rwa.K_2 * p2(U(1, 0)) * p2(U(1, 1)));
  b.P_1b = rwa.P_1 * p2(U(0, 0));
  b.P_2b = rwa.P_2 * p2(U(1, 1));
  if (b.K_1b <= 0.0 || b.K_2b <= 0.0)
    throw std::invalid_argument("b_mode_params: non-positive b-mode Kerr (corrupt input)");
  b.beta_1 = std::sqrt(b.P_1b / b.K_1b);
  b.beta_2 = std::sqrt(b.P_2b / b.K_2b);
  b.beta_approx_1 = std::sqrt(rwa.P_1 / rwa.K_1) / std::abs(U(0, 0));
  b.beta_approx_2 = std::sqrt(rwa.P_2 / rwa.K_2) / std::abs(U(1, 1));
  return b;
}

Vec coherent_state(cxd alpha, int dim, double max_leakage) {
  if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
  Vec c(dim);
  c(0) = 1.0;
  for (int m = 1; m < dim; ++m) c(m) = c(m - 1) * alpha / std::sqrt(double(m));
  // c holds α^m/sqrt(m!); the exact state carries e^{−|α|²/2}. The retained
  // weight before renormalization is e^{−|α|²}·Σ|c_m|².
  const double retained = std::exp(-std::norm(alpha)) * c.squaredNorm();
  const double leakage = 1.0 - retained;
  if (leakage > max_leakage) {
    std::ostringstream msg;
    msg << "coherent_state: truncation leakage " << leakage << " exceeds "
        << max_leakage << " for |alpha| = " << std::abs(alpha) << ", dim = " << dim;
    throw std::invalid_argument(msg.str());
  }
  c /= c.norm();
  return c;
}

namespace {

// Logical-state coefficients over {|+β⟩, |−β⟩} for one b-mode:
// |0̄⟩ = (|C+⟩+|C−⟩)/√2, |1̄⟩ = (|C+⟩−|C−⟩)/√2 with the cat normalizations
// N_± = sqrt(2 ± 2⟨β|−β⟩).
struct LogicalCoeffs {
  double plus[2];   // coefficient of |+β⟩ for logical 0, 1
  double minus[2];  // coefficient of |−β⟩ for logical 0, 1
};

LogicalCoeffs logical_coeffs(double beta, int dim, double max_leakage) {
  const Vec cb = coherent_state(beta, dim, max_leakage);
  const Vec cm = coherent_state(-beta, dim, max_leakage);
  const double s = (cb.adjoint() * cm)(0, 0).real();
  const double n_plus = std::sqrt(2.0 + 2.0 * s);
  const double n_minus = std::sqrt(2.0 - 2.0 * s);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  LogicalCoeffs lc;
  lc.plus[0] = (1.0 / n_plus + 1.0 / n_minus) * inv_sqrt2;
  lc.minus[0] = (1.0 / n_plus - 1.0 / n_minus) * inv_sqrt2;
  lc.plus[1] = lc.minus[0];
  lc.minus[1] = lc.plus[0];
  return lc;
}

}  // namespace

ComputationalBasis computational_basis(const BModeParams& bparams,
                                       const NormalModes& modes, int dim,
                                       double max_leakage) {
  if (dim < 2) throw std::invalid_argument("computational_basis: dim must be >= 2");
  const Eigen::Matrix2d& U = modes.U_tilde;
  const double b1 = bparams.beta_1;
  const double b2 = bparams.beta_2;

  const LogicalCoeffs l1 = logical_coeffs(b1, dim, max_leakage);
  const LogicalCoeffs l2 = logical_coeffs(b2, dim, max_leakage);

  ComputationalBasis basis;
  basis.dim_per_mode = dim;
  basis.states.resize(dim * dim, 4);

  for (int q1 = 0; q1 < 2; ++q1) {
    for (int q2 = 0; q2 < 2; ++q2) {
      Vec psi = Vec::Zero(dim * dim);
      for (int s1 : {+1, -1}) {
        for (int s2 : {+1, -1}) {
          const double w1 = (s1 > 0) ? l1.plus[q1] : l1.minus[q1];
          const double w2 = (s2 > 0) ? l2.plus[q2] : l2.minus[q2];
          const double alpha_1 = s1 * U(0, 0) * b1 + s2 * U(0, 1) * b2;
          const double alpha_2 = s1 * U(1, 0) * b1 + s2 * U(1, 1) * b2;
          const Vec c1 = coherent_state(alpha_1, dim, max_leakage);
          const Vec c2 = coherent_state(alpha_2, dim, max_leakage);
          // Mode-1-major product: index m1·dim + m2.
          for (int m1 = 0; m1 < dim; ++m1)
            psi.segment(m1 * dim, dim) += (w1 * w2) * c1(m1) * c2;
        }
      }
      psi /= psi.norm();
      basis.states.col(q1 * 2 + q2) = psi;
    }
  }

  basis.gram = (basis.states.adjoint() * basis.states).eval();
  Eigen::Matrix4cd dev = basis.gram - Eigen::Matrix4cd::Identity();
  basis.max_gram_deviation = dev.cwiseAbs().maxCoeff();
  if (basis.max_gram_deviation > 0.05) {
    std::ostringstream msg;
    msg << "computational_basis: Gram deviation " << basis.max_gram_deviation
        << " exceeds 0.05 — parameters outside the cat-qubit regime";
    throw std::runtime_error(msg.str());
  }
  return basis;
}

}  // namespace cdg
