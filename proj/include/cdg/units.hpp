// cdg/units.hpp — unit conventions and a few shared aliases.
//
// All frequencies inside the library are angular (rad/s); all times are
// seconds; all flux angles are radians. Configuration files speak plain Hz
// and nanoseconds — conversion happens once at the config boundary.
#pragma once

#include <complex>
#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cdg {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<cxd>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Plain-cycle frequency (Hz) to angular frequency (rad/s) and back.
inline constexpr double hz_to_angular(double f_hz) { return two_pi * f_hz; }
inline constexpr double angular_to_hz(double w) { return w / two_pi; }

inline constexpr double ns_to_s(double t_ns) { return t_ns * 1e-9; }
inline constexpr double s_to_ns(double t_s) { return t_s * 1e9; }

}  // namespace cdg
