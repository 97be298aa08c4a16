#pragma once

// Unconstrained-vector chart of SO(3):
//
//   R(n) = [(1 - n^2) 1 + 2 n n^T + 2 hat(n)] / (1 + n^2)
//
// and the Hamiltonian of the top in the canonical variables (n, pi, y_c, p_c).
// The chart covers every rotation except those by exactly pi (1 + tr R = 0).

#include "dtop/linalg.hpp"
#include "dtop/model.hpp"

namespace dtop {

struct NVector {
  Vec3 n;
};

Mat3 rotation_from_n(const NVector& n);

inline constexpr double kDefaultChartTolerance = 1e-8;

/// Inverse chart. Throws ChartError when 1 + tr R <= tolerance.
NVector n_from_rotation(const Mat3& R, double chart_tolerance = kDefaultChartTolerance);

/// A(n) = 1 + n n^T - hat(n); (A pi)_i enters the kinetic term.
Mat3 cayley_factor(const NVector& n);

/// Body angular velocity generated by chart rates: Omega = 2 A(n)^-T dn/dt.
Vec3 omega_from_rates(const NVector& n, const Vec3& n_dot);

/// Inverse of omega_from_rates.
Vec3 rates_from_omega(const NVector& n, const Vec3& omega);

/// Momentum conjugate to n for a body with principal moments I and angular
/// velocity Omega: pi = 2 A(n)^-1 I Omega, so that A pi = 2 I Omega.
Vec3 momentum_from_omega(const NVector& n, const Vec3& inertia, const Vec3& omega);

/// H = 1/8 I^-1_ij (A pi)_i (A pi)_j + p_c^2 / (2 mu)
///     - sigma (k, y_c + R(n) z) + g mu (k, y_c)
double hamiltonian(const TopConfig& cfg, const NVector& n, const Vec3& pi, const Vec3& y_c,
                   const Vec3& p_c, double sigma_value);

/// Rotational kinetic term alone, 1/8 (A pi)^T I^-1 (A pi).
double kinetic_term(const TopConfig& cfg, const NVector& n, const Vec3& pi);

}  // namespace dtop
