#pragma once

// Reduced Euler-Poisson system of a heavy body whose fulcrum slides without
// friction on a plane:
//
//   I dOmega/dt = [I Omega, Omega] - sigma(R, Omega) [R^T k, z]
//   dR_ij/dt    = -eps_jkm Omega_k R_im          (dR = R hat(Omega))
//
// sigma is the reaction multiplier of the plane constraint, obtained in
// closed form from the second time derivative of (k, y_c + R z) = 0. The
// center-of-mass altitude is never integrated; it follows from the
// constraint.
//
// The RHS and sigma are templates so that they also run on Jet scalars.

#include "dtop/linalg.hpp"
#include "dtop/model.hpp"

namespace dtop {

template <typename T>
struct RotRate {
  Mat3T<T> dR;
  Vec3T<T> dOmega;
};

/// Reaction multiplier sigma(R, Omega).
///
/// With K = R^T k and lever arm a = I^-1 [K, z]:
///   sigma = (1/mu + (a, I a))^-1 { g + ([I Omega, Omega], a) + ([Omega, K], [Omega, z]) }
/// The denominator is at least 1/mu.
template <typename T>
T sigma(const TopConfig& cfg, const Mat3T<T>& R, const Vec3T<T>& omega) {
  const Vec3T<T> k = lift<T>(cfg.normal);
  const Vec3T<T> z = lift<T>(cfg.fulcrum);
  const Vec3T<T> K = transpose_times(R, k);
  const Vec3T<T> torque_arm = cross(K, z);
  const Vec3T<T> lever = hadamard(cfg.inverse_inertia(), torque_arm);
  const Vec3T<T> I_omega = hadamard(cfg.inertia, omega);
  const T denom = T(1.0 / cfg.mass) + dot(lever, torque_arm);
  const T num = T(cfg.gravity) + dot(cross(I_omega, omega), lever) +
                dot(cross(omega, K), cross(omega, z));
  return num / denom;
}

inline double sigma(const TopConfig& cfg, const RotState& s) {
  return sigma<double>(cfg, s.R, s.omega);
}

/// sigma for a symmetric top (I1 = I2, z = (0, 0, -L)) written in terms of
/// K = R^T k and Omega. Throws ConfigError for non-symmetric configurations.
double sigma_symmetric(const TopConfig& cfg, const Vec3& K, const Vec3& omega);

template <typename T>
RotRate<T> rhs(const TopConfig& cfg, const Mat3T<T>& R, const Vec3T<T>& omega) {
  const Vec3T<T> K = transpose_times(R, lift<T>(cfg.normal));
  const Vec3T<T> torque_arm = cross(K, lift<T>(cfg.fulcrum));
  const T s = sigma(cfg, R, omega);
  const Vec3T<T> gyro = cross(hadamard(cfg.inertia, omega), omega);
  RotRate<T> out;
  out.dOmega = hadamard(cfg.inverse_inertia(), gyro - s * torque_arm);
  out.dR = R * hat(omega);
  return out;
}

inline RotRate<double> rhs(const TopConfig& cfg, const RotState& s) {
  return rhs<double>(cfg, s.R, s.omega);
}

/// (k, y_c) = -(k, R z).
double com_altitude(const TopConfig& cfg, const RotState& s);

/// Vertical velocity of the center of mass, -(k, dR/dt z).
double com_vertical_velocity(const TopConfig& cfg, const RotState& s);

/// Full center-of-mass position, planar part plus derived altitude.
Vec3 com_position(const TopConfig& cfg, const RotState& s, const CoMState& c);

struct Diagnostics {
  double sigma = 0.0;
  double energy = 0.0;
  double angular_momentum_k = 0.0;  // (k, R I Omega)
  double omega3 = 0.0;
  double orth_residual = 0.0;
  double constraint_residual = 0.0;
  Vec3 v_c;  // planar part plus the vertical velocity implied by the constraint
};

/// E = 1/2 sum I_i Omega_i^2 + 1/2 mu (Omega, [R^T k, z])^2 - g mu (R^T k, z)
double energy(const TopConfig& cfg, const RotState& s);

/// (k, R I Omega)
double angular_momentum_k(const TopConfig& cfg, const RotState& s);

Diagnostics diagnostics(const TopConfig& cfg, const RotState& s, const CoMState& c);

/// y_N(t) = y_c(t) + R(t) x0 for a point at body position x0 (relative to
/// the center of mass, principal frame, t = 0).
Vec3 reconstruct_point(const RotState& s, const CoMState& c, const TopConfig& cfg,
                       const Vec3& x0);

}  // namespace dtop
