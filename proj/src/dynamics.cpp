#include "dtop/dynamics.hpp"

#include <cmath>

#include "dtop/errors.hpp"

namespace dtop {

double sigma_symmetric(const TopConfig& cfg, const Vec3& K, const Vec3& omega) {
  const double i2 = cfg.inertia.y, i3 = cfg.inertia.z;
  const double scale = cfg.inertia.x + i2 + i3;
  if (std::abs(cfg.inertia.x - i2) > 1e-12 * scale)
    throw ConfigError("sigma_symmetric needs I1 = I2");
  const double L = -cfg.fulcrum.z;
  if (std::abs(cfg.fulcrum.x) > 1e-12 * std::abs(L) ||
      std::abs(cfg.fulcrum.y) > 1e-12 * std::abs(L) || !(L > 0.0))
    throw ConfigError("sigma_symmetric needs the fulcrum at (0, 0, -L) with L > 0");

  const double perp_k = K.x * K.x + K.y * K.y;
  const double denom = 1.0 / cfg.mass + L * L / i2 * perp_k;
  const double brace = cfg.gravity / L + i3 / i2 * omega.z * (omega.x * K.x + omega.y * K.y) -
                       (omega.x * omega.x + omega.y * omega.y) * K.z;
  return L * brace / denom;
}

double com_altitude(const TopConfig& cfg, const RotState& s) {
  return -dot(cfg.normal, s.R * cfg.fulcrum);
}

double com_vertical_velocity(const TopConfig& cfg, const RotState& s) {
  return -dot(cfg.normal, s.R * cross(s.omega, cfg.fulcrum));
}

Vec3 com_position(const TopConfig& cfg, const RotState& s, const CoMState& c) {
  return c.p_perp + com_altitude(cfg, s) * cfg.normal;
}

double energy(const TopConfig& cfg, const RotState& s) {
  const Vec3 K = transpose_times(s.R, cfg.normal);
  const Vec3 arm = cross(K, cfg.fulcrum);
  const double rot = 0.5 * dot(s.omega, hadamard(cfg.inertia, s.omega));
  const double w = dot(s.omega, arm);
  return rot + 0.5 * cfg.mass * w * w - cfg.gravity * cfg.mass * dot(K, cfg.fulcrum);
}

double angular_momentum_k(const TopConfig& cfg, const RotState& s) {
  return dot(cfg.normal, s.R * hadamard(cfg.inertia, s.omega));
}

Diagnostics diagnostics(const TopConfig& cfg, const RotState& s, const CoMState& c) {
  Diagnostics d;
  d.sigma = sigma(cfg, s);
  d.energy = energy(cfg, s);
  d.angular_momentum_k = angular_momentum_k(cfg, s);
  d.omega3 = s.omega.z;
  d.orth_residual = orthogonality_residual(s.R);
  const Vec3 yc = com_position(cfg, s, c);
  d.constraint_residual = std::abs(dot(cfg.normal, yc + s.R * cfg.fulcrum));
  d.v_c = c.v_perp + com_vertical_velocity(cfg, s) * cfg.normal;
  return d;
}

Vec3 reconstruct_point(const RotState& s, const CoMState& c, const TopConfig& cfg,
                       const Vec3& x0) {
  return com_position(cfg, s, c) + s.R * x0;
}

}  // namespace dtop
