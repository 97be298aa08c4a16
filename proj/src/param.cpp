#include "dtop/param.hpp"

#include <sstream>

#include "dtop/errors.hpp"

namespace dtop {

Mat3 rotation_from_n(const NVector& nv) {
  const Vec3& n = nv.n;
  const double n2 = dot(n, n);
  Mat3 r = (1.0 - n2) * Mat3::identity() + 2.0 * hat(n);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) += 2.0 * n[i] * n[j];
  return (1.0 / (1.0 + n2)) * r;
}

NVector n_from_rotation(const Mat3& R, double chart_tolerance) {
  const double d = 1.0 + R.trace();
  if (!(d > chart_tolerance)) {
    std::ostringstream msg;
    msg << "rotation is outside the chart: 1 + tr R = " << d << " (rotation by ~pi)";
    throw ChartError(msg.str());
  }
  // eps_ijk (R_ij - R_ji) for each k.
  const Vec3 skew{R(1, 2) - R(2, 1), R(2, 0) - R(0, 2), R(0, 1) - R(1, 0)};
  return {(-1.0 / d) * skew};
}

Mat3 cayley_factor(const NVector& nv) {
  const Vec3& n = nv.n;
  Mat3 a = Mat3::identity() - hat(n);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) += n[i] * n[j];
  return a;
}

Vec3 omega_from_rates(const NVector& n, const Vec3& n_dot) {
  return 2.0 * (inverse(cayley_factor(n)).transposed() * n_dot);
}

Vec3 rates_from_omega(const NVector& n, const Vec3& omega) {
  return 0.5 * (cayley_factor(n).transposed() * omega);
}

Vec3 momentum_from_omega(const NVector& n, const Vec3& inertia, const Vec3& omega) {
  return 2.0 * (inverse(cayley_factor(n)) * hadamard(inertia, omega));
}

double kinetic_term(const TopConfig& cfg, const NVector& n, const Vec3& pi) {
  const Vec3 api = cayley_factor(n) * pi;
  return 0.125 * dot(api, hadamard(cfg.inverse_inertia(), api));
}

double hamiltonian(const TopConfig& cfg, const NVector& n, const Vec3& pi, const Vec3& y_c,
                   const Vec3& p_c, double sigma_value) {
  const Vec3& k = cfg.normal;
  const double constraint = dot(k, y_c + rotation_from_n(n) * cfg.fulcrum);
  return kinetic_term(cfg, n, pi) + dot(p_c, p_c) / (2.0 * cfg.mass) - sigma_value * constraint +
         cfg.gravity * cfg.mass * dot(k, y_c);
}

}  // namespace dtop
