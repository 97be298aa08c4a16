#include <gtest/gtest.h>

#include "dtop/dynamics.hpp"
#include "dtop/errors.hpp"
#include "dtop/param.hpp"
#include "support.hpp"

using namespace dtop;
using namespace dtop::testing;

TEST(Chart, RotationFromNIsProper) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const NVector n{random_vec(rng, 3.0)};
    const Mat3 R = rotation_from_n(n);
    EXPECT_LT(orthogonality_residual(R), 1e-14);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-14);
    EXPECT_LT(norm(n_from_rotation(R).n - n.n), 1e-12 * (1.0 + dot(n.n, n.n)));
  }
  EXPECT_LT(max_abs_diff(rotation_from_n({}), Mat3::identity()), 1e-16);
}

TEST(Chart, RotationAngleAndAxis) {
  // |n| = tan(angle / 2) and the rotation leaves n fixed.
  const Vec3 axis = Vec3{1.0, 2.0, 2.0} / 3.0;
  const double angle = 1.1;
  const NVector n{std::tan(angle / 2) * axis};
  const Mat3 R = rotation_from_n(n);
  EXPECT_LT(norm(R * n.n - n.n), 1e-15);
  EXPECT_NEAR(R.trace(), 1.0 + 2.0 * std::cos(angle), 1e-14);
}

TEST(Chart, InverseOfRandomRotations) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 R = random_rotation(rng);
    EXPECT_LT(max_abs_diff(rotation_from_n(n_from_rotation(R)), R), 1e-12);
  }
}

TEST(Chart, HalfTurnIsSingular) {
  const Mat3 R = axis_angle(Vec3{0.0, 0.6, 0.8}, std::numbers::pi);
  EXPECT_THROW(n_from_rotation(R), ChartError);
  EXPECT_NO_THROW(n_from_rotation(axis_angle(Vec3{0.0, 0.6, 0.8}, 3.1)));
}

TEST(Chart, AngularVelocityFromRates) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 n0 = random_vec(rng, 1.5);
    const Vec3 ndot = random_vec(rng, 2.0);
    auto R = [&](double t) { return rotation_from_n({n0 + t * ndot}); };
    const double h = 1e-5;
    const Mat3 dR = (1.0 / (2 * h)) * (R(h) - R(-h));
    const Mat3 W = R(0.0).transposed() * dR;  // hat(Omega)
    const Vec3 fd{W(2, 1), W(0, 2), W(1, 0)};
    const Vec3 w = omega_from_rates({n0}, ndot);
    EXPECT_LT(norm(w - fd), 1e-8 * (1.0 + norm(w)));
    EXPECT_LT(norm(rates_from_omega({n0}, w) - ndot), 1e-12 * (1.0 + norm(ndot)));
  }
}

TEST(Hamiltonian, KineticTermIsRotationalEnergy) {
  std::mt19937_64 rng(44);
  const TopConfig cfg = random_top(rng);
  for (int trial = 0; trial < 20; ++trial) {
    const NVector n{random_vec(rng, 2.0)};
    const Vec3 w = random_vec(rng, 4.0);
    const Vec3 pi = momentum_from_omega(n, cfg.inertia, w);
    const double T = 0.5 * dot(w, hadamard(cfg.inertia, w));
    EXPECT_NEAR(kinetic_term(cfg, n, pi), T, 1e-12 * T);
    // A pi = 2 I Omega.
    EXPECT_LT(norm(cayley_factor(n) * pi - 2.0 * hadamard(cfg.inertia, w)), 1e-12 * norm(pi));
  }
}

TEST(Hamiltonian, EqualsEnergyOnConstraint) {
  std::mt19937_64 rng(45);
  const TopConfig cfg = random_top(rng);
  RotState s;
  s.R = random_rotation(rng);
  s.omega = random_vec(rng, 3.0);
  const CoMState c = make_com_state(cfg.normal, random_vec(rng), random_vec(rng));
  const Diagnostics d = diagnostics(cfg, s, c);
  const Vec3 y = com_position(cfg, s, c);
  const NVector n = n_from_rotation(s.R);
  const Vec3 pi = momentum_from_omega(n, cfg.inertia, s.omega);
  const double H = hamiltonian(cfg, n, pi, y, cfg.mass * d.v_c, d.sigma);
  const double planar = 0.5 * cfg.mass * dot(c.v_perp, c.v_perp);
  EXPECT_NEAR(H, d.energy + planar, 1e-11 * std::abs(H));
  // The multiplier term vanishes on the constraint surface.
  EXPECT_NEAR(H, hamiltonian(cfg, n, pi, y, cfg.mass * d.v_c, 0.0), 1e-12 * std::abs(H));
}
