#include <gtest/gtest.h>

#include <functional>

#include "dtop/analytic.hpp"
#include "dtop/dynamics.hpp"
#include "dtop/errors.hpp"
#include "support.hpp"

using namespace dtop;
using namespace dtop::testing;

namespace {

// Rigid-body equations with a prescribed constant multiplier, written
// independently of the library's right-hand side.
struct Frozen {
  Mat3 R;
  Vec3 w;
};

Frozen frozen_rate(const TopConfig& cfg, const Frozen& s, double sig) {
  const Vec3& I = cfg.inertia;
  const Vec3 K = s.R.transposed() * cfg.normal;
  const Vec3 Iw{I.x * s.w.x, I.y * s.w.y, I.z * s.w.z};
  const Vec3 torque = cross(Iw, s.w) - sig * cross(K, cfg.fulcrum);
  Frozen d;
  d.w = {torque.x / I.x, torque.y / I.y, torque.z / I.z};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m)
          v -= levi_civita(j, k, m) * (k == 0 ? s.w.x : k == 1 ? s.w.y : s.w.z) * s.R(i, m);
      d.R(i, j) = v;
    }
  return d;
}

Frozen frozen_flow(const TopConfig& cfg, Frozen s, double t, double sig) {
  const int n = 16;
  const double h = t / n;
  auto add = [](const Frozen& a, const Frozen& b, double c) {
    return Frozen{a.R + c * b.R, a.w + c * b.w};
  };
  for (int i = 0; i < n; ++i) {
    const Frozen k1 = frozen_rate(cfg, s, sig);
    const Frozen k2 = frozen_rate(cfg, add(s, k1, h / 2), sig);
    const Frozen k3 = frozen_rate(cfg, add(s, k2, h / 2), sig);
    const Frozen k4 = frozen_rate(cfg, add(s, k3, h), sig);
    s = Frozen{s.R + (h / 6) * (k1.R + 2.0 * k2.R + 2.0 * k3.R + k4.R),
               s.w + (h / 6) * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
  }
  return s;
}

// Second time derivative of the fulcrum height (k, R z) under a frozen
// multiplier: central differences with one Richardson step.
double fulcrum_height_acceleration(const TopConfig& cfg, const RotState& s, double sig) {
  auto height = [&](double t) {
    const Frozen f = frozen_flow(cfg, Frozen{s.R, s.omega}, t, sig);
    return dot(cfg.normal, f.R * cfg.fulcrum);
  };
  auto second = [&](double h) { return (height(h) - 2.0 * height(0.0) + height(-h)) / (h * h); };
  const double h = 2e-3;
  return (4.0 * second(h / 2) - second(h)) / 3.0;
}

}  // namespace

// The plane keeps (k, y_c + R z) = 0 with (k, y_c)'' = sigma / mu - g. The
// response of (k, R z)'' is affine in the multiplier, so two frozen-sigma
// runs determine the value that satisfies the constraint.
TEST(Sigma, MatchesFiniteDifferenceConstraintOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const TopConfig cfg = random_top(rng);
    RotState s;
    s.R = random_rotation(rng);
    s.omega = random_vec(rng, 3.0);
    const double a0 = fulcrum_height_acceleration(cfg, s, 0.0);
    const double slope = fulcrum_height_acceleration(cfg, s, 1.0) - a0;
    const double oracle = (cfg.gravity - a0) / (slope + 1.0 / cfg.mass);
    EXPECT_NEAR(sigma(cfg, s), oracle, 1e-7 * std::max(1.0, std::abs(oracle))) << trial;
  }
}

TEST(Sigma, GyroscopicTermMatchesDeterminantForm) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const TopConfig cfg = random_top(rng);
    RotState s;
    s.R = random_rotation(rng);
    s.omega = random_vec(rng, 5.0);
    const Vec3 K = s.R.transposed() * cfg.normal;
    const Vec3& z = cfg.fulcrum;
    const Vec3& I = cfg.inertia;
    const Vec3 w = s.omega;
    const Vec3 Iw{I.x * w.x, I.y * w.y, I.z * w.z};
    const Vec3 I2w{I.x * Iw.x, I.y * Iw.y, I.z * Iw.z};
    const double det = I.x * I.y * I.z;
    const double gyro = (dot(Iw, z) * dot(I2w, K) - dot(Iw, K) * dot(I2w, z)) / det;
    const double centripetal = -dot(w, K) * dot(w, z) + dot(w, w) * dot(K, z);
    const Vec3 a{cross(K, z).x / I.x, cross(K, z).y / I.y, cross(K, z).z / I.z};
    const double denom = 1.0 / cfg.mass + dot(a, cross(K, z));
    const double expected = (cfg.gravity + gyro + centripetal) / denom;
    EXPECT_NEAR(sigma(cfg, s), expected, 1e-11 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Sigma, SymmetricFormAgreesWithGeneral) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const double I2 = uniform(rng, 0.5, 2.0);
    const TopConfig cfg = make_config({I2, I2, uniform(rng, 0.2, 1.9) * I2}, uniform(rng, 0.5, 3.0),
                                      {0.0, 0.0, -uniform(rng, 0.1, 1.0)}, random_unit(rng), 9.8);
    RotState s;
    s.R = random_rotation(rng);
    s.omega = random_vec(rng, 6.0);
    const double general = sigma(cfg, s);
    const double sym = sigma_symmetric(cfg, s.R.transposed() * cfg.normal, s.omega);
    EXPECT_NEAR(sym, general, 1e-11 * std::max(1.0, std::abs(general)));
  }
}

TEST(Sigma, SymmetricFormRejectsAsymmetricTop) {
  std::mt19937_64 rng(14);
  const TopConfig cfg = random_top(rng);
  EXPECT_THROW(sigma_symmetric(cfg, {0, 0, 1}, {1, 2, 3}), ConfigError);
}

TEST(Rhs, RotationRateMatchesIndexForm) {
  std::mt19937_64 rng(15);
  const TopConfig cfg = random_top(rng);
  RotState s;
  s.R = random_rotation(rng);
  s.omega = random_vec(rng, 4.0);
  const Mat3 dR = rhs(cfg, s).dR;
  const double w[3] = {s.omega.x, s.omega.y, s.omega.z};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) v -= levi_civita(j, k, m) * w[k] * s.R(i, m);
      EXPECT_NEAR(dR(i, j), v, 1e-14);
    }
}

TEST(Rhs, TopAtRestFeelsOnlyTheReactionTorque) {
  const TopConfig cfg = make_config({1.0, 1.5, 2.0}, 2.0, {0.1, 0.2, -0.5}, {0.3, 0.1, 1.0}, 9.8);
  RotState s;
  const RotRate<double> d = rhs(cfg, s);
  const double s0 = sigma(cfg, s);
  const Vec3 arm = cross(cfg.normal, cfg.fulcrum);
  const Vec3 expected = -s0 * Vec3{arm.x / 1.0, arm.y / 1.5, arm.z / 2.0};
  EXPECT_NEAR(d.dOmega.x, expected.x, 1e-14);
  EXPECT_NEAR(d.dOmega.y, expected.y, 1e-14);
  EXPECT_NEAR(d.dOmega.z, expected.z, 1e-14);
  EXPECT_LT(s0, cfg.gravity * cfg.mass);
  EXPECT_GT(s0, 0.0);
}

TEST(Rhs, UprightBalancedTopCarriesItsWeight) {
  const TopConfig cfg = make_config({1.0, 1.0, 0.5}, 3.0, {0.0, 0.0, -0.4}, {0, 0, 1}, 9.8);
  RotState s;
  s.omega = {0.0, 0.0, 25.0};
  EXPECT_NEAR(sigma(cfg, s), 3.0 * 9.8, 1e-12);
  EXPECT_NEAR(norm(rhs(cfg, s).dOmega), 0.0, 1e-14);
}

TEST(Rhs, AnalyticFamilyDerivatives) {
  const SymmetricTop top = conical_symmetric_top(2.0, 1.0, 0.25, 0.7, 9.8);
  const TopConfig cfg = to_config(top);
  for (double gamma : {3.0, 9.0, -5.0}) {
    for (double t : {0.0, 0.31, 1.7}) {
      const RotState s = analytic_state(top, gamma, t);
      const RotRate<double> d = rhs(cfg, s);
      auto deriv = [&](double h) {
        const RotState p = analytic_state(top, gamma, t + h);
        const RotState m = analytic_state(top, gamma, t - h);
        return std::pair{(1.0 / (2 * h)) * (p.R - m.R), (1.0 / (2 * h)) * (p.omega - m.omega)};
      };
      const auto [dR1, dw1] = deriv(1e-4);
      const auto [dR2, dw2] = deriv(5e-5);
      const Mat3 dR = (1.0 / 3.0) * (4.0 * dR2 - dR1);
      const Vec3 dw = (1.0 / 3.0) * (4.0 * dw2 - dw1);
      const double scale = std::abs(gamma) * (1.0 + std::abs(alpha_of_gamma(top, gamma)));
      EXPECT_LT(max_abs_diff(dR, d.dR), 1e-8 * scale);
      EXPECT_LT(norm(dw - d.dOmega), 1e-8 * scale * scale);
      EXPECT_NEAR(sigma(cfg, s), top.gravity * top.mu, 1e-11 * top.gravity * top.mu);
    }
  }
}

TEST(Diagnostics, AnalyticFamilyKeepsHeightEnergyAndMomentum) {
  const SymmetricTop top = conical_symmetric_top(1.0, 0.8, 0.2, 0.5, 9.8);
  const TopConfig cfg = to_config(top);
  const double gamma = 7.0;
  const RotState s0 = analytic_state(top, gamma, 0.0);
  const double e0 = energy(cfg, s0), l0 = angular_momentum_k(cfg, s0);
  const CoMState c;
  const Vec3 apex0 = reconstruct_point(s0, c, cfg, cfg.fulcrum);
  for (double t : {0.1, 0.5, 2.0}) {
    const RotState s = analytic_state(top, gamma, t);
    EXPECT_NEAR(energy(cfg, s), e0, 1e-12 * std::abs(e0));
    EXPECT_NEAR(angular_momentum_k(cfg, s), l0, 1e-12 * std::abs(l0));
    EXPECT_NEAR(com_altitude(cfg, s), top.L * top.k3, 1e-14);
    EXPECT_NEAR(com_vertical_velocity(cfg, s), 0.0, 1e-12);
    const Diagnostics d = diagnostics(cfg, s, c);
    EXPECT_NEAR(d.constraint_residual, 0.0, 1e-14);
    EXPECT_NEAR(d.omega3, s.omega.z, 0.0);
    // The fulcrum traces a circle in the plane about the foot of the axis.
    const Vec3 apex = reconstruct_point(s, c, cfg, cfg.fulcrum);
    EXPECT_NEAR(dot(apex, cfg.normal), 0.0, 1e-14);
    EXPECT_NEAR(norm(apex), norm(apex0), 1e-14);
  }
}

TEST(Diagnostics, UprightRestEnergy) {
  const TopConfig cfg = make_config({1.0, 1.0, 0.5}, 3.0, {0.0, 0.0, -0.4}, {0, 0, 1}, 9.8);
  EXPECT_NEAR(energy(cfg, RotState{}), 9.8 * 3.0 * 0.4, 1e-14);
  EXPECT_NEAR(com_altitude(cfg, RotState{}), 0.4, 1e-15);
}
