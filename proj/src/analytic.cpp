#include "dtop/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dtop/errors.hpp"

namespace dtop {

SymmetricTop make_symmetric_top(double I2, double I3, double mu, double L, double gravity,
                                double k2, double k3) {
  if (!(I2 > 0.0) || !(I3 > 0.0) || !(mu > 0.0) || !(L > 0.0))
    throw ConfigError("symmetric top needs positive I2, I3, mu and L");
  if (!(gravity >= 0.0)) throw ConfigError("gravity must be non-negative");
  if (I3 > 2.0 * I2 * (1.0 + 1e-12)) throw ConfigError("I3 <= 2 I2 is required for a real body");
  const double n = std::hypot(k2, k3);
  if (!(n > 0.0)) throw ConfigError("plane normal must be non-zero");
  if (k2 < 0.0) throw ConfigError("k2 must be non-negative");
  return {I2, I3, mu, L, gravity, k2 / n, k3 / n};
}

SymmetricNormalization symmetric_top_from(const TopConfig& cfg, double tolerance) {
  const Vec3& I = cfg.inertia;
  if (std::abs(I.x - I.y) > tolerance * (I.x + I.y + I.z))
    throw ConfigError("configuration is not symmetric: I1 != I2");
  const double L = -cfg.fulcrum.z;
  if (!(L > 0.0) || std::hypot(cfg.fulcrum.x, cfg.fulcrum.y) > tolerance * L)
    throw ConfigError("fulcrum must lie on the negative third axis");

  SymmetricNormalization out;
  const Vec3& k = cfg.normal;
  const double k_perp = std::hypot(k.x, k.y);
  if (k.x != 0.0 || k.y < 0.0) {
    // Rotate the principal frame about R3 by phi so that k lands at (0, +k_perp, k3).
    const double phi = std::atan2(k.x, k.y);
    out.frame_change = upright_rotation(phi);
  }
  out.top = make_symmetric_top(I.y, I.z, cfg.mass, L, cfg.gravity, k_perp, k.z);
  return out;
}

TopConfig to_config(const SymmetricTop& top) {
  return make_config({top.I2, top.I2, top.I3}, top.mu, {0.0, 0.0, -top.L}, {0.0, top.k2, top.k3},
                     top.gravity);
}

SymmetricTop conical_symmetric_top(double mu, double h, double r, double k3, double gravity) {
  const TopConfig c = conical_top(mu, h, r, k3, gravity);
  return make_symmetric_top(c.inertia.y, c.inertia.z, mu, -c.fulcrum.z, gravity, c.normal.y,
                            c.normal.z);
}

double alpha_of_gamma(const SymmetricTop& top, double gamma) {
  if (gamma == 0.0) throw std::domain_error("alpha(gamma) has a pole at gamma = 0");
  return (top.I2 - top.I3) * top.k3 / top.I3 * gamma +
         top.mu * top.L * top.gravity / (top.I3 * gamma);
}

std::vector<double> gamma_of_alpha(const SymmetricTop& top, double alpha) {
  // (I2 - I3) k3 gamma^2 - I3 alpha gamma + mu L g = 0
  const double qa = (top.I2 - top.I3) * top.k3;
  const double qb = -top.I3 * alpha;
  const double qc = top.mu * top.L * top.gravity;
  std::vector<double> roots;
  auto keep = [&](double g) {
    if (g != 0.0 && std::isfinite(g)) roots.push_back(g);
  };

  const double scale = std::abs(top.I2) + std::abs(top.I3);
  if (std::abs(qa) <= 1e-15 * scale) {
    if (qb != 0.0) keep(-qc / qb);
    return roots;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  // Discriminants within round-off of zero are the double root.
  if (std::abs(disc) <= 1e-14 * qb * qb) {
    keep(-qb / (2.0 * qa));
    return roots;
  }
  if (disc < 0.0) return roots;
  // Cancellation-free pair of roots.
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  if (q == 0.0) {
    // qb = 0 and qc = 0: gamma = 0 twice, which is excluded.
    return roots;
  }
  keep(q / qa);
  keep(qc / q);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<CriticalFrequencies> critical_frequencies(const SymmetricTop& top) {
  const double p = (top.I2 - top.I3) * top.k3;
  const double b = top.mu * top.L * top.gravity;
  if (!(p > 0.0) || !(b > 0.0)) return std::nullopt;
  CriticalFrequencies c;
  c.gamma_crit = std::sqrt(b / p);
  c.alpha_crit = 2.0 * std::sqrt(p * b) / top.I3;
  return c;
}

std::optional<double> spin_reversal_gamma(const SymmetricTop& top) {
  const double p = (top.I2 - top.I3) * top.k3;
  const double b = top.mu * top.L * top.gravity;
  if (!(p < 0.0) || !(b > 0.0)) return std::nullopt;
  return std::sqrt(b / -p);
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::A_low_above: return "A";
    case Regime::B_high_below: return "B";
    case Regime::C_high_above: return "C";
    case Regime::D_low_below: return "D";
    case Regime::E_totally_symmetric: return "E";
    case Regime::horizontal: return "horizontal";
  }
  return "?";
}

std::string_view regime_description(Regime r) {
  switch (r) {
    case Regime::A_low_above: return "low top above the plane";
    case Regime::B_high_below: return "high top below the plane";
    case Regime::C_high_above: return "high top above the plane";
    case Regime::D_low_below: return "low top below the plane";
    case Regime::E_totally_symmetric: return "totally symmetric top";
    case Regime::horizontal: return "horizontal launch";
  }
  return "?";
}

Regime classify(const SymmetricTop& top, double tolerance) {
  const double c = (top.I2 - top.I3) / top.I3;
  if (std::abs(c) <= tolerance) return Regime::E_totally_symmetric;
  if (std::abs(top.k3) <= tolerance) return Regime::horizontal;
  if (c < 0.0) return top.k3 > 0.0 ? Regime::A_low_above : Regime::D_low_below;
  return top.k3 > 0.0 ? Regime::C_high_above : Regime::B_high_below;
}

RotState analytic_state(const SymmetricTop& top, double gamma, double t) {
  return analytic_state(top, gamma, alpha_of_gamma(top, gamma), t);
}

RotState analytic_state(const SymmetricTop& top, double gamma, double alpha, double t) {
  if (gamma == 0.0) throw std::domain_error("the constant-height family needs gamma != 0");
  const double k2 = top.k2, k3 = top.k3;
  const double cg = std::cos(gamma * t), sg = std::sin(gamma * t);
  const double ca = std::cos(alpha * t), sa = std::sin(alpha * t);
  const double a22 = k2 * k2 + k3 * k3 * cg;
  const double b23 = k2 * k3 * (1.0 - cg);

  RotState s;
  s.t = t;
  s.R.m = {{{cg * ca - k3 * sg * sa, -cg * sa - k3 * sg * ca, k2 * sg},
            {k3 * sg * ca + a22 * sa, -k3 * sg * sa + a22 * ca, b23},
            {-k2 * sg * ca + b23 * sa, k2 * sg * sa + b23 * ca, k3 * k3 + k2 * k2 * cg}}};
  s.omega = {gamma * k2 * sa, gamma * k2 * ca, alpha + k3 * gamma};
  return s;
}

double analytic_sigma(const SymmetricTop& top, double gamma, double alpha) {
  const double k22 = top.k2 * top.k2;
  return top.mu * top.L / (top.I2 + top.mu * top.L * top.L * k22) *
         (top.I2 * top.gravity / top.L - (top.I2 - top.I3) * k22 * top.k3 * gamma * gamma +
          top.I3 * k22 * alpha * gamma);
}

Mat3 upright_rotation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat3 r;
  r.m = {{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
  return r;
}

}  // namespace dtop
