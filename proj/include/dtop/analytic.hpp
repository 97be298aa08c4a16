#pragma once

// Constant-height motions of a symmetric dancing top (I1 = I2, fulcrum on
// the symmetry axis at z = (0, 0, -L), k = (0, k2, k3) with k2 >= 0).
//
// The body turns about its axis with frequency alpha while the fulcrum
// precesses about k with frequency gamma:
//
//   R(t) = R_k(gamma t) R_e3(alpha t)
//   alpha(gamma) = (I2 - I3) k3 gamma / I3 + mu L g / (I3 gamma)
//
// Along such a motion sigma = g mu and the center of mass stays at height
// L k3 above the plane.

#include <optional>
#include <string_view>
#include <vector>

#include "dtop/model.hpp"

namespace dtop {

struct SymmetricTop {
  double I2 = 0.0;  // = I1
  double I3 = 0.0;
  double mu = 0.0;
  double L = 0.0;
  double gravity = 0.0;
  double k2 = 0.0;
  double k3 = 1.0;
};

/// Validates positivity and normalizes (k2, k3) to unit length. Throws
/// ConfigError for k2 < 0; use symmetric_top_from() to bring an arbitrary
/// normal into the k2 >= 0 convention.
SymmetricTop make_symmetric_top(double I2, double I3, double mu, double L, double gravity,
                                double k2, double k3);

struct SymmetricNormalization {
  SymmetricTop top;
  /// Rotation about the third axis applied to the principal frame so that
  /// k = (0, k2, k3) with k2 >= 0. Identity when no change was needed.
  Mat3 frame_change = Mat3::identity();
};

/// Extracts the symmetric-top parameters from a TopConfig. Throws
/// ConfigError unless I1 = I2 and z = (0, 0, -L) with L > 0.
SymmetricNormalization symmetric_top_from(const TopConfig& cfg, double tolerance = 1e-12);

TopConfig to_config(const SymmetricTop& top);

/// Cone of mass mu, height h, radius r, inclination cosine k3.
SymmetricTop conical_symmetric_top(double mu, double h, double r, double k3, double gravity);

/// alpha(gamma). Throws std::domain_error for gamma = 0.
double alpha_of_gamma(const SymmetricTop& top, double gamma);

/// Real non-zero precession frequencies for a given spin, ascending.
/// Empty when no constant-height motion exists.
std::vector<double> gamma_of_alpha(const SymmetricTop& top, double alpha);

struct CriticalFrequencies {
  double gamma_crit = 0.0;
  double alpha_crit = 0.0;
};

/// Tangency point of alpha(gamma) for (I2 - I3) k3 > 0: the minimal spin
/// (gamma > 0 branch) that admits a constant-height motion. nullopt
/// otherwise.
std::optional<CriticalFrequencies> critical_frequencies(const SymmetricTop& top);

/// For (I2 - I3) k3 < 0 the spin changes sign at
/// gamma = sqrt(mu L g / |(I2 - I3) k3|): the fulcrum precesses without
/// rotation of the top. nullopt otherwise.
std::optional<double> spin_reversal_gamma(const SymmetricTop& top);

enum class Regime {
  A_low_above,
  B_high_below,
  C_high_above,
  D_low_below,
  E_totally_symmetric,
  horizontal,
};

std::string_view regime_name(Regime r);
std::string_view regime_description(Regime r);

/// Regime from the sign of C = (I2 - I3) / I3 and of k3. E takes precedence
/// over horizontal.
Regime classify(const SymmetricTop& top, double tolerance = 1e-12);

/// Exact state at time t with alpha = alpha_of_gamma(gamma).
RotState analytic_state(const SymmetricTop& top, double gamma, double t);

/// The same family with an explicitly supplied spin. For alpha other than
/// alpha_of_gamma(gamma) this is not a solution of the equations of motion.
RotState analytic_state(const SymmetricTop& top, double gamma, double alpha, double t);

/// sigma along the family, sigma = mu L / (I2 + mu L^2 k2^2) *
/// (I2 g / L - (I2 - I3) k2^2 k3 gamma^2 + I3 k2^2 alpha gamma).
double analytic_sigma(const SymmetricTop& top, double gamma, double alpha);

/// Single-frequency rotation about the third axis by angle phi.
Mat3 upright_rotation(double phi);

inline constexpr double kRadPerRev = 6.283185307179586;
inline double to_rev_per_s(double rad_per_s) { return rad_per_s / kRadPerRev; }

}  // namespace dtop
