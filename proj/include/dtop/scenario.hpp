#pragma once

// Scenario files: flat `key = value` text with [sections], `#` comments.
//
// Exactly one body source section is required:
//
//   [cone]    mu, h, r, k3, a
//   [points]  file, fulcrum, a, k            (file relative to the scenario)
//   [top]     I1, I2, I3, mu, z, k, a         (vectors as "x y z")
//
// Optional sections:
//
//   [initial]     omega = x y z | gamma = <rad/s> (symmetric tops only),
//                 p_perp, v_perp
//   [integrator]  method = rk4|jet, dt, steps, stride, projection = polar|none,
//                 jet_order, periods (with gamma and without dt:
//                 dt = periods * 2 pi / |gamma| / steps)
//   [output]      csv, svg

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dtop/analytic.hpp"
#include "dtop/integrate.hpp"
#include "dtop/model.hpp"

namespace dtop {

struct Scenario {
  TopConfig config;
  /// Set for [cone] sources and symmetric [top]/[points] sources.
  std::optional<SymmetricTop> symmetric;
  /// Set when the initial data come from the constant-height family.
  std::optional<double> analytic_gamma;
  RotState initial;
  CoMState com;
  IntegratorSettings settings;
  std::string csv_path;
  std::string svg_path;
};

/// Parses a scenario. Throws ConfigError with the offending key on error.
Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir = ".");
Scenario load_scenario(const std::filesystem::path& path);

/// Parses "x y z" (commas also accepted).
Vec3 parse_vec3(const std::string& text);

}  // namespace dtop
