// dtop: command-line front end for the dancing-top library.
//
//   dtop body --points cloud.txt [--fulcrum 0] [--a 9.8] [--normal "0 0 1"]
//             [--degeneracy-tol 1e-9]
//   dtop simulate --config scenario.ini [--out traj.csv] [--svg] [--dt ..] ...
//   dtop frequencies (--config scenario.ini | --mu .. --height .. --radius .. --k3 ..)
//                    (--gamma lo:hi:n | --alpha lo:hi:n)
//   dtop verify [--config scenario.ini] [--detune 0.01]
//
// Exit codes: 0 success, 1 numeric or verification failure, 2 usage or
// configuration error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtop/acceptance.hpp"
#include "dtop/analytic.hpp"
#include "dtop/errors.hpp"
#include "dtop/integrate.hpp"
#include "dtop/io.hpp"
#include "dtop/model.hpp"
#include "dtop/scenario.hpp"
#include "dtop/sweep.hpp"

namespace {

using namespace dtop;

constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kUsageError = 2;

struct Range {
  double lo = 0.0, hi = 0.0;
  int n = 0;

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
  }
};

Range parse_range(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == ':') c = ' ';
  std::istringstream in(s);
  Range r;
  std::string rest;
  if (!(in >> r.lo >> r.hi >> r.n) || (in >> rest) || r.n < 1)
    throw ConfigError("range must be lo:hi:n with n >= 1, got '" + text + "'");
  return r;
}

std::ostream* open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  return &file;
}

struct BodyArgs {
  std::string points;
  std::size_t fulcrum = 0;
  double gravity = 9.8;
  std::string normal = "0 0 1";
  double degeneracy = BuildOptions{}.degeneracy_tolerance;
  std::string out;
};

int run_body(const BodyArgs& a) {
  BodySpec spec;
  spec.points = read_point_cloud(std::filesystem::path(a.points));
  spec.fulcrum_index = a.fulcrum;
  spec.gravity = a.gravity;
  spec.plane_normal = parse_vec3(a.normal);
  BuildOptions opt;
  opt.degeneracy_tolerance = a.degeneracy;
  const BodyFrame body = build_config(spec, opt);
  std::ofstream file;
  std::ostream& out = *open_output(a.out, file);
  out << "# " << spec.points.size() << " points, fulcrum index " << a.fulcrum << '\n';
  write_body_block(out, body);
  return kOk;
}

struct SimulateArgs {
  std::string config;
  std::string out;
  bool svg = false;
  std::optional<double> dt;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> stride;
  std::optional<int> jet_order;
  bool no_projection = false;
};

std::string svg_path_for(const std::string& csv) {
  if (csv.empty() || csv == "-") return "trajectory.svg";
  return std::filesystem::path(csv).replace_extension(".svg").string();
}

int run_simulate(const SimulateArgs& a) {
  Scenario sc = load_scenario(a.config);
  auto& st = sc.settings;
  if (a.steps) {
    // With `periods` the step size follows the step count.
    if (sc.analytic_gamma && !a.dt) st.dt *= static_cast<double>(st.steps) / static_cast<double>(*a.steps);
    st.steps = *a.steps;
  }
  if (a.dt) st.dt = *a.dt;
  if (a.stride) st.stride = *a.stride;
  if (a.jet_order) {
    st.method = Method::jet;
    st.jet_order = *a.jet_order;
  }
  if (a.no_projection) st.projection = Projection::none;
  const std::string csv = a.out.empty() ? sc.csv_path : a.out;
  std::string svg = sc.svg_path;
  if (a.svg) svg = svg.empty() ? svg_path_for(csv) : svg;

  Trajectory traj;
  int rc = kOk;
  std::string failure;
  try {
    traj = simulate(sc.config, sc.initial, sc.com, st);
  } catch (const SimulationAborted& e) {
    traj = e.partial();
    failure = e.what();
    rc = kNumericFailure;
  }
  for (const auto& w : traj.warnings) std::cerr << "warning: " << w << '\n';

  std::ofstream file;
  std::ostream& out = *open_output(csv, file);
  write_trajectory_csv(out, sc.config, traj);
  out.flush();
  if (!svg.empty()) {
    std::ofstream s(svg);
    if (!s) throw ConfigError("cannot write '" + svg + "'");
    write_trajectory_svg(s, sc.config, traj);
  }
  if (rc != kOk)
    std::cerr << "error: " << failure << " (" << traj.samples.size() << " samples written)\n";
  return rc;
}

struct FrequencyArgs {
  std::string config;
  std::optional<double> mu, h, r, k3;
  double gravity = 9.8;
  std::string gamma;
  std::string alpha;
  std::string out;
};

std::string rotation_sense(double alpha) {
  if (alpha > 0.0) return "clockwise";
  if (alpha < 0.0) return "counterclockwise";
  return "none";
}

int run_frequencies(const FrequencyArgs& a) {
  SymmetricTop top;
  if (!a.config.empty()) {
    const Scenario sc = load_scenario(a.config);
    if (!sc.symmetric) throw ConfigError("frequencies need a symmetric top with the fulcrum on its axis");
    top = *sc.symmetric;
  } else {
    if (!a.mu || !a.h || !a.r || !a.k3)
      throw ConfigError("give --config or all of --mu, --height, --radius, --k3");
    top = conical_symmetric_top(*a.mu, *a.h, *a.r, *a.k3, a.gravity);
  }
  if (a.gamma.empty() == a.alpha.empty()) throw ConfigError("give exactly one of --gamma, --alpha");

  std::ofstream file;
  std::ostream& out = *open_output(a.out, file);
  const Regime regime = classify(top);
  out << "# regime " << regime_name(regime) << ": " << regime_description(regime) << '\n';
  out << "# I2=" << format_number(top.I2) << " I3=" << format_number(top.I3)
      << " mu=" << format_number(top.mu) << " L=" << format_number(top.L)
      << " k2=" << format_number(top.k2) << " k3=" << format_number(top.k3) << '\n';
  if (const auto c = critical_frequencies(top))
    out << "# critical gamma=" << format_number(c->gamma_crit) << " rad/s ("
        << format_number(to_rev_per_s(c->gamma_crit)) << " rev/s) alpha="
        << format_number(c->alpha_crit) << " rad/s (" << format_number(to_rev_per_s(c->alpha_crit))
        << " rev/s)\n";
  if (const auto g = spin_reversal_gamma(top))
    out << "# spin reversal at gamma=" << format_number(*g) << " rad/s ("
        << format_number(to_rev_per_s(*g)) << " rev/s)\n";

  if (!a.gamma.empty()) {
    std::vector<double> gammas;
    for (double g : parse_range(a.gamma).values())
      if (g != 0.0) gammas.push_back(g);
    out << "gamma_rad_s,gamma_rev_s,alpha_rad_s,alpha_rev_s,sense\n";
    for (const auto& row : alpha_table(top, gammas, Execution::parallel))
      out << format_number(row.gamma) << ',' << format_number(to_rev_per_s(row.gamma)) << ','
          << format_number(row.alpha) << ',' << format_number(to_rev_per_s(row.alpha)) << ','
          << rotation_sense(row.alpha) << '\n';
  } else {
    const std::vector<double> alphas = parse_range(a.alpha).values();
    out << "alpha_rad_s,alpha_rev_s,roots,gamma1_rad_s,gamma1_rev_s,gamma2_rad_s,gamma2_rev_s\n";
    for (const auto& row : gamma_table(top, alphas, Execution::parallel)) {
      out << format_number(row.alpha) << ',' << format_number(to_rev_per_s(row.alpha)) << ','
          << row.gammas.size();
      for (std::size_t i = 0; i < 2; ++i) {
        if (i < row.gammas.size())
          out << ',' << format_number(row.gammas[i]) << ','
              << format_number(to_rev_per_s(row.gammas[i]));
        else
          out << ",,";
      }
      out << '\n';
    }
  }
  return kOk;
}

struct VerifyArgs {
  std::string config;
  double detune = 0.0;
  bool serial = false;
};

// Simulates a scenario with analytic initial data and compares the endpoint
// with the exact constant-height motion.
bool verify_scenario(const Scenario& sc, std::ostream& out) {
  if (!sc.symmetric || !sc.analytic_gamma) {
    out << "scenario=skipped reason=no_analytic_initial_data\n";
    return true;
  }
  const Trajectory traj = simulate(sc.config, sc.initial, sc.com, sc.settings);
  const Sample& last = traj.samples.back();
  const RotState exact = analytic_state(*sc.symmetric, *sc.analytic_gamma, last.rot.t);
  const double err = frobenius_norm(last.rot.R - exact.R);
  const double h0 = sc.symmetric->L * sc.symmetric->k3;
  double alt = 0.0;
  for (const auto& s : traj.samples)
    alt = std::max(alt, std::abs(com_altitude(sc.config, s.rot) - h0));
  const bool pass = err <= 1e-6 && alt <= 1e-6 * sc.symmetric->L;
  out << "scenario=analytic status=" << (pass ? "PASS" : "FAIL")
      << " endpoint_frobenius_error=" << format_number(err)
      << " max_altitude_deviation=" << format_number(alt) << '\n';
  return pass;
}

int run_verify(const VerifyArgs& a) {
  std::optional<Scenario> sc;
  if (!a.config.empty()) sc = load_scenario(a.config);
  AcceptanceOptions opt;
  opt.sigma_detune = a.detune;
  opt.execution = a.serial ? Execution::serial : Execution::parallel;
  bool all = true;
  for (const auto& r : run_acceptance(opt)) {
    print_result(std::cout, r);
    all = all && r.pass;
  }
  if (sc) all = verify_scenario(*sc, std::cout) && all;
  std::cout << "summary status=" << (all ? "PASS" : "FAIL") << '\n';
  return all ? kOk : kNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation of a heavy top whose tip slides on a frictionless plane"};
  app.require_subcommand(1);

  BodyArgs body;
  auto* body_cmd = app.add_subcommand("body", "Principal frame and moments of a point cloud");
  body_cmd->add_option("--points,points", body.points, "Point cloud: `mass x y z` per line")
      ->required()
      ->check(CLI::ExistingFile);
  body_cmd->add_option("--fulcrum", body.fulcrum, "Index of the point touching the plane");
  body_cmd->add_option("--a", body.gravity, "Gravitational acceleration [m/s^2]");
  body_cmd->add_option("--normal", body.normal, "Plane normal k in the cloud's frame");
  body_cmd->add_option("--degeneracy-tol", body.degeneracy,
                       "Relative moment gap below which two axes count as degenerate")
      ->check(CLI::PositiveNumber);
  body_cmd->add_option("--out", body.out, "Output file (default stdout)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Integrate a scenario and write a CSV trajectory");
  sim_cmd->add_option("--config", sim.config, "Scenario file")->required();
  sim_cmd->add_option("--out", sim.out, "CSV output (default: scenario [output] csv, else stdout)");
  sim_cmd->add_flag("--svg", sim.svg, "Also write altitude and sigma charts next to the CSV");
  sim_cmd->add_option("--dt", sim.dt, "Step size [s]")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--steps", sim.steps, "Number of steps")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--stride", sim.stride, "Record every n-th step")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--jet-order", sim.jet_order, "Use the Taylor stepper of this order");
  sim_cmd->add_flag("--no-projection", sim.no_projection, "Skip the polar projection after RK4 steps");

  FrequencyArgs freq;
  auto* freq_cmd = app.add_subcommand("frequencies", "Spin/precession table of the constant-height family");
  freq_cmd->add_option("--config", freq.config, "Scenario with a symmetric top");
  freq_cmd->add_option("--mu", freq.mu, "Cone mass [kg]");
  freq_cmd->add_option("--height", freq.h, "Cone height [m]");
  freq_cmd->add_option("--radius", freq.r, "Cone base radius [m]");
  freq_cmd->add_option("--k3", freq.k3, "Cosine of the axis inclination");
  freq_cmd->add_option("--a", freq.gravity, "Gravitational acceleration [m/s^2]");
  freq_cmd->add_option("--gamma", freq.gamma, "Precession sweep lo:hi:n [rad/s]");
  freq_cmd->add_option("--alpha", freq.alpha, "Spin sweep lo:hi:n [rad/s]");
  freq_cmd->add_option("--out", freq.out, "Output file (default stdout)");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the acceptance checks");
  ver_cmd->add_option("--config", ver.config, "Also check this scenario against the exact motion");
  ver_cmd->add_option("--detune", ver.detune, "Relative spin detuning in the sigma check");
  ver_cmd->add_flag("--serial", ver.serial, "Use the serial kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsageError;
  }

  try {
    if (*body_cmd) return run_body(body);
    if (*sim_cmd) return run_simulate(sim);
    if (*freq_cmd) return run_frequencies(freq);
    if (*ver_cmd) return run_verify(ver);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kUsageError;
}
