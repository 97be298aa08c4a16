#include "dtop/acceptance.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "dtop/analytic.hpp"
#include "dtop/dynamics.hpp"
#include "dtop/integrate.hpp"
#include "dtop/io.hpp"
#include "dtop/jet.hpp"

namespace dtop {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vec3 v{n(rng), n(rng), n(rng)};
    const double l = norm(v);
    if (l > 1e-3) return v / l;
  }
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return axis_angle(random_unit(rng), angle(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Asymmetric top with distinct moments well inside the triangle inequalities.
TopConfig random_asymmetric_top(std::mt19937_64& rng) {
  const Vec3 I{uniform(rng, 1.0, 1.5), uniform(rng, 1.8, 2.3), uniform(rng, 2.6, 3.0)};
  const double mu = uniform(rng, 1.0, 5.0);
  const Vec3 z = uniform(rng, 0.2, 0.8) * random_unit(rng);
  return make_config(I, mu, z, random_unit(rng), 9.8);
}

double state_distance(const RotState& a, const RotState& b) {
  const Mat3 dR = a.R - b.R;
  const Vec3 dw = a.omega - b.omega;
  return std::sqrt(frobenius_norm(dR) * frobenius_norm(dR) + dot(dw, dw));
}

double state_norm(const RotState& a) {
  const double r = frobenius_norm(a.R);
  return std::sqrt(r * r + dot(a.omega, a.omega));
}

RotState propagate(const TopConfig& cfg, RotState s, double dt, std::int64_t steps, Method m,
                   int order) {
  for (std::int64_t i = 0; i < steps; ++i)
    s = m == Method::rk4 ? step_rk4(cfg, s, dt, Projection::none)
                         : step_jet(cfg, s, dt, order, Jet::kMaxDegree);
  return s;
}

struct FlowProblem {
  TopConfig cfg;
  RotState s0;
};

FlowProblem generic_problem() {
  std::mt19937_64 rng(20240611);
  FlowProblem p{random_asymmetric_top(rng), {}};
  p.s0.R = random_rotation(rng);
  p.s0.omega = 3.0 * random_unit(rng);
  return p;
}

}  // namespace

double CriterionResult::value(const std::string& key) const {
  for (const auto& [k, v] : measured)
    if (k == key) return v;
  return std::nan("");
}

CriterionResult check_skater(const AcceptanceOptions&) {
  CriterionResult r{1, "skater_reproduction", false, {}};
  const SymmetricTop top = conical_symmetric_top(70.0, 1.7, 0.2, std::cos(kPi / 4.0), 9.8);
  const auto crit = critical_frequencies(top);
  if (!crit) return r;
  const double alpha_err = std::abs(crit->alpha_crit - 158.45) / 158.45;
  const double gamma_rev = to_rev_per_s(crit->gamma_crit);
  const double gamma_err = std::abs(gamma_rev - 2.1) / 2.1;
  r.measured = {{"alpha_crit_rad_s", crit->alpha_crit},
                {"alpha_crit_rev_s", to_rev_per_s(crit->alpha_crit)},
                {"gamma_crit_rad_s", crit->gamma_crit},
                {"gamma_crit_rev_s", gamma_rev},
                {"alpha_rel_err", alpha_err},
                {"gamma_rel_err", gamma_err}};
  r.pass = alpha_err <= 0.005 && gamma_err <= 0.02;
  return r;
}

CriterionResult check_sigma_constancy(const AcceptanceOptions& opt) {
  CriterionResult r{2, "sigma_constancy", false, {}};
  const double c45 = 0.6;
  // One cone per regime A..E.
  const std::array<SymmetricTop, 5> tops{
      conical_symmetric_top(1.0, 0.2, 0.3, c45, 9.8),    // A: low, above
      conical_symmetric_top(1.0, 1.0, 0.2, -c45, 9.8),   // B: high, below
      conical_symmetric_top(1.0, 1.0, 0.2, c45, 9.8),    // C: high, above
      conical_symmetric_top(1.0, 0.2, 0.3, -c45, 9.8),   // D: low, below
      conical_symmetric_top(2.0, 0.4, 0.2, c45, 9.8),    // E: h = 2r
  };
  constexpr std::array<double, 3> kGammaFactors{0.5, 1.7, 3.1};
  constexpr int kSamples = 2000;

  double worst = 0.0;
  double weakest_control = std::numeric_limits<double>::infinity();
  bool regimes_ok = true;
  constexpr std::array<Regime, 5> kExpected{Regime::A_low_above, Regime::B_high_below,
                                            Regime::C_high_above, Regime::D_low_below,
                                            Regime::E_totally_symmetric};
  for (std::size_t i = 0; i < tops.size(); ++i) {
    const SymmetricTop& top = tops[i];
    regimes_ok = regimes_ok && classify(top) == kExpected[i];
    const double b = top.mu * top.L * top.gravity;
    const double p = kExpected[i] == Regime::E_totally_symmetric
                         ? top.I3
                         : std::abs((top.I2 - top.I3) * top.k3);
    const double scale = std::sqrt(b / p);
    for (double f : kGammaFactors) {
      const double gamma = f * scale;
      const double alpha = alpha_of_gamma(top, gamma);
      const double period = 2.0 * kPi / gamma;
      std::vector<double> times(kSamples);
      for (int j = 0; j < kSamples; ++j) times[static_cast<std::size_t>(j)] = period * j / kSamples;
      const double dev = max_sigma_deviation(top, gamma, alpha * (1.0 + opt.sigma_detune), times,
                                             opt.execution);
      const double control = max_sigma_deviation(top, gamma, alpha * 1.01, times, opt.execution);
      worst = std::max(worst, dev);
      weakest_control = std::min(weakest_control, control);
    }
  }
  r.measured = {{"max_rel_deviation", worst},
                {"min_detuned_deviation", weakest_control},
                {"regimes_ok", regimes_ok ? 1.0 : 0.0}};
  r.pass = regimes_ok && worst <= 1e-10 && weakest_control > 1e-3;
  return r;
}

CriterionResult check_numeric_vs_analytic(const AcceptanceOptions&) {
  CriterionResult r{3, "numeric_vs_analytic", false, {}};
  const SymmetricTop top = conical_symmetric_top(70.0, 1.7, 0.2, std::cos(kPi / 4.0), 9.8);
  const auto crit = critical_frequencies(top);
  if (!crit) return r;
  const double gamma = crit->gamma_crit;
  const double period = 2.0 * kPi / gamma;
  IntegratorSettings st;
  st.steps = 10000;
  st.dt = period / static_cast<double>(st.steps);
  st.stride = 10;
  const TopConfig cfg = to_config(top);
  const Trajectory traj = simulate(cfg, analytic_state(top, gamma, 0.0), {}, st);
  const RotState exact = analytic_state(top, gamma, period);
  const double err = frobenius_norm(traj.samples.back().rot.R - exact.R);
  const double h0 = top.L * top.k3;
  double alt_dev = 0.0, sigma_dev = 0.0;
  for (const auto& s : traj.samples) {
    alt_dev = std::max(alt_dev, std::abs(com_altitude(cfg, s.rot) - h0));
    sigma_dev = std::max(sigma_dev, std::abs(s.diag.sigma / (top.gravity * top.mu) - 1.0));
  }
  r.measured = {{"endpoint_frobenius_error", err},
                {"max_altitude_deviation_over_L", alt_dev / top.L},
                {"max_sigma_rel_deviation", sigma_dev},
                {"dt", st.dt}};
  r.pass = err <= 1e-6 && alt_dev <= 1e-6 * top.L;
  return r;
}

CriterionResult check_conservation(const AcceptanceOptions& opt) {
  CriterionResult r{4, "conservation_drift", false, {}};
  std::mt19937_64 rng(7);
  std::vector<SimulationJob> jobs;
  constexpr int kTops = 6;
  for (int i = 0; i < kTops; ++i) {
    SimulationJob job;
    job.config = random_asymmetric_top(rng);
    job.initial.omega = uniform(rng, 2.0, 10.0) * random_unit(rng);
    job.settings.steps = 10000;
    job.settings.stride = 1;
    job.settings.dt = 1e-3 / norm(job.initial.omega);
    jobs.push_back(job);
  }
  const auto summaries = simulate_batch(jobs, opt.execution);
  double e_drift = 0.0, l_drift = 0.0, orth = 0.0;
  for (const auto& s : summaries) {
    e_drift = std::max(e_drift, s.max_energy_drift);
    l_drift = std::max(l_drift, s.max_momentum_drift);
    orth = std::max(orth, s.max_orth_residual);
  }

  // Symmetric top with the fulcrum on the axis: Omega3 is an integral.
  const TopConfig sym = make_config({2.0, 2.0, 1.2}, 3.0, {0.0, 0.0, -0.6},
                                    random_unit(rng), 9.8);
  RotState s0;
  s0.omega = {1.5, -2.0, 6.0};
  IntegratorSettings st;
  st.steps = 10000;
  st.dt = 1e-3 / norm(s0.omega);
  const Trajectory traj = simulate(sym, s0, {}, st);
  double omega3_dev = 0.0;
  for (const auto& smp : traj.samples) {
    omega3_dev = std::max(omega3_dev, std::abs(smp.rot.omega.z - s0.omega.z) / std::abs(s0.omega.z));
    orth = std::max(orth, smp.diag.orth_residual);
  }
  const SimulationSummary sym_summary = summarize(traj);
  e_drift = std::max(e_drift, sym_summary.max_energy_drift);
  l_drift = std::max(l_drift, sym_summary.max_momentum_drift);

  r.measured = {{"max_energy_drift", e_drift},
                {"max_momentum_k_drift", l_drift},
                {"max_omega3_rel_drift", omega3_dev},
                {"max_orth_residual", orth}};
  r.pass = e_drift <= 1e-8 && l_drift <= 1e-8 && omega3_dev <= 1e-10 && orth <= 1e-12;
  return r;
}

CriterionResult check_flow_exponential(const AcceptanceOptions&) {
  CriterionResult r{5, "flow_exponential", false, {}};
  const FlowProblem p = generic_problem();

  // Single K = 8 step against 100 RK4 substeps.
  const double dt = 0.05;
  const RotState jet = step_jet(p.cfg, p.s0, dt, 8);
  const RotState ref = propagate(p.cfg, p.s0, dt / 100.0, 100, Method::rk4, 0);
  const double single = state_distance(jet, ref) / state_norm(ref);

  // Convergence orders over a fixed horizon, errors against an independent
  // fine reference (RK4 for the jet stepper and vice versa).
  const double horizon = 0.4;
  const RotState fine_rk4 = propagate(p.cfg, p.s0, horizon / 8000.0, 8000, Method::rk4, 0);
  const RotState fine_jet = propagate(p.cfg, p.s0, horizon / 200.0, 200, Method::jet, 16);
  auto slope = [&](Method m, int order, std::int64_t n) {
    const RotState& truth = m == Method::rk4 ? fine_jet : fine_rk4;
    const double e1 = state_distance(propagate(p.cfg, p.s0, horizon / n, n, m, order), truth);
    const double e2 =
        state_distance(propagate(p.cfg, p.s0, horizon / (2 * n), 2 * n, m, order), truth);
    return std::log2(e1 / e2);
  };

  r.measured = {{"single_step_rel_diff", single}};
  bool orders_ok = true;
  const double rk4_slope = slope(Method::rk4, 0, 20);
  r.measured.emplace_back("rk4_slope", rk4_slope);
  orders_ok = orders_ok && std::abs(rk4_slope - 4.0) <= 0.2;
  struct OrderCase {
    int order;
    std::int64_t steps;
  };
  constexpr std::array<OrderCase, 5> kCases{{{1, 4000}, {2, 400}, {4, 40}, {6, 10}, {8, 4}}};
  for (const auto& c : kCases) {
    const double s = slope(Method::jet, c.order, c.steps);
    r.measured.emplace_back("jet" + std::to_string(c.order) + "_slope", s);
    orders_ok = orders_ok && std::abs(s - c.order) <= 0.2;
  }
  r.pass = single <= 1e-10 && orders_ok;
  return r;
}

CriterionResult check_inverse_relation(const AcceptanceOptions&) {
  CriterionResult r{6, "inverse_relation_round_trip", false, {}};
  std::mt19937_64 rng(99);
  double worst = 0.0;
  int missing = 0, spurious = 0;
  constexpr int kTops = 1000;
  for (int i = 0; i < kTops; ++i) {
    const double rr = uniform(rng, 0.05, 0.5);
    const double h = uniform(rng, 2.2, 8.0) * rr;  // h > 2r: high top
    const SymmetricTop top = conical_symmetric_top(uniform(rng, 0.5, 100.0), h, rr,
                                                   uniform(rng, 0.05, 1.0), uniform(rng, 1.0, 20.0));
    const auto crit = critical_frequencies(top);
    if (!crit || classify(top) != Regime::C_high_above) {
      ++missing;
      continue;
    }
    const double above = crit->alpha_crit * (1.0 + uniform(rng, 1e-6, 3.0));
    const auto roots = gamma_of_alpha(top, above);
    if (roots.size() != 2) ++missing;
    for (double g : roots) {
      if (!(g > 0.0)) ++spurious;
      worst = std::max(worst, std::abs(alpha_of_gamma(top, g) - above) / std::abs(above));
    }
    const double below = crit->alpha_crit * (1.0 - uniform(rng, 1e-6, 1.0));
    if (!gamma_of_alpha(top, below).empty()) ++spurious;
  }
  r.measured = {{"max_round_trip_rel_err", worst},
                {"missing_roots", static_cast<double>(missing)},
                {"spurious_roots", static_cast<double>(spurious)}};
  r.pass = worst <= 1e-12 && missing == 0 && spurious == 0;
  return r;
}

CriterionResult check_reductions(const AcceptanceOptions&) {
  CriterionResult r{7, "free_body_and_upright", false, {}};
  const TopConfig free_top = make_config({1.1, 2.0, 2.7}, 2.0, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, 0.0);
  RotState s0;
  s0.omega = {3.0, 0.4, -1.2};
  IntegratorSettings st;
  st.steps = 10000;
  st.dt = 1e-3 / norm(s0.omega);
  const Trajectory traj = simulate(free_top, s0, {}, st);
  auto momentum2 = [&](const Vec3& w) {
    const Vec3 m = hadamard(free_top.inertia, w);
    return dot(m, m);
  };
  auto kinetic = [&](const Vec3& w) { return 0.5 * dot(w, hadamard(free_top.inertia, w)); };
  const double m0 = momentum2(s0.omega), t0 = kinetic(s0.omega);
  double m_dev = 0.0, t_dev = 0.0;
  for (const auto& smp : traj.samples) {
    m_dev = std::max(m_dev, std::abs(momentum2(smp.rot.omega) - m0) / m0);
    t_dev = std::max(t_dev, std::abs(kinetic(smp.rot.omega) - t0) / t0);
  }

  // Vertical launch: k = e3 reduces the family to a single-frequency rotation.
  double upright = 0.0;
  const SymmetricTop vertical = conical_symmetric_top(1.0, 0.6, 0.3, 1.0, 9.8);
  for (double gamma : {0.7, 3.0, 11.0}) {
    const double phi = alpha_of_gamma(vertical, gamma) + gamma;
    for (double t : {0.0, 0.013, 0.1, 0.2}) {
      const Mat3 d = analytic_state(vertical, gamma, t).R - upright_rotation(phi * t);
      for (const auto& row : d.m)
        for (double v : row) upright = std::max(upright, std::abs(v));
    }
  }
  r.measured = {{"momentum2_rel_drift", m_dev},
                {"kinetic_rel_drift", t_dev},
                {"upright_max_abs_diff", upright}};
  r.pass = m_dev <= 1e-10 && t_dev <= 1e-10 && upright <= 1e-14;
  return r;
}

CriterionResult check_body_builder(const AcceptanceOptions&) {
  CriterionResult r{8, "body_builder", false, {}};
  const double mu = 70.0, h = 1.7, rad = 0.2;
  const BodySpec cloud = sample_cone(mu, h, rad, 20000, 9.8, {0.0, 0.0, 1.0});
  const BodyFrame body = build_config(cloud);
  const TopConfig exact = conical_top(mu, h, rad, 1.0, 9.8);
  // Unique moment is the smallest for a high cone; compare sorted.
  std::array<double, 3> got{body.config.inertia.x, body.config.inertia.y, body.config.inertia.z};
  std::array<double, 3> want{exact.inertia.x, exact.inertia.y, exact.inertia.z};
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  double moment_err = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    moment_err = std::max(moment_err, std::abs(got[i] - want[i]) / want[i]);
  const double fulcrum_err = std::abs(norm(body.config.fulcrum) - 0.75 * h) / (0.75 * h);

  std::mt19937_64 rng(3);
  const Mat3 q = random_rotation(rng);
  BodySpec rotated = cloud;
  for (auto& p : rotated.points) p.position = q * p.position + Vec3{0.3, -1.0, 2.0};
  rotated.plane_normal = q * cloud.plane_normal;
  const BodyFrame rb = build_config(rotated);
  std::array<double, 3> got_rot{rb.config.inertia.x, rb.config.inertia.y, rb.config.inertia.z};
  std::sort(got_rot.begin(), got_rot.end());
  double invariance = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    invariance = std::max(invariance, std::abs(got_rot[i] - got[i]) / got[i]);

  r.measured = {{"max_moment_rel_err", moment_err},
                {"fulcrum_distance_rel_err", fulcrum_err},
                {"rotation_invariance_rel_err", invariance},
                {"points", static_cast<double>(cloud.points.size())}};
  r.pass = moment_err <= 0.01 && fulcrum_err <= 0.01 && invariance <= 1e-10;
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  return {check_skater(opt),           check_sigma_constancy(opt), check_numeric_vs_analytic(opt),
          check_conservation(opt),     check_flow_exponential(opt), check_inverse_relation(opt),
          check_reductions(opt),       check_body_builder(opt)};
}

void print_result(std::ostream& out, const CriterionResult& r) {
  std::string line = "criterion=" + std::to_string(r.id) + " name=" + r.name +
                     " status=" + (r.pass ? "PASS" : "FAIL");
  for (const auto& [k, v] : r.measured) line += " " + k + "=" + format_number(v);
  out << line << '\n';
}

}  // namespace dtop
