#include "dtop/integrate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dtop/jet.hpp"

namespace dtop {

namespace {

void check_finite(const RotState& s, std::int64_t step) {
  if (!all_finite(s.R) || !all_finite(s.omega) || !std::isfinite(s.t))
    throw NumericError("non-finite state", step);
}

struct Derivative {
  Mat3 dR;
  Vec3 dOmega;
};

Derivative eval(const TopConfig& cfg, const Mat3& R, const Vec3& w) {
  const auto r = rhs<double>(cfg, R, w);
  return {r.dR, r.dOmega};
}

}  // namespace

Mat3 project_polar(const Mat3& R, int iterations) {
  Mat3 out = R;
  for (int i = 0; i < iterations; ++i)
    out = 0.5 * (out * (3.0 * Mat3::identity() - out.transposed() * out));
  return out;
}

RotState step_rk4(const TopConfig& cfg, const RotState& s, double dt, Projection projection,
                  std::int64_t step_index) {
  const double h2 = 0.5 * dt;
  const Derivative k1 = eval(cfg, s.R, s.omega);
  const Derivative k2 = eval(cfg, s.R + h2 * k1.dR, s.omega + h2 * k1.dOmega);
  const Derivative k3 = eval(cfg, s.R + h2 * k2.dR, s.omega + h2 * k2.dOmega);
  const Derivative k4 = eval(cfg, s.R + dt * k3.dR, s.omega + dt * k3.dOmega);

  const double w = dt / 6.0;
  RotState out;
  out.t = s.t + dt;
  out.R = s.R + w * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR);
  out.omega = s.omega + w * (k1.dOmega + 2.0 * k2.dOmega + 2.0 * k3.dOmega + k4.dOmega);
  if (projection == Projection::polar_iterative) out.R = project_polar(out.R);
  check_finite(out, step_index);
  return out;
}

TaylorCoefficients taylor_coefficients(const TopConfig& cfg, const RotState& s, int order) {
  if (order < 0 || order > Jet::kMaxDegree)
    throw std::invalid_argument("Taylor order out of range");
  TaylorCoefficients c;
  c.R.assign(static_cast<std::size_t>(order) + 1, Mat3{});
  c.omega.assign(static_cast<std::size_t>(order) + 1, Vec3{});
  c.R[0] = s.R;
  c.omega[0] = s.omega;

  // Coefficient m+1 of the state is coefficient m of f(state) divided by m+1,
  // and the latter only needs state coefficients up to m.
  for (int m = 0; m < order; ++m) {
    Mat3T<Jet> Rj;
    Vec3T<Jet> wj;
    for (std::size_t i = 0; i < 3; ++i) {
      Jet w(0.0, m);
      for (int p = 0; p <= m; ++p) w[p] = c.omega[static_cast<std::size_t>(p)][i];
      wj[i] = w;
      for (std::size_t j = 0; j < 3; ++j) {
        Jet r(0.0, m);
        for (int p = 0; p <= m; ++p) r[p] = c.R[static_cast<std::size_t>(p)](i, j);
        Rj(i, j) = r;
      }
    }
    const auto f = rhs<Jet>(cfg, Rj, wj);
    const auto next = static_cast<std::size_t>(m) + 1;
    for (std::size_t i = 0; i < 3; ++i) {
      c.omega[next][i] = f.dOmega[i][m] / static_cast<double>(m + 1);
      for (std::size_t j = 0; j < 3; ++j)
        c.R[next](i, j) = f.dR(i, j)[m] / static_cast<double>(m + 1);
    }
  }
  return c;
}

RotState step_jet(const TopConfig& cfg, const RotState& s, double dt, int order, int max_order,
                  std::int64_t step_index) {
  if (order < 1) throw std::invalid_argument("jet order must be at least 1");
  if (order > max_order || order > Jet::kMaxDegree) {
    std::ostringstream msg;
    msg << "jet order " << order << " exceeds the maximum " << max_order;
    throw std::invalid_argument(msg.str());
  }
  const TaylorCoefficients c = taylor_coefficients(cfg, s, order);
  RotState out;
  out.t = s.t + dt;
  out.R = Mat3{};
  // Horner in dt.
  for (int m = order; m >= 0; --m) {
    const auto idx = static_cast<std::size_t>(m);
    out.R = dt * out.R + c.R[idx];
    out.omega = dt * out.omega + c.omega[idx];
  }
  check_finite(out, step_index);
  return out;
}

Trajectory simulate(const TopConfig& cfg, const RotState& s0, const CoMState& c0,
                    const IntegratorSettings& settings) {
  if (!(settings.dt > 0.0) || !std::isfinite(settings.dt))
    throw ConfigError("dt must be positive and finite");
  if (settings.steps <= 0) throw ConfigError("steps must be positive");
  if (settings.stride <= 0) throw ConfigError("stride must be positive");
  if (settings.method == Method::jet &&
      (settings.jet_order < 1 || settings.jet_order > settings.max_jet_order))
    throw ConfigError("jet order must lie in [1, " + std::to_string(settings.max_jet_order) + "]");
  if (orthogonality_residual(s0.R) > settings.orthogonality_tolerance)
    throw ConfigError("initial rotation matrix is not orthogonal");
  if (!all_finite(s0.omega)) throw ConfigError("initial angular velocity is not finite");
  const double scale_p = std::max(1.0, norm(c0.p_perp));
  const double scale_v = std::max(1.0, norm(c0.v_perp));
  if (std::abs(dot(cfg.normal, c0.p_perp)) > 1e-12 * scale_p ||
      std::abs(dot(cfg.normal, c0.v_perp)) > 1e-12 * scale_v)
    throw ConfigError("planar center-of-mass state must be orthogonal to the plane normal");

  Trajectory traj;
  if (settings.dt * norm(s0.omega) > 0.5) {
    std::ostringstream msg;
    msg << "dt*|Omega0| = " << settings.dt * norm(s0.omega) << " exceeds 0.5; expect large errors";
    traj.warnings.push_back(msg.str());
  }
  traj.samples.reserve(static_cast<std::size_t>(settings.steps / settings.stride + 2));

  auto record = [&](const RotState& s) {
    const double elapsed = s.t - s0.t;
    CoMState c{c0.p_perp + elapsed * c0.v_perp, c0.v_perp};
    traj.samples.push_back({s, c, diagnostics(cfg, s, c)});
  };

  RotState s = s0;
  record(s);
  try {
    for (std::int64_t i = 1; i <= settings.steps; ++i) {
      if (settings.method == Method::rk4) {
        s = step_rk4(cfg, s, settings.dt, settings.projection, i);
      } else {
        s = step_jet(cfg, s, settings.dt, settings.jet_order, settings.max_jet_order, i);
        if (settings.projection == Projection::polar_iterative) s.R = project_polar(s.R);
      }
      // Time from the step count, not accumulated.
      s.t = s0.t + static_cast<double>(i) * settings.dt;
      if (i % settings.stride == 0 || i == settings.steps) record(s);
    }
  } catch (const NumericError& e) {
    throw SimulationAborted(e, std::move(traj));
  }
  return traj;
}

}  // namespace dtop
