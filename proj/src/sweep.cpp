#include "dtop/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dtop/dynamics.hpp"

namespace dtop {

namespace {

constexpr std::size_t kChunk = 1024;

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

struct FirstMoments {
  double mass = 0.0;
  Vec3 weighted;
};

FirstMoments first_moments_range(std::span<const PointMass> pts) {
  FirstMoments f;
  for (const auto& p : pts) {
    f.mass += p.mass;
    f.weighted += p.mass * p.position;
  }
  return f;
}

Mat3 second_moments_range(std::span<const PointMass> pts, const Vec3& yc) {
  Mat3 g;
  for (const auto& p : pts) {
    const Vec3 x = p.position - yc;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g(i, j) += p.mass * x[i] * x[j];
  }
  return g;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

BodyMoments body_moments(std::span<const PointMass> points, Execution exec) {
  BodyMoments out;
  if (exec == Execution::serial) {
    const FirstMoments f = first_moments_range(points);
    out.mass = f.mass;
    out.center_of_mass = f.weighted / f.mass;
    out.mass_matrix = second_moments_range(points, out.center_of_mass);
    return out;
  }

  const std::size_t chunks = chunk_count(points.size());
  const auto nchunks = static_cast<std::int64_t>(chunks);
  std::vector<FirstMoments> partial(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const auto begin = static_cast<std::size_t>(c) * kChunk;
    partial[static_cast<std::size_t>(c)] =
        first_moments_range(points.subspan(begin, std::min(kChunk, points.size() - begin)));
  }
  FirstMoments f;
  for (const auto& p : partial) {
    f.mass += p.mass;
    f.weighted += p.weighted;
  }
  out.mass = f.mass;
  out.center_of_mass = f.weighted / f.mass;

  std::vector<Mat3> partial_g(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const auto begin = static_cast<std::size_t>(c) * kChunk;
    partial_g[static_cast<std::size_t>(c)] = second_moments_range(
        points.subspan(begin, std::min(kChunk, points.size() - begin)), out.center_of_mass);
  }
  for (const auto& g : partial_g) out.mass_matrix = out.mass_matrix + g;
  return out;
}

SimulationSummary summarize(const Trajectory& traj) {
  SimulationSummary s;
  if (traj.samples.empty()) return s;
  const Sample& first = traj.samples.front();
  const double e0 = first.diag.energy;
  const double l0 = first.diag.angular_momentum_k;
  // Absolute drift when (k, R I Omega) starts at zero.
  const double l_scale = l0 != 0.0 ? std::abs(l0) : 1.0;
  const double e_scale = e0 != 0.0 ? std::abs(e0) : 1.0;
  s.min_sigma = s.max_sigma = first.diag.sigma;
  for (const auto& smp : traj.samples) {
    const auto& d = smp.diag;
    s.max_energy_drift = std::max(s.max_energy_drift, std::abs(d.energy - e0) / e_scale);
    s.max_momentum_drift =
        std::max(s.max_momentum_drift, std::abs(d.angular_momentum_k - l0) / l_scale);
    s.max_orth_residual = std::max(s.max_orth_residual, d.orth_residual);
    s.min_sigma = std::min(s.min_sigma, d.sigma);
    s.max_sigma = std::max(s.max_sigma, d.sigma);
  }
  s.final_state = traj.samples.back().rot;
  return s;
}

std::vector<SimulationSummary> simulate_batch(std::span<const SimulationJob> jobs,
                                              Execution exec) {
  std::vector<SimulationSummary> out(jobs.size());
  const auto n = static_cast<std::int64_t>(jobs.size());
  auto run = [&](std::int64_t i) {
    const auto& job = jobs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] =
        summarize(simulate(job.config, job.initial, job.com, job.settings));
  };
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) run(i);
    return out;
  }
  // Exceptions may not cross the parallel region; collect the first one.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      run(i);
    } catch (...) {
#pragma omp critical(dtop_batch_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<FrequencyRow> alpha_table(const SymmetricTop& top, std::span<const double> gammas,
                                      Execution exec) {
  std::vector<FrequencyRow> rows(gammas.size());
  const auto n = static_cast<std::int64_t>(gammas.size());
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      const double g = gammas[static_cast<std::size_t>(i)];
      rows[static_cast<std::size_t>(i)] = {g, alpha_of_gamma(top, g)};
    }
    return rows;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double g = gammas[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(i)] = {g, alpha_of_gamma(top, g)};
  }
  return rows;
}

std::vector<RootRow> gamma_table(const SymmetricTop& top, std::span<const double> alphas,
                                 Execution exec) {
  std::vector<RootRow> rows(alphas.size());
  const auto n = static_cast<std::int64_t>(alphas.size());
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      const double a = alphas[static_cast<std::size_t>(i)];
      rows[static_cast<std::size_t>(i)] = {a, gamma_of_alpha(top, a)};
    }
    return rows;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double a = alphas[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(i)] = {a, gamma_of_alpha(top, a)};
  }
  return rows;
}

double max_sigma_deviation(const SymmetricTop& top, double gamma, double alpha,
                           std::span<const double> times, Execution exec) {
  const TopConfig cfg = to_config(top);
  const double target = top.gravity * top.mu;
  auto deviation = [&](double t) {
    return std::abs(sigma(cfg, analytic_state(top, gamma, alpha, t)) - target) / target;
  };
  const auto n = static_cast<std::int64_t>(times.size());
  double worst = 0.0;
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i)
      worst = std::max(worst, deviation(times[static_cast<std::size_t>(i)]));
    return worst;
  }
  // max is order-independent, so a plain reduction is deterministic here.
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::int64_t i = 0; i < n; ++i)
    worst = std::max(worst, deviation(times[static_cast<std::size_t>(i)]));
  return worst;
}

}  // namespace dtop
