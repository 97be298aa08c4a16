#pragma once

// Data-parallel kernels over independent work items: point-cloud moment
// reductions, batches of simulations and frequency tables.
//
// Every kernel has a serial reference path (Execution::serial, a plain loop)
// and an OpenMP path (Execution::parallel). Results are written by index, so
// output order never depends on scheduling. Reductions in the parallel path
// sum fixed-size chunks and combine the partial sums in chunk order, so the
// result does not depend on the thread count either.

#include <span>
#include <vector>

#include "dtop/analytic.hpp"
#include "dtop/integrate.hpp"
#include "dtop/model.hpp"

namespace dtop {

enum class Execution { serial, parallel };

/// Number of OpenMP threads the parallel path would use (1 without OpenMP).
int max_threads();

struct BodyMoments {
  double mass = 0.0;
  Vec3 center_of_mass;
  Mat3 mass_matrix;  // sum m x x^T about the center of mass
};

/// Two-pass reduction: total mass and center of mass, then central second
/// moments.
BodyMoments body_moments(std::span<const PointMass> points, Execution exec);

struct SimulationJob {
  TopConfig config;
  RotState initial;
  CoMState com;
  IntegratorSettings settings;
};

struct SimulationSummary {
  RotState final_state;
  // Relative to the initial value (absolute when that is zero).
  double max_energy_drift = 0.0;
  double max_momentum_drift = 0.0;
  double max_orth_residual = 0.0;
  double min_sigma = 0.0;
  double max_sigma = 0.0;
};

SimulationSummary summarize(const Trajectory& traj);

/// Runs every job; summary i belongs to job i.
std::vector<SimulationSummary> simulate_batch(std::span<const SimulationJob> jobs,
                                              Execution exec);

struct FrequencyRow {
  double gamma = 0.0;
  double alpha = 0.0;
};

/// alpha(gamma) for each gamma (gamma = 0 is skipped by the caller).
std::vector<FrequencyRow> alpha_table(const SymmetricTop& top, std::span<const double> gammas,
                                      Execution exec);

struct RootRow {
  double alpha = 0.0;
  std::vector<double> gammas;
};

std::vector<RootRow> gamma_table(const SymmetricTop& top, std::span<const double> alphas,
                                 Execution exec);

/// max over the sample times of |sigma(analytic_state(gamma, alpha, t)) - g mu| / (g mu),
/// with sigma from the general closed form.
double max_sigma_deviation(const SymmetricTop& top, double gamma, double alpha,
                           std::span<const double> times, Execution exec);

}  // namespace dtop
