#pragma once

// Fixed-step propagation of the rotational system (R, Omega).
//
// Two independent steppers are provided: classical RK4 (optionally followed
// by an iterative polar projection of R back onto SO(3)) and a truncated
// Taylor propagator whose coefficients are obtained by pushing jets through
// the right-hand side. The Taylor step is the truncated exponential of the
// vector field, sum_m (dt^m / m!) D^m applied to the state.

#include <cstdint>
#include <string>
#include <vector>

#include "dtop/dynamics.hpp"
#include "dtop/errors.hpp"
#include "dtop/model.hpp"

namespace dtop {

enum class Projection { none, polar_iterative };
enum class Method { rk4, jet };

inline constexpr int kDefaultJetOrder = 8;
inline constexpr int kDefaultMaxJetOrder = 16;

struct IntegratorSettings {
  double dt = 1e-3;
  std::int64_t steps = 1000;
  std::int64_t stride = 1;
  Method method = Method::rk4;
  Projection projection = Projection::polar_iterative;
  int jet_order = kDefaultJetOrder;
  int max_jet_order = kDefaultMaxJetOrder;
  double orthogonality_tolerance = kDefaultOrthogonalityTolerance;
};

struct Sample {
  RotState rot;
  CoMState com;
  Diagnostics diag;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<std::string> warnings;
};

/// Thrown by simulate(); carries every sample recorded before the failure.
class SimulationAborted : public NumericError {
 public:
  SimulationAborted(const NumericError& cause, Trajectory partial)
      : NumericError(cause), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// R <- R (3 - R^T R) / 2, applied `iterations` times.
Mat3 project_polar(const Mat3& R, int iterations = 2);

/// One classical RK4 step of size dt. `step_index` only labels errors.
RotState step_rk4(const TopConfig& cfg, const RotState& s, double dt,
                  Projection projection = Projection::polar_iterative,
                  std::int64_t step_index = 0);

struct TaylorCoefficients {
  std::vector<Mat3> R;      // R[m] = (d^m R / dt^m) / m!
  std::vector<Vec3> omega;  // same for Omega
};

/// Taylor coefficients of the exact flow through `s` up to `order`.
TaylorCoefficients taylor_coefficients(const TopConfig& cfg, const RotState& s, int order);

/// Truncated-exponential step of the given order. Throws std::invalid_argument
/// when order < 1 or order > max_order.
RotState step_jet(const TopConfig& cfg, const RotState& s, double dt, int order,
                  int max_order = kDefaultMaxJetOrder, std::int64_t step_index = 0);

/// Propagates (s0, c0) for settings.steps steps, recording a sample at step 0,
/// every `stride` steps and at the last step. The planar center-of-mass
/// motion is uniform; the altitude is derived from the constraint.
Trajectory simulate(const TopConfig& cfg, const RotState& s0, const CoMState& c0,
                    const IntegratorSettings& settings);

}  // namespace dtop
