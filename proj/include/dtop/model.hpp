#pragma once

// Domain types of the dancing top and the construction of a TopConfig from a
// point-mass body: center of mass, mass matrix, inertia tensor and the
// principal-axis frame.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dtop/linalg.hpp"

namespace dtop {

struct PointMass {
  double mass = 0.0;
  Vec3 position;
};

/// A body of point masses, one of which (the fulcrum) slides on the plane
/// with normal `plane_normal`.
struct BodySpec {
  std::vector<PointMass> points;
  std::size_t fulcrum_index = 0;
  double gravity = 0.0;
  Vec3 plane_normal{0.0, 0.0, 1.0};
};

/// Physical description in the principal center-of-mass frame at t = 0.
///
/// `inertia` holds the principal moments (I1, I2, I3), `fulcrum` is the
/// fulcrum position z relative to the center of mass and `normal` the unit
/// plane normal k, both expressed in the principal frame.
struct TopConfig {
  Vec3 inertia;
  double mass = 0.0;
  Vec3 fulcrum;
  Vec3 normal{0.0, 0.0, 1.0};
  double gravity = 0.0;

  Vec3 inverse_inertia() const {
    return {1.0 / inertia.x, 1.0 / inertia.y, 1.0 / inertia.z};
  }
};

/// Validates and normalizes a configuration. `normal` is rescaled to unit
/// length here and nowhere else. Throws ConfigError on non-positive moments
/// or mass, violated triangle inequalities, negative gravity, zero normal or
/// non-finite input.
TopConfig make_config(const Vec3& inertia, double mass, const Vec3& fulcrum,
                      const Vec3& normal, double gravity);

/// Rotational phase point: body-frame angular velocity and rotation matrix.
struct RotState {
  double t = 0.0;
  Mat3 R = Mat3::identity();
  Vec3 omega;
};

/// Planar part of the center-of-mass motion. Both vectors are orthogonal
/// to the plane normal; the altitude is derived from the constraint.
struct CoMState {
  Vec3 p_perp;
  Vec3 v_perp;
};

/// Projects p and v onto the plane orthogonal to the unit normal k.
CoMState make_com_state(const Vec3& k, const Vec3& p, const Vec3& v);

inline constexpr double kDefaultOrthogonalityTolerance = 1e-9;

struct EigenSystem {
  Vec3 values;
  Mat3 vectors;  // columns are eigenvectors
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a symmetric 3x3 matrix. Iterates until
/// the off-diagonal Frobenius norm drops below `tolerance` times the
/// Frobenius norm of the input. Eigenvalues are returned unsorted.
EigenSystem jacobi_eigen(const Mat3& symmetric, double tolerance = 1e-13);

struct BodyFrame {
  TopConfig config;
  /// Rotation taking original body coordinates (relative to the center of
  /// mass) to principal coordinates: x_principal = frame * x_original.
  Mat3 frame;
  Vec3 center_of_mass;
  /// True when two principal moments coincide and the degenerate-axis
  /// convention was applied.
  bool symmetric = false;
};

struct BuildOptions {
  double jacobi_tolerance = 1e-13;
  /// Relative gap below which two principal moments count as equal.
  double degeneracy_tolerance = 1e-9;
};

/// Builds the principal-frame configuration of a point-mass body.
///
/// Principal moments are ordered descending, except that when exactly two
/// coincide the distinct one is placed third (symmetry axis = R3). Axis
/// signs: R3 points away from the fulcrum, R2 has a non-negative component
/// along k, R1 = R2 x R3. For a symmetric body R1 is taken orthogonal to the
/// plane spanned by k and z.
BodyFrame build_config(const BodySpec& spec, const BuildOptions& options = {});

/// Sum of m_N x_N (relative to the center of mass); zero for a valid build.
Vec3 first_moment(const BodySpec& spec, const Vec3& center_of_mass);

/// Homogeneous solid cone of mass mu, height h and base radius r with its
/// apex as fulcrum; k = (0, sqrt(1 - k3^2), k3).
TopConfig conical_top(double mu, double h, double r, double k3, double gravity);

/// Distance from the center of mass of a solid cone to its apex.
inline double cone_fulcrum_distance(double h) { return 0.75 * h; }

/// Deterministic quasi-random (Halton) sampling of a solid cone with apex at
/// the origin and axis +z. The apex itself is the first point (the fulcrum).
/// All points carry equal mass, summing to `mu`.
BodySpec sample_cone(double mu, double h, double r, std::size_t samples, double gravity,
                     const Vec3& plane_normal);

/// Point-cloud text format: one `mass x y z` per line, `#` starts a comment.
std::vector<PointMass> read_point_cloud(std::istream& in);
std::vector<PointMass> read_point_cloud(const std::filesystem::path& path);
void write_point_cloud(std::ostream& out, const std::vector<PointMass>& points);

}  // namespace dtop
