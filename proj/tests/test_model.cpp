#include <gtest/gtest.h>

#include <sstream>

#include "dtop/errors.hpp"
#include "dtop/model.hpp"
#include "support.hpp"

using namespace dtop;
using namespace dtop::testing;

namespace {

Mat3 inertia_tensor(const std::vector<PointMass>& pts, const Vec3& c) {
  Mat3 J{};
  for (const auto& p : pts) {
    const Vec3 x = p.position - c;
    const double xs[3] = {x.x, x.y, x.z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) J(i, j) += p.mass * ((i == j ? dot(x, x) : 0.0) - xs[i] * xs[j]);
  }
  return J;
}

Vec3 center(const std::vector<PointMass>& pts) {
  Vec3 s;
  double m = 0.0;
  for (const auto& p : pts) {
    s = s + p.mass * p.position;
    m += p.mass;
  }
  return s / m;
}

BodySpec random_body(std::mt19937_64& rng, std::size_t n) {
  BodySpec b;
  const Vec3 scale{1.0, 0.6, 0.3};
  for (std::size_t i = 0; i < n; ++i)
    b.points.push_back({uniform(rng, 0.5, 2.0), hadamard(scale, random_vec(rng))});
  b.fulcrum_index = 3;
  b.gravity = 9.8;
  b.plane_normal = random_unit(rng);
  return b;
}

}  // namespace

TEST(Config, Validation) {
  EXPECT_NO_THROW(make_config({1, 1, 2}, 1, {}, {0, 0, 1}, 9.8));
  EXPECT_THROW(make_config({1, 1, 2.5}, 1, {}, {0, 0, 1}, 9.8), ConfigError);
  EXPECT_THROW(make_config({0, 1, 1}, 1, {}, {0, 0, 1}, 9.8), ConfigError);
  EXPECT_THROW(make_config({1, 1, 1}, -1, {}, {0, 0, 1}, 9.8), ConfigError);
  EXPECT_THROW(make_config({1, 1, 1}, 1, {}, {0, 0, 0}, 9.8), ConfigError);
  EXPECT_THROW(make_config({1, 1, 1}, 1, {}, {0, 0, 1}, -1.0), ConfigError);
  EXPECT_THROW(make_config({1, 1, 1}, 1, {std::nan(""), 0, 0}, {0, 0, 1}, 9.8), ConfigError);
  const TopConfig c = make_config({1, 1, 1}, 1, {}, {0, 3, 4}, 9.8);
  EXPECT_DOUBLE_EQ(norm(c.normal), 1.0);
}

TEST(Jacobi, DiagonalizesRandomSymmetricMatrices) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    Mat3 A{};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) A(i, j) = A(j, i) = uniform(rng, -2.0, 2.0);
    const EigenSystem e = jacobi_eigen(A);
    EXPECT_LT(orthogonality_residual(e.vectors), 1e-14);
    const double vals[3] = {e.values.x, e.values.y, e.values.z};
    for (int c = 0; c < 3; ++c) {
      const Vec3 v = e.vectors.column(c);
      EXPECT_LT(norm(A * v - vals[c] * v), 1e-12 * frobenius_norm(A));
    }
    EXPECT_LE(e.sweeps, 10);
  }
}

TEST(BuildConfig, PrincipalFrameOfRandomBody) {
  std::mt19937_64 rng(32);
  const BodySpec b = random_body(rng, 40);
  const BodyFrame f = build_config(b);
  const Vec3 c = center(b.points);
  EXPECT_LT(norm(f.center_of_mass - c), 1e-14);
  EXPECT_LT(norm(first_moment(b, f.center_of_mass)), 1e-12);
  EXPECT_NEAR(f.frame.determinant(), 1.0, 1e-14);
  const Mat3 J = f.frame * inertia_tensor(b.points, c) * f.frame.transposed();
  EXPECT_NEAR(J(0, 0), f.config.inertia.x, 1e-12);
  EXPECT_NEAR(J(1, 1), f.config.inertia.y, 1e-12);
  EXPECT_NEAR(J(2, 2), f.config.inertia.z, 1e-12);
  EXPECT_NEAR(J(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(J(0, 2), 0.0, 1e-12);
  EXPECT_NEAR(J(1, 2), 0.0, 1e-12);
  EXPECT_GE(f.config.inertia.x, f.config.inertia.y);
  EXPECT_GE(f.config.inertia.y, f.config.inertia.z);
  EXPECT_FALSE(f.symmetric);
  const Vec3 z = f.frame * (b.points[3].position - c);
  EXPECT_LT(norm(f.config.fulcrum - z), 1e-14);
  EXPECT_LE(f.config.fulcrum.z, 0.0);
  EXPECT_GE(f.config.normal.y, 0.0);
  EXPECT_LT(norm(f.config.normal - f.frame * b.plane_normal), 1e-14);
  double mass = 0.0;
  for (const auto& p : b.points) mass += p.mass;
  EXPECT_NEAR(f.config.mass, mass, 1e-13);
}

TEST(BuildConfig, SymmetricBodyConvention) {
  // Square prism about the z axis with the fulcrum on the axis.
  BodySpec b;
  for (double x : {-1.0, 1.0})
    for (double y : {-1.0, 1.0})
      for (double z : {-2.0, 0.0, 2.0}) b.points.push_back({1.0, {x, y, z}});
  b.points.push_back({0.5, {0.0, 0.0, -3.0}});
  b.points.push_back({0.5, {0.0, 0.0, 3.0}});
  b.fulcrum_index = 12;
  b.gravity = 9.8;
  b.plane_normal = {0.2, 0.3, 1.0};
  const BodyFrame f = build_config(b);
  EXPECT_TRUE(f.symmetric);
  EXPECT_NEAR(f.config.inertia.x, f.config.inertia.y, 1e-12);
  // R1 is orthogonal to both k and z.
  EXPECT_NEAR(f.config.normal.x, 0.0, 1e-14);
  EXPECT_NEAR(f.config.fulcrum.x, 0.0, 1e-14);
  EXPECT_NEAR(f.config.fulcrum.y, 0.0, 1e-14);
  EXPECT_NEAR(f.config.fulcrum.z, -3.0, 1e-14);
  EXPECT_GT(f.config.normal.y, 0.0);
  EXPECT_NEAR(f.frame.determinant(), 1.0, 1e-14);

  // Off-axis fulcrum: R1 is the part of k x z orthogonal to the axis.
  b.fulcrum_index = 0;
  const BodyFrame g = build_config(b);
  EXPECT_TRUE(g.symmetric);
  EXPECT_LE(g.config.fulcrum.z, 0.0);
  EXPECT_GE(g.config.normal.y, 0.0);
  EXPECT_GT(dot(cross(g.config.normal, g.config.fulcrum), Vec3{1.0, 0.0, 0.0}), 0.0);
}

TEST(BuildConfig, DegenerateBodies) {
  auto message = [](const BodySpec& b) {
    try {
      build_config(b);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  BodySpec flat;
  for (double x : {0.0, 1.0, 2.0})
    for (double y : {0.0, 1.0}) flat.points.push_back({1.0, {x, y, 0.5}});
  EXPECT_NE(message(flat).find("coplanar"), std::string::npos);
  BodySpec line;
  for (double x : {0.0, 1.0, 2.0, 3.0}) line.points.push_back({1.0, {x, 2 * x, -x}});
  EXPECT_NE(message(line).find("collinear"), std::string::npos);
  BodySpec dot;
  for (int i = 0; i < 4; ++i) dot.points.push_back({1.0, {1.0, 1.0, 1.0}});
  EXPECT_NE(message(dot).find("coincide"), std::string::npos);
  BodySpec few;
  for (int i = 0; i < 3; ++i) few.points.push_back({1.0, {1.0 * i, 0.0, 1.0 * i * i}});
  EXPECT_FALSE(message(few).empty());
  std::mt19937_64 rng(33);
  BodySpec bad = random_body(rng, 10);
  bad.fulcrum_index = 10;
  EXPECT_FALSE(message(bad).empty());
  bad.fulcrum_index = 0;
  bad.points[2].mass = -1.0;
  EXPECT_FALSE(message(bad).empty());
}

TEST(BuildConfig, InvariantUnderRigidMotionOfInput) {
  std::mt19937_64 rng(34);
  const BodySpec b = random_body(rng, 30);
  const BodyFrame f = build_config(b);
  const Mat3 Q = random_rotation(rng);
  BodySpec moved = b;
  for (auto& p : moved.points) p.position = Q * p.position + Vec3{3.0, -2.0, 1.0};
  moved.plane_normal = Q * b.plane_normal;
  const BodyFrame g = build_config(moved);
  EXPECT_LT(norm(g.config.inertia - f.config.inertia), 1e-12);
  EXPECT_LT(norm(g.config.fulcrum - f.config.fulcrum), 1e-12);
  EXPECT_LT(norm(g.config.normal - f.config.normal), 1e-12);
}

TEST(Cone, SampledCloudMatchesSolidCone) {
  const BodySpec cloud = sample_cone(70.0, 1.7, 0.2, 10000, 9.8, {0, 0, 1});
  EXPECT_EQ(cloud.points.size(), 10001u);
  EXPECT_EQ(cloud.fulcrum_index, 0u);
  EXPECT_LT(norm(cloud.points[0].position), 1e-15);
  const BodyFrame f = build_config(cloud);
  const TopConfig exact = conical_top(70.0, 1.7, 0.2, 1.0, 9.8);
  EXPECT_NEAR(f.config.mass, 70.0, 1e-9);
  EXPECT_TRUE(f.symmetric || std::abs(f.config.inertia.x - f.config.inertia.y) < 0.01 * exact.inertia.x);
  EXPECT_NEAR(f.config.inertia.z, exact.inertia.z, 0.01 * exact.inertia.z);
  EXPECT_NEAR(0.5 * (f.config.inertia.x + f.config.inertia.y), exact.inertia.x,
              0.01 * exact.inertia.x);
  EXPECT_NEAR(f.config.fulcrum.z, -0.75 * 1.7, 0.01 * 1.7);
  // Deterministic sampling.
  const BodySpec again = sample_cone(70.0, 1.7, 0.2, 10000, 9.8, {0, 0, 1});
  EXPECT_EQ(again.points.back().position.x, cloud.points.back().position.x);
}

TEST(PointCloud, RoundTripAndErrors) {
  std::mt19937_64 rng(35);
  const BodySpec b = random_body(rng, 8);
  std::stringstream ss;
  write_point_cloud(ss, b.points);
  const auto back = read_point_cloud(ss);
  ASSERT_EQ(back.size(), b.points.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].mass, b.points[i].mass);
    EXPECT_EQ(back[i].position.x, b.points[i].position.x);
    EXPECT_EQ(back[i].position.z, b.points[i].position.z);
  }
  std::istringstream comments("# header\n1 0 0 0  # apex\n\n2 1 1 1\n");
  EXPECT_EQ(read_point_cloud(comments).size(), 2u);
  std::istringstream bad("1 0 0 0\n1 2 x 3\n");
  try {
    read_point_cloud(bad);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream extra("1 0 0 0 5\n");
  EXPECT_THROW(read_point_cloud(extra), ConfigError);
  EXPECT_THROW(read_point_cloud(std::filesystem::path("/nonexistent/cloud.txt")), ConfigError);
}
