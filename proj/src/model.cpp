#include "dtop/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dtop/errors.hpp"

namespace dtop {

namespace {

bool finite(double v) { return std::isfinite(v); }

Vec3 normalized(const Vec3& v) { return v / norm(v); }

// Radical-inverse (van der Corput) in the given base.
double radical_inverse(std::size_t index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

// Flip `v` so that its largest-magnitude component is positive.
Vec3 canonical_sign(const Vec3& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  return v[imax] < 0.0 ? -v : v;
}

// Orient `axis` so that (axis, ref) has the requested sign (ties fall back
// to canonical_sign).
Vec3 orient(const Vec3& axis, const Vec3& ref, bool want_positive, double tiny) {
  const double d = dot(axis, ref);
  if (std::abs(d) <= tiny) return canonical_sign(axis);
  return (d > 0.0) == want_positive ? axis : -axis;
}

Vec3 reject(const Vec3& v, const Vec3& unit) { return v - dot(v, unit) * unit; }

// Any unit vector orthogonal to the unit vector `u`.
Vec3 any_orthogonal(const Vec3& u) {
  const Vec3 trial = std::abs(u.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  return normalized(reject(trial, u));
}

}  // namespace

TopConfig make_config(const Vec3& inertia, double mass, const Vec3& fulcrum,
                      const Vec3& normal, double gravity) {
  if (!all_finite(inertia) || !all_finite(fulcrum) || !all_finite(normal) || !finite(mass) ||
      !finite(gravity))
    throw ConfigError("top configuration has non-finite values");
  for (std::size_t i = 0; i < 3; ++i)
    if (!(inertia[i] > 0.0)) throw ConfigError("principal moments must be positive");
  const double slack = 1e-12 * (inertia.x + inertia.y + inertia.z);
  for (std::size_t i = 0; i < 3; ++i) {
    const double other = inertia[(i + 1) % 3] + inertia[(i + 2) % 3];
    if (other + slack < inertia[i])
      throw ConfigError("principal moments violate the triangle inequality");
  }
  if (!(mass > 0.0)) throw ConfigError("total mass must be positive");
  if (gravity < 0.0) throw ConfigError("gravity must be non-negative");
  const double n = norm(normal);
  if (!(n > 0.0)) throw ConfigError("plane normal must be non-zero");

  TopConfig cfg;
  cfg.inertia = inertia;
  cfg.mass = mass;
  cfg.fulcrum = fulcrum;
  cfg.normal = normal / n;
  cfg.gravity = gravity;
  return cfg;
}

CoMState make_com_state(const Vec3& k, const Vec3& p, const Vec3& v) {
  return {reject(p, k), reject(v, k)};
}

EigenSystem jacobi_eigen(const Mat3& symmetric, double tolerance) {
  Mat3 a = symmetric;
  Mat3 v = Mat3::identity();
  const double scale = frobenius_norm(a);
  EigenSystem out;
  constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::sqrt(2.0 * (a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) +
                                        a(1, 2) * a(1, 2)));
    if (off <= tolerance * scale) break;
    ++out.sweeps;
    for (const auto& [p, q] : kPairs) {
      const double apq = a(p, q);
      if (apq == 0.0) continue;
      const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
      const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      Mat3 rot = Mat3::identity();
      rot(p, p) = c;
      rot(q, q) = c;
      rot(p, q) = s;
      rot(q, p) = -s;
      a = rot.transposed() * a * rot;
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      v = v * rot;
    }
  }
  out.values = {a(0, 0), a(1, 1), a(2, 2)};
  out.vectors = v;
  return out;
}

Vec3 first_moment(const BodySpec& spec, const Vec3& center_of_mass) {
  Vec3 s;
  for (const auto& p : spec.points) s += p.mass * (p.position - center_of_mass);
  return s;
}

BodyFrame build_config(const BodySpec& spec, const BuildOptions& options) {
  if (spec.points.size() < 4) throw ConfigError("body needs at least 4 points");
  if (spec.fulcrum_index >= spec.points.size())
    throw ConfigError("fulcrum index " + std::to_string(spec.fulcrum_index) +
                      " is out of range");
  if (!finite(spec.gravity) || spec.gravity < 0.0)
    throw ConfigError("gravity must be finite and non-negative");
  if (!all_finite(spec.plane_normal) || !(norm(spec.plane_normal) > 0.0))
    throw ConfigError("plane normal must be finite and non-zero");

  double mu = 0.0;
  Vec3 weighted;
  for (const auto& p : spec.points) {
    if (!finite(p.mass) || !(p.mass > 0.0)) throw ConfigError("point masses must be positive");
    if (!all_finite(p.position)) throw ConfigError("point positions must be finite");
    mu += p.mass;
    weighted += p.mass * p.position;
  }
  const Vec3 yc = weighted / mu;

  // Mass matrix g_kj = sum m x^k x^j in the center-of-mass system.
  Mat3 g;
  for (const auto& p : spec.points) {
    const Vec3 x = p.position - yc;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g(i, j) += p.mass * x[i] * x[j];
  }

  const double tr = g.trace();
  const EigenSystem ge = jacobi_eigen(g, options.jacobi_tolerance);
  int rank = 0;
  for (std::size_t i = 0; i < 3; ++i)
    if (ge.values[i] > 1e-12 * tr) ++rank;
  if (!(tr > 0.0) || rank == 0) throw ConfigError("singular inertia: all points coincide");
  if (rank == 1) throw ConfigError("singular inertia: points are collinear");
  if (rank == 2) throw ConfigError("degenerate body: points are coplanar");

  const Mat3 inertia = tr * Mat3::identity() - g;
  const EigenSystem ie = jacobi_eigen(inertia, options.jacobi_tolerance);

  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return ie.values[l] > ie.values[r]; });
  const double top = ie.values[order[0]];
  auto same = [&](std::size_t l, std::size_t r) {
    return std::abs(ie.values[l] - ie.values[r]) <= options.degeneracy_tolerance * top;
  };
  const bool eq01 = same(order[0], order[1]);
  const bool eq12 = same(order[1], order[2]);
  const bool spherical = eq01 && eq12;
  if (!spherical && eq12) order = {order[1], order[2], order[0]};
  const bool symmetric = !spherical && (eq01 || eq12);

  const Vec3 z_raw = spec.points[spec.fulcrum_index].position - yc;
  const Vec3 k_raw = normalized(spec.plane_normal);
  const double length_scale = std::sqrt(tr / mu);
  const double tiny = 1e-12 * std::max(norm(z_raw), length_scale);

  Vec3 e1, e2, e3;
  if (spherical) {
    e3 = norm(z_raw) > tiny ? -normalized(z_raw) : Vec3{0.0, 0.0, 1.0};
    const Vec3 kp = reject(k_raw, e3);
    e2 = norm(kp) > 1e-12 ? normalized(kp) : any_orthogonal(e3);
    e1 = cross(e2, e3);
  } else {
    e3 = orient(ie.vectors.column(order[2]), z_raw, false, tiny);
    if (symmetric) {
      // R1 orthogonal to the plane of k and z, within the degenerate plane.
      const Vec3 n1 = reject(cross(k_raw, z_raw), e3);
      if (norm(n1) > tiny) {
        e1 = normalized(n1);
        e2 = cross(e3, e1);
      } else {
        const Vec3 kp = reject(k_raw, e3);
        e2 = norm(kp) > 1e-12 ? normalized(kp) : normalized(reject(ie.vectors.column(order[1]), e3));
      }
      e2 = orient(e2, k_raw, true, 1e-12);
    } else {
      e2 = orient(ie.vectors.column(order[1]), k_raw, true, 1e-12);
    }
    e2 = normalized(reject(e2, e3));
    e1 = cross(e2, e3);
  }

  BodyFrame out;
  out.frame = Mat3::from_rows(e1, e2, e3);
  out.center_of_mass = yc;
  out.symmetric = symmetric || spherical;
  const Vec3 moments{dot(e1, inertia * e1), dot(e2, inertia * e2), dot(e3, inertia * e3)};
  out.config = make_config(moments, mu, out.frame * z_raw, out.frame * k_raw, spec.gravity);
  return out;
}

TopConfig conical_top(double mu, double h, double r, double k3, double gravity) {
  if (!(mu > 0.0) || !(h > 0.0) || !(r > 0.0))
    throw ConfigError("cone mass, height and radius must be positive");
  if (!(std::abs(k3) <= 1.0)) throw ConfigError("inclination cosine k3 must lie in [-1, 1]");
  const double i12 = 3.0 / 20.0 * mu * (r * r + h * h / 4.0);
  const double i3 = 3.0 / 10.0 * mu * r * r;
  const double k2 = std::sqrt(std::max(0.0, 1.0 - k3 * k3));
  return make_config({i12, i12, i3}, mu, {0.0, 0.0, -cone_fulcrum_distance(h)}, {0.0, k2, k3},
                     gravity);
}

BodySpec sample_cone(double mu, double h, double r, std::size_t samples, double gravity,
                     const Vec3& plane_normal) {
  if (!(mu > 0.0) || !(h > 0.0) || !(r > 0.0) || samples == 0)
    throw ConfigError("cone sampling needs positive mass, size and sample count");
  BodySpec spec;
  spec.gravity = gravity;
  spec.plane_normal = plane_normal;
  spec.fulcrum_index = 0;
  const double m = mu / static_cast<double>(samples + 1);
  spec.points.reserve(samples + 1);
  spec.points.push_back({m, {0.0, 0.0, 0.0}});
  for (std::size_t i = 1; i <= samples; ++i) {
    // Inverse-CDF map of the unit cube onto the cone: the distance from the
    // apex has density ~ s^2, the radius fraction ~ rho.
    const double s = h * std::cbrt(radical_inverse(i, 2));
    const double rho = r * (s / h) * std::sqrt(radical_inverse(i, 3));
    const double phi = 2.0 * std::numbers::pi * radical_inverse(i, 5);
    spec.points.push_back({m, {rho * std::cos(phi), rho * std::sin(phi), s}});
  }
  return spec;
}

std::vector<PointMass> read_point_cloud(std::istream& in) {
  std::vector<PointMass> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    PointMass p;
    if (!(fields >> p.mass)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError("point cloud line " + std::to_string(line_no) + ": expected 'mass x y z'");
    }
    std::string extra;
    if (!(fields >> p.position.x >> p.position.y >> p.position.z) || (fields >> extra))
      throw ConfigError("point cloud line " + std::to_string(line_no) + ": expected 'mass x y z'");
    points.push_back(p);
  }
  return points;
}

std::vector<PointMass> read_point_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open point cloud '" + path.string() + "'");
  return read_point_cloud(in);
}

void write_point_cloud(std::ostream& out, const std::vector<PointMass>& points) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "# mass x y z\n";
  for (const auto& p : points)
    buf << p.mass << ' ' << p.position.x << ' ' << p.position.y << ' ' << p.position.z << '\n';
  out << buf.str();
}

}  // namespace dtop
