#include "dtop/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dtop/errors.hpp"

namespace dtop {

namespace pt = boost::property_tree;

namespace {

const pt::ptree* section(const pt::ptree& root, const std::string& name) {
  const auto it = root.find(name);
  return it == root.not_found() ? nullptr : &it->second;
}

std::string trimmed(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<std::string> get_text(const pt::ptree& sec, const std::string& key) {
  if (auto v = sec.get_optional<std::string>(pt::ptree::path_type(key, '\0')))
    return trimmed(*v);
  return std::nullopt;
}

double get_number(const pt::ptree& sec, const std::string& where, const std::string& key) {
  const auto v = get_text(sec, key);
  if (!v) throw ConfigError("missing key '" + key + "' in [" + where + "]");
  std::istringstream in(*v);
  double d = 0.0;
  std::string rest;
  if (!(in >> d) || (in >> rest))
    throw ConfigError("key '" + key + "' in [" + where + "] is not a number: '" + *v + "'");
  return d;
}

std::optional<double> get_number_opt(const pt::ptree& sec, const std::string& where,
                                     const std::string& key) {
  if (!get_text(sec, key)) return std::nullopt;
  return get_number(sec, where, key);
}

std::int64_t get_integer(const pt::ptree& sec, const std::string& where, const std::string& key) {
  const double d = get_number(sec, where, key);
  if (d != std::floor(d) || std::abs(d) > 9e15)
    throw ConfigError("key '" + key + "' in [" + where + "] must be an integer");
  return static_cast<std::int64_t>(d);
}

Vec3 get_vec(const pt::ptree& sec, const std::string& where, const std::string& key) {
  const auto v = get_text(sec, key);
  if (!v) throw ConfigError("missing key '" + key + "' in [" + where + "]");
  try {
    return parse_vec3(*v);
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + key + "' in [" + where + "]: " + e.what());
  }
}

}  // namespace

Vec3 parse_vec3(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  Vec3 v;
  std::string rest;
  if (!(in >> v.x >> v.y >> v.z) || (in >> rest))
    throw ConfigError("expected three numbers, got '" + text + "'");
  return v;
}

Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }

  const pt::ptree* cone = section(root, "cone");
  const pt::ptree* points = section(root, "points");
  const pt::ptree* top = section(root, "top");
  const int sources = (cone != nullptr) + (points != nullptr) + (top != nullptr);
  if (sources != 1)
    throw ConfigError("scenario needs exactly one of [cone], [points], [top]; found " +
                      std::to_string(sources));

  Scenario sc;
  if (cone) {
    const double mu = get_number(*cone, "cone", "mu");
    const double h = get_number(*cone, "cone", "h");
    const double r = get_number(*cone, "cone", "r");
    const double k3 = get_number(*cone, "cone", "k3");
    const double a = get_number(*cone, "cone", "a");
    sc.config = conical_top(mu, h, r, k3, a);
    sc.symmetric = conical_symmetric_top(mu, h, r, k3, a);
  } else if (points) {
    const auto file = get_text(*points, "file");
    if (!file) throw ConfigError("missing key 'file' in [points]");
    std::filesystem::path p(*file);
    if (p.is_relative()) p = base_dir / p;
    if (!std::filesystem::exists(p))
      throw ConfigError("point cloud '" + p.string() + "' does not exist");
    BodySpec spec;
    spec.points = read_point_cloud(p);
    const std::int64_t fulcrum = get_integer(*points, "points", "fulcrum");
    if (fulcrum < 0) throw ConfigError("fulcrum index must be non-negative");
    spec.fulcrum_index = static_cast<std::size_t>(fulcrum);
    spec.gravity = get_number(*points, "points", "a");
    spec.plane_normal = get_vec(*points, "points", "k");
    const BodyFrame body = build_config(spec);
    sc.config = body.config;
    if (body.symmetric) {
      try {
        sc.symmetric = symmetric_top_from(body.config, 1e-9).top;
      } catch (const ConfigError&) {
        // Fulcrum off the symmetry axis: no constant-height family.
      }
    }
  } else {
    const Vec3 I{get_number(*top, "top", "I1"), get_number(*top, "top", "I2"),
                 get_number(*top, "top", "I3")};
    sc.config = make_config(I, get_number(*top, "top", "mu"), get_vec(*top, "top", "z"),
                            get_vec(*top, "top", "k"), get_number(*top, "top", "a"));
    try {
      const auto norm = symmetric_top_from(sc.config);
      if (frobenius_norm(norm.frame_change - Mat3::identity()) == 0.0) sc.symmetric = norm.top;
    } catch (const ConfigError&) {
    }
  }

  std::optional<double> periods;
  if (const pt::ptree* init = section(root, "initial")) {
    const bool has_omega = get_text(*init, "omega").has_value();
    const bool has_gamma = get_text(*init, "gamma").has_value();
    if (has_omega && has_gamma)
      throw ConfigError("[initial] takes either 'omega' or 'gamma', not both");
    if (has_omega) {
      sc.initial.omega = get_vec(*init, "initial", "omega");
    } else if (has_gamma) {
      if (!sc.symmetric)
        throw ConfigError("'gamma' initial data need a symmetric top with k = (0, k2, k3)");
      const double gamma = get_number(*init, "initial", "gamma");
      if (gamma == 0.0) throw ConfigError("'gamma' must be non-zero");
      sc.analytic_gamma = gamma;
      sc.initial = analytic_state(*sc.symmetric, gamma, 0.0);
    }
    const Vec3 p = get_text(*init, "p_perp") ? get_vec(*init, "initial", "p_perp") : Vec3{};
    const Vec3 v = get_text(*init, "v_perp") ? get_vec(*init, "initial", "v_perp") : Vec3{};
    sc.com = make_com_state(sc.config.normal, p, v);
  }

  if (const pt::ptree* integ = section(root, "integrator")) {
    auto& st = sc.settings;
    if (const auto m = get_text(*integ, "method")) {
      if (*m == "rk4")
        st.method = Method::rk4;
      else if (*m == "jet")
        st.method = Method::jet;
      else
        throw ConfigError("[integrator] method must be 'rk4' or 'jet', got '" + *m + "'");
    }
    if (const auto p = get_text(*integ, "projection")) {
      if (*p == "polar" || *p == "polar-iterative")
        st.projection = Projection::polar_iterative;
      else if (*p == "none")
        st.projection = Projection::none;
      else
        throw ConfigError("[integrator] projection must be 'polar' or 'none', got '" + *p + "'");
    }
    if (get_text(*integ, "steps")) st.steps = get_integer(*integ, "integrator", "steps");
    if (get_text(*integ, "stride")) st.stride = get_integer(*integ, "integrator", "stride");
    if (get_text(*integ, "jet_order"))
      st.jet_order = static_cast<int>(get_integer(*integ, "integrator", "jet_order"));
    if (auto dt = get_number_opt(*integ, "integrator", "dt")) st.dt = *dt;
    periods = get_number_opt(*integ, "integrator", "periods");
    if (periods && get_text(*integ, "dt"))
      throw ConfigError("[integrator] takes either 'dt' or 'periods', not both");
  }
  if (periods) {
    if (!sc.analytic_gamma) throw ConfigError("'periods' needs 'gamma' initial data");
    if (!(*periods > 0.0)) throw ConfigError("'periods' must be positive");
    if (sc.settings.steps <= 0) throw ConfigError("steps must be positive");
    sc.settings.dt = *periods * 2.0 * std::numbers::pi / std::abs(*sc.analytic_gamma) /
                     static_cast<double>(sc.settings.steps);
  }

  if (const pt::ptree* out = section(root, "output")) {
    if (const auto c = get_text(*out, "csv")) sc.csv_path = *c;
    if (const auto s = get_text(*out, "svg")) sc.svg_path = *s;
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario '" + path.string() + "'");
  return parse_scenario(in, path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace dtop
