#include "dtop/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <span>
#include <vector>

namespace dtop {

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v + 0.0);
  if (ec != std::errc{}) return "nan";
  return {buf.data(), end};
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const TopConfig& cfg, const Sample& s) {
  std::string line = format_number(s.rot.t);
  auto add = [&](double v) {
    line += ',';
    line += format_number(v);
  };
  for (const auto& row : s.rot.R.m)
    for (double v : row) add(v);
  add(s.rot.omega.x);
  add(s.rot.omega.y);
  add(s.rot.omega.z);
  const Vec3 yc = com_position(cfg, s.rot, s.com);
  add(yc.x);
  add(yc.y);
  add(yc.z);
  add(s.diag.sigma);
  add(s.diag.energy);
  add(s.diag.angular_momentum_k);
  add(s.diag.orth_residual);
  add(s.diag.constraint_residual);
  line += '\n';
  out << line;
}

void write_trajectory_csv(std::ostream& out, const TopConfig& cfg, const Trajectory& traj) {
  write_csv_header(out);
  for (const auto& s : traj.samples) write_csv_row(out, cfg, s);
}

namespace {

void svg_panel(std::ostream& out, std::span<const double> t, std::span<const double> y,
               const std::string& label, double top) {
  constexpr double kLeft = 70.0, kWidth = 560.0, kHeight = 180.0;
  const auto [tmin_it, tmax_it] = std::minmax_element(t.begin(), t.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double tmin = *tmin_it, tmax = *tmax_it;
  double ymin = *ymin_it, ymax = *ymax_it;
  if (ymax - ymin <= 1e-12 * std::max(1.0, std::abs(ymax))) {
    const double pad = std::max(1e-9, 1e-6 * std::abs(ymax));
    ymin -= pad;
    ymax += pad;
  }
  const double tspan = tmax > tmin ? tmax - tmin : 1.0;
  auto px = [&](double v) { return kLeft + kWidth * (v - tmin) / tspan; };
  auto py = [&](double v) { return top + kHeight * (1.0 - (v - ymin) / (ymax - ymin)); };

  out << "<line x1=\"" << kLeft << "\" y1=\"" << top + kHeight << "\" x2=\"" << kLeft + kWidth
      << "\" y2=\"" << top + kHeight << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << top << "\" x2=\"" << kLeft << "\" y2=\""
      << top + kHeight << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"" << top - 6 << "\" font-size=\"12\">" << label
      << "</text>\n";
  out << "<text x=\"2\" y=\"" << top + 10 << "\" font-size=\"10\">" << format_number(ymax)
      << "</text>\n";
  out << "<text x=\"2\" y=\"" << top + kHeight << "\" font-size=\"10\">" << format_number(ymin)
      << "</text>\n";
  out << "<text x=\"" << kLeft << "\" y=\"" << top + kHeight + 14 << "\" font-size=\"10\">t="
      << format_number(tmin) << "</text>\n";
  out << "<text x=\"" << kLeft + kWidth - 60 << "\" y=\"" << top + kHeight + 14
      << "\" font-size=\"10\">t=" << format_number(tmax) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out << ' ';
    out << px(t[i]) << ',' << py(y[i]);
  }
  out << "\"/>\n";
}

}  // namespace

void write_trajectory_svg(std::ostream& out, const TopConfig& cfg, const Trajectory& traj) {
  std::vector<double> t, alt, sig;
  for (const auto& s : traj.samples) {
    t.push_back(s.rot.t);
    alt.push_back(com_altitude(cfg, s.rot));
    sig.push_back(s.diag.sigma);
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\"480\">\n";
  if (!t.empty()) {
    svg_panel(out, t, alt, "center-of-mass altitude [m]", 30.0);
    svg_panel(out, t, sig, "sigma [N]", 270.0);
  }
  out << "</svg>\n";
}

void write_config_block(std::ostream& out, const TopConfig& cfg) {
  auto vec = [](const Vec3& v) {
    return format_number(v.x) + ' ' + format_number(v.y) + ' ' + format_number(v.z);
  };
  out << "[top]\n";
  out << "I1 = " << format_number(cfg.inertia.x) << '\n';
  out << "I2 = " << format_number(cfg.inertia.y) << '\n';
  out << "I3 = " << format_number(cfg.inertia.z) << '\n';
  out << "mu = " << format_number(cfg.mass) << '\n';
  out << "z = " << vec(cfg.fulcrum) << '\n';
  out << "k = " << vec(cfg.normal) << '\n';
  out << "a = " << format_number(cfg.gravity) << '\n';
}

void write_body_block(std::ostream& out, const BodyFrame& body) {
  write_config_block(out, body.config);
  auto vec = [](const Vec3& v) {
    return format_number(v.x) + ' ' + format_number(v.y) + ' ' + format_number(v.z);
  };
  out << "\n[frame]\n";
  out << "row1 = " << vec(body.frame.row(0)) << '\n';
  out << "row2 = " << vec(body.frame.row(1)) << '\n';
  out << "row3 = " << vec(body.frame.row(2)) << '\n';
  out << "center_of_mass = " << vec(body.center_of_mass) << '\n';
  out << "symmetric = " << (body.symmetric ? "true" : "false") << '\n';
  if (body.symmetric)
    out << "# degenerate axes: R3 is the symmetry axis pointing away from the fulcrum,\n"
           "# R1 is orthogonal to the plane of k and z, R2 has a non-negative k component\n";
}

}  // namespace dtop
