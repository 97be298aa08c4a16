#pragma once

#include <iosfwd>
#include <string>

#include "dtop/integrate.hpp"
#include "dtop/model.hpp"

namespace dtop {

/// Shortest decimal representation that round-trips (std::to_chars).
std::string format_number(double v);

/// t,R11..R33,O1,O2,O3,ycx,ycy,ycz,sigma,E,Lk,orth_res,constr_res
inline constexpr const char* kCsvHeader =
    "t,R11,R12,R13,R21,R22,R23,R31,R32,R33,O1,O2,O3,ycx,ycy,ycz,sigma,E,Lk,orth_res,constr_res";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const TopConfig& cfg, const Sample& s);
void write_trajectory_csv(std::ostream& out, const TopConfig& cfg, const Trajectory& traj);

/// Two stacked polyline charts: center-of-mass altitude and sigma versus t.
void write_trajectory_svg(std::ostream& out, const TopConfig& cfg, const Trajectory& traj);

/// Machine-readable block in the scenario key = value format.
void write_config_block(std::ostream& out, const TopConfig& cfg);
void write_body_block(std::ostream& out, const BodyFrame& body);

}  // namespace dtop
