#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "qcorr/trajectory.hpp"

// Trajectory serialization. Pinned column layouts, 12 significant digits,
// '.' decimal separator regardless of locale, so output files diff cleanly
// across runs and machines.

namespace qcorr {

inline constexpr const char* markov_csv_header =
    "t,gamma,alpha,min_engine,gd_engine,min_pred,gd_pred,res_min,res_gd";
inline constexpr const char* nonmarkov_csv_header =
    "t,p_abs,alpha,min_engine,gd_engine,min_pred,gd_pred,res_min,res_gd";

inline std::string fmt12(double v) {
  if (v == 0.0) v = 0.0;  // collapse -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// one data line, no terminator; the strength column carries gamma for
// Markovian rows and |p| for memory-kernel rows
inline std::string csv_row(const TrajectoryRecord& r) {
  std::string out;
  out.reserve(120);
  const auto field = [&out](const std::optional<double>& v) {
    out += ',';
    if (v) out += fmt12(*v);
  };
  out += fmt12(r.t);
  out += ',';
  out += fmt12(r.strength);
  field(r.alpha);
  out += ',';
  out += fmt12(r.min_engine);
  out += ',';
  out += fmt12(r.gd_engine);
  field(r.min_pred);
  field(r.gd_pred);
  field(r.res_min);
  field(r.res_gd);
  return out;
}

inline void write_csv(std::ostream& os, const char* header,
                      const std::vector<TrajectoryRecord>& rows) {
  os << header << '\n';
  for (const TrajectoryRecord& r : rows) os << csv_row(r) << '\n';
}

// Multi-series figure grids get two identification columns in front of the
// standard layout, since the plain schema cannot tell a p = 0.5 damping
// surface from a p = 1 one.
inline void write_sweep_csv(std::ostream& os, const FigureData& d,
                            const char* base_header) {
  os << "figure,series," << base_header << '\n';
  for (const FigureSeries& s : d.series)
    for (const TrajectoryRecord& r : s.rows)
      os << d.figure << ',' << s.label << ',' << csv_row(r) << '\n';
}

}  // namespace qcorr
