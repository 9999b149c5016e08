#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorr/state.hpp"

// One row of an evolution sweep. `strength` is the channel parameter at time
// t: gamma(t) for the Markovian schedules, |p(t)| for the memory-kernel ones.
// Prediction fields stay empty when no closed form covers the configuration.

namespace qcorr {

struct TrajectoryRecord {
  double t = 0;
  double strength = 0;
  std::optional<double> alpha;
  std::optional<XState> state;
  double min_engine = 0;
  double gd_engine = 0;
  std::optional<double> min_pred, gd_pred;
  std::optional<double> res_min, res_gd;
};

// Identifies rows produced from a named initial family, so closed-form
// predictions can be attached where one applies.
struct FamilyParam {
  StateFamily family;
  double alpha = 0;
};

struct FigureSeries {
  std::string label;
  std::vector<TrajectoryRecord> rows;
};

struct FigureData {
  std::string figure;
  std::vector<FigureSeries> series;
};

inline std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw error("linspace: need at least two points");
  std::vector<double> out(n);
  const double step = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = a + i * step;
  out.back() = b;
  return out;
}

inline void require_time_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw error("time grid must start at 0");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw error("time grid must be strictly increasing");
}

}  // namespace qcorr
