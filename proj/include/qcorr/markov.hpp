#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcorr/channel.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/trajectory.hpp"

// Markovian dynamics: the channel strength follows gamma(t) = 1 - e^{-rate t}
// and the channel at that strength acts on the initial state directly (the
// three families are one-parameter semigroups in gamma, so this equals the
// stepwise evolution). Published closed-form decay laws are evaluated
// verbatim alongside the engine so residuals can be reported; the engine is
// authoritative whenever the two disagree.

namespace qcorr {

struct RateSchedule {
  double rate = 1.0;

  double strength_at(double t) const {
    if (!(rate > 0)) throw error("RateSchedule: rate must be positive");
    if (!(t >= 0)) throw error("RateSchedule: negative time");
    return 1.0 - std::exp(-rate * t);
  }
};

enum class MarkovChannel { depolarizing, dephasing, damping, combined };

inline const char* markov_channel_name(MarkovChannel k) {
  switch (k) {
    case MarkovChannel::depolarizing: return "depol";
    case MarkovChannel::dephasing: return "deph";
    case MarkovChannel::damping: return "ad";
    case MarkovChannel::combined: return "deph+ad";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// closed-form laws

enum class ClosedFormLaw {
  // scalar laws, value(alpha, gamma)
  depol_pure_correlations,    // MIN = GD = 2a(1-a)(1-g)^4
  depol_werner_correlations,  // MIN = GD = a^2/2 (1-g)^4
  deph_pure_min,              // branch at a = 1/2
  deph_pure_gd,
  deph_werner_min,
  deph_werner_gd,
  // element laws, XState(alpha, gamma[, p]) in canonical X form
  depol_pure_elements,
  deph_pure_elements,
  deph_werner_elements,
  gad_pure_elements,
  gad_werner_elements,
  combined_pure_elements,
};

inline const char* law_name(ClosedFormLaw law) {
  switch (law) {
    case ClosedFormLaw::depol_pure_correlations: return "depol_pure_correlations";
    case ClosedFormLaw::depol_werner_correlations: return "depol_werner_correlations";
    case ClosedFormLaw::deph_pure_min: return "deph_pure_min";
    case ClosedFormLaw::deph_pure_gd: return "deph_pure_gd";
    case ClosedFormLaw::deph_werner_min: return "deph_werner_min";
    case ClosedFormLaw::deph_werner_gd: return "deph_werner_gd";
    case ClosedFormLaw::depol_pure_elements: return "depol_pure_elements";
    case ClosedFormLaw::deph_pure_elements: return "deph_pure_elements";
    case ClosedFormLaw::deph_werner_elements: return "deph_werner_elements";
    case ClosedFormLaw::gad_pure_elements: return "gad_pure_elements";
    case ClosedFormLaw::gad_werner_elements: return "gad_werner_elements";
    case ClosedFormLaw::combined_pure_elements: return "combined_pure_elements";
  }
  return "?";
}

inline bool law_is_scalar(ClosedFormLaw law) {
  switch (law) {
    case ClosedFormLaw::depol_pure_correlations:
    case ClosedFormLaw::depol_werner_correlations:
    case ClosedFormLaw::deph_pure_min:
    case ClosedFormLaw::deph_pure_gd:
    case ClosedFormLaw::deph_werner_min:
    case ClosedFormLaw::deph_werner_gd:
      return true;
    default:
      return false;
  }
}

// Evaluates the published formula verbatim, typos included; see the
// element-law comments for the two spots where the engine is known to
// disagree. gamma is the accumulated strength gamma(t), so e^{-rate t}
// appears below as (1 - gamma).
inline std::variant<double, XState> law_eval(ClosedFormLaw law, double alpha,
                                             double gamma,
                                             std::optional<double> p = {}) {
  check_unit_interval(alpha, "law alpha");
  check_unit_interval(gamma, "law gamma");
  const double g1 = 1.0 - gamma;
  const double c = std::sqrt(std::max(alpha - alpha * alpha, 0.0));
  const bool at_half = std::abs(alpha - 0.5) < 1e-12;

  switch (law) {
    case ClosedFormLaw::depol_pure_correlations:
      return 2 * alpha * (1 - alpha) * g1 * g1 * g1 * g1;
    case ClosedFormLaw::depol_werner_correlations:
      return 0.5 * alpha * alpha * g1 * g1 * g1 * g1;
    case ClosedFormLaw::deph_pure_min:
      if (at_half) return 0.25 + 0.25 * g1 * g1;
      return 2 * alpha * (1 - alpha) * g1 * g1;
    case ClosedFormLaw::deph_pure_gd:
      return 2 * alpha * (1 - alpha) * g1 * g1;
    case ClosedFormLaw::deph_werner_min:
      return 0.25 * alpha * alpha * (g1 * g1 + 1);
    case ClosedFormLaw::deph_werner_gd:
      return 0.5 * alpha * alpha * g1 * g1;
    case ClosedFormLaw::depol_pure_elements: {
      XState x;
      x.rho11 = (1 - alpha) * g1 + 0.25 * gamma * gamma;
      x.rho22 = x.rho33 = 0.5 * gamma * (1 - 0.5 * gamma);
      x.rho44 = 1 - x.rho11 - 2 * x.rho22;
      x.rho14 = c * g1 * g1;
      return x;
    }
    case ClosedFormLaw::deph_pure_elements: {
      XState x;
      x.rho11 = 1 - alpha;
      x.rho44 = alpha;
      x.rho14 = c * g1;
      return x;
    }
    case ClosedFormLaw::deph_werner_elements: {
      XState x;
      x.rho11 = x.rho44 = 0.25 * (1 - alpha);
      x.rho22 = x.rho33 = 0.25 * (1 + alpha);
      x.rho23 = 0.5 * alpha * g1;
      return x;
    }
    case ClosedFormLaw::gad_pure_elements: {
      if (!p) throw error("gad_pure_elements needs the damping bias p");
      const double q = *p;
      XState x;
      x.rho11 = (1 - (1 - q) * gamma) * (1 - (1 - q) * gamma) -
                alpha * g1 * (1 - (1 - 2 * q) * gamma);
      x.rho22 = x.rho33 =
          -gamma * (-1 + alpha + q * (1 - 2 * alpha * g1 - 2 * gamma) +
                    gamma * (1 + q * q - alpha));
      x.rho44 = 1 - x.rho11 - 2 * x.rho22;
      x.rho14 = c * g1;
      return x;
    }
    case ClosedFormLaw::gad_werner_elements: {
      if (!p) throw error("gad_werner_elements needs the damping bias p");
      const double q = *p;
      const double lift = 1 + (2 * q - 1) * gamma;
      XState x;
      x.rho11 = 0.25 * (-alpha * g1 * g1 + lift * lift);
      // published with unbalanced parentheses; balanced reading adopted:
      // the last factor is ((1-2p) gamma)^2
      x.rho22 = x.rho33 =
          0.25 * (1 + alpha * g1 * g1 -
                  (1 - 2 * q) * (1 - 2 * q) * gamma * gamma);
      x.rho44 = 1 - x.rho11 - 2 * x.rho22;
      x.rho23 = 0.5 * alpha * g1;
      return x;
    }
    case ClosedFormLaw::combined_pure_elements: {
      // simultaneous dephasing + decay at equal rates; published middle
      // populations carry an extra strength factor (engine: a g (1-g)) and
      // the published set does not sum to unit trace
      XState x;
      x.rho11 = 1 - alpha + alpha * gamma * gamma;
      x.rho22 = x.rho33 = alpha * gamma * gamma * g1;
      x.rho44 = alpha * g1 * g1;
      x.rho14 = c * g1 * g1;
      return x;
    }
  }
  throw error("law_eval: unknown law");
}

// ---------------------------------------------------------------------------
// evolution

namespace detail {

struct ScalarLaws {
  std::optional<ClosedFormLaw> min_law, gd_law;
};

inline ScalarLaws scalar_laws_for(StateFamily f, MarkovChannel k) {
  using L = ClosedFormLaw;
  if (f == StateFamily::pure && k == MarkovChannel::depolarizing)
    return {L::depol_pure_correlations, L::depol_pure_correlations};
  if (f == StateFamily::werner && k == MarkovChannel::depolarizing)
    return {L::depol_werner_correlations, L::depol_werner_correlations};
  if (f == StateFamily::pure && k == MarkovChannel::dephasing)
    return {L::deph_pure_min, L::deph_pure_gd};
  if (f == StateFamily::werner && k == MarkovChannel::dephasing)
    return {L::deph_werner_min, L::deph_werner_gd};
  return {};
}

inline TwoQubitState apply_markov(MarkovChannel kind, double gamma,
                                  double damping_p, const TwoQubitState& s0) {
  switch (kind) {
    case MarkovChannel::depolarizing:
      return apply_local(depolarizing(gamma), s0);
    case MarkovChannel::dephasing:
      return apply_local(dephasing(gamma), s0);
    case MarkovChannel::damping:
      return apply_local(gad(gamma, damping_p), s0);
    case MarkovChannel::combined:
      return apply_local(gad(gamma, 1.0), apply_local(dephasing(gamma), s0));
  }
  throw error("apply_markov: unknown channel");
}

}  // namespace detail

inline std::vector<TrajectoryRecord> evolve_markov(
    const TwoQubitState& s0, MarkovChannel kind, const RateSchedule& sched,
    const std::vector<double>& t_grid,
    std::optional<FamilyParam> fam = {}, double damping_p = 1.0) {
  require_time_grid(t_grid);
  check_unit_interval(damping_p, "damping p");
  const auto laws = fam ? detail::scalar_laws_for(fam->family, kind)
                        : detail::ScalarLaws{};
  std::vector<TrajectoryRecord> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double g = sched.strength_at(t);
    const TwoQubitState st = detail::apply_markov(kind, g, damping_p, s0);
    TrajectoryRecord r;
    r.t = t;
    r.strength = g;
    if (fam) r.alpha = fam->alpha;
    if (has_x_shape(st.rho)) r.state = as_x_state(st);
    r.min_engine = min_closed(st);
    r.gd_engine = gd_closed(st);
    if (laws.min_law) {
      r.min_pred = std::get<double>(law_eval(*laws.min_law, fam->alpha, g));
      r.res_min = std::abs(r.min_engine - *r.min_pred);
    }
    if (laws.gd_law) {
      r.gd_pred = std::get<double>(law_eval(*laws.gd_law, fam->alpha, g));
      r.res_gd = std::abs(r.gd_engine - *r.gd_pred);
    }
    out.push_back(r);
  }
  return out;
}

inline std::vector<TrajectoryRecord> combined_evolve(
    const TwoQubitState& s0, double rate, const std::vector<double>& t_grid,
    std::optional<FamilyParam> fam = {}) {
  if (!has_x_shape(s0.rho))
    throw error("combined_evolve expects an X-shaped initial state");
  return evolve_markov(s0, MarkovChannel::combined, RateSchedule{rate}, t_grid,
                       fam);
}

// ---------------------------------------------------------------------------
// figure grids

enum class MarkovFigure { f1, f2, f3, f4, f5, f6, f7, f8 };

namespace detail {

inline FigureSeries family_surface(StateFamily f, MarkovChannel k,
                                   std::string label,
                                   const std::vector<double>& alphas,
                                   const std::vector<double>& ts, double rate,
                                   double damping_p = 1.0) {
  FigureSeries s;
  s.label = std::move(label);
  s.rows.reserve(alphas.size() * ts.size());
  for (double a : alphas) {
    auto rows = evolve_markov(make_family(f, a), k, RateSchedule{rate}, ts,
                              FamilyParam{f, a}, damping_p);
    s.rows.insert(s.rows.end(), rows.begin(), rows.end());
  }
  return s;
}

inline FigureSeries fixed_state_series(const TwoQubitState& s0,
                                       std::optional<FamilyParam> fam,
                                       MarkovChannel k,
                                       const std::vector<double>& ts,
                                       double rate) {
  FigureSeries s;
  s.label = markov_channel_name(k);
  s.rows = evolve_markov(s0, k, RateSchedule{rate}, ts, fam);
  return s;
}

}  // namespace detail

// Grids behind the survey plots: decay surfaces over (alpha, t) per channel,
// the three-bias damping comparison, and the fixed-state channel comparisons.
inline FigureData figure_data(MarkovFigure fig, int t_points = 400,
                              int alpha_points = 101, double rate = 1.0) {
  if (t_points < 2 || alpha_points < 2)
    throw error("figure_data: grid too small");
  const auto ts = linspace(0.0, 8.0 / rate, t_points);
  const auto alphas = linspace(0.0, 1.0, alpha_points);
  FigureData out;
  switch (fig) {
    case MarkovFigure::f1:
      out.figure = "F1";
      out.series.push_back(detail::family_surface(
          StateFamily::pure, MarkovChannel::depolarizing, "depol", alphas, ts,
          rate));
      break;
    case MarkovFigure::f2:
      out.figure = "F2";
      out.series.push_back(detail::family_surface(
          StateFamily::pure, MarkovChannel::dephasing, "deph", alphas, ts,
          rate));
      break;
    case MarkovFigure::f3:
      out.figure = "F3";
      out.series.push_back(detail::family_surface(
          StateFamily::werner, MarkovChannel::dephasing, "deph", alphas, ts,
          rate));
      break;
    case MarkovFigure::f4:
      out.figure = "F4";
      for (auto [p, label] : {std::pair{1.0, "p=1"}, std::pair{0.5, "p=0.5"},
                              std::pair{0.67, "p=0.67"}})
        out.series.push_back(detail::family_surface(
            StateFamily::werner, MarkovChannel::damping, label, alphas, ts,
            rate, p));
      break;
    case MarkovFigure::f5:
      out.figure = "F5";
      for (auto [p, label] : {std::pair{1.0, "p=1"}, std::pair{0.5, "p=0.5"},
                              std::pair{0.67, "p=0.67"}})
        out.series.push_back(detail::family_surface(
            StateFamily::pure, MarkovChannel::damping, label, alphas, ts, rate,
            p));
      break;
    case MarkovFigure::f6:
      out.figure = "F6";
      out.series.push_back(detail::family_surface(
          StateFamily::pure, MarkovChannel::combined, "deph+ad", alphas, ts,
          rate));
      break;
    case MarkovFigure::f7: {
      out.figure = "F7";
      const auto s0 = make_family(StateFamily::vedral_plenio, 0.25);
      const FamilyParam fam{StateFamily::vedral_plenio, 0.25};
      for (auto k : {MarkovChannel::depolarizing, MarkovChannel::dephasing,
                     MarkovChannel::damping})
        out.series.push_back(detail::fixed_state_series(s0, fam, k, ts, rate));
      break;
    }
    case MarkovFigure::f8: {
      out.figure = "F8";
      // |phi+> is the alpha = 1/2 member of the pure family
      const auto s0 = make_bell(BellState::phi_plus);
      const FamilyParam fam{StateFamily::pure, 0.5};
      for (auto k : {MarkovChannel::depolarizing, MarkovChannel::dephasing,
                     MarkovChannel::damping})
        out.series.push_back(detail::fixed_state_series(s0, fam, k, ts, rate));
      break;
    }
  }
  return out;
}

}  // namespace qcorr
