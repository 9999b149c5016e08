#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "qcorr/channel.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/trajectory.hpp"

// Structured-environment dynamics. Each qubit couples to its own Lorentzian
// bath; the reduced evolution is carried entirely by a decoherence function
// p(t): the coherence survival factor for phase noise, the excited-amplitude
// survival factor for energy decay. Both solve the same memory-kernel
// equation p'(t) = -int_0^t f(t-s) p(s) ds; the amplitude case has the
// closed-form damped-oscillator solution and the phase case is integrated
// numerically (the kernel is exponential, so the Volterra equation reduces
// exactly to a 2d ODE).

namespace qcorr {

struct LorentzianSpectrum {
  double gamma0 = 1.0;  // decay rate of the excited level, sets the time unit
  double lambda = 0.1;  // coupling bandwidth
  double delta = 0.0;   // detuning from resonance
  double omega0 = 1.0;  // qubit frequency, bookkeeping only

  void validate() const {
    if (!(gamma0 > 0) || !(lambda > 0))
      throw error("LorentzianSpectrum: gamma0 and lambda must be positive");
  }
};

// f(tau) = amplitude * e^{-decay tau} * e^{i phase_rate tau}
struct NoiseKernel {
  double amplitude = 0;
  double decay = 1;
  double phase_rate = 0;
};

// Contour integral of the spectrum against e^{i(omega0 - omega) tau}. The
// spectrum is centered at omega0 - delta with half-width lambda, hence the
// residual phase rotation at the detuning frequency.
inline NoiseKernel kernel_from_spectrum(const LorentzianSpectrum& s) {
  s.validate();
  return {0.5 * s.gamma0 * s.lambda, s.lambda, s.delta};
}

// Excited-state amplitude: solution of p'' + mu p' + f(0) p = 0 with
// p(0) = 1, p'(0) = 0 and mu = decay - i phase_rate. The complex square
// root covers both the overdamped and the oscillatory (lambda < 2 gamma0)
// regime; the series branch keeps the confluent case d -> 0 smooth.
inline cplx amplitude_p(const LorentzianSpectrum& spec, double t) {
  if (!(t >= 0)) throw error("amplitude_p: negative time");
  const NoiseKernel k = kernel_from_spectrum(spec);
  const cplx mu(k.decay, -k.phase_rate);
  const cplx d = std::sqrt(mu * mu - 2.0 * spec.gamma0 * spec.lambda);
  const cplx z = 0.5 * d * t;
  const cplx sinhc = std::abs(z) < 1e-4
                         ? 1.0 + z * z / 6.0 + (z * z) * (z * z) / 120.0
                         : std::sinh(z) / z;
  return std::exp(-0.5 * mu * t) * (std::cosh(z) + (0.5 * mu * t) * sinhc);
}

enum class DecoherenceKind { amplitude, dephasing };

struct DecoherenceFunction {
  DecoherenceKind kind = DecoherenceKind::dephasing;
  std::vector<double> t;
  std::vector<cplx> p;  // aligned with t

  void check() const {
    if (t.size() != p.size() || t.empty())
      throw error("DecoherenceFunction: malformed sample table");
    if (std::abs(p.front() - 1.0) > 1e-12)
      throw error("DecoherenceFunction: p(0) must be 1");
    for (const cplx& v : p)
      if (!finite(v) || std::abs(v) > 1.0 + tol::amplitude_norm)
        throw error("DecoherenceFunction: |p| exceeded 1");
  }
};

inline DecoherenceFunction sample_amplitude_p(const LorentzianSpectrum& spec,
                                              const std::vector<double>& ts) {
  require_time_grid(ts);
  DecoherenceFunction f;
  f.kind = DecoherenceKind::amplitude;
  f.t = ts;
  f.p.reserve(ts.size());
  for (double t : ts) f.p.push_back(amplitude_p(spec, t));
  f.check();
  return f;
}

namespace detail {

// one RK4 sweep over the grid with `subdiv` substeps per interval, for the
// autonomous system p' = -u, u' = f0 p - mu u
inline std::vector<cplx> kernel_ode_pass(const NoiseKernel& k,
                                         const std::vector<double>& ts,
                                         int subdiv) {
  const double f0 = k.amplitude;
  const cplx mu(k.decay, -k.phase_rate);
  const auto slope = [&](cplx p, cplx u, cplx& dp, cplx& du) {
    dp = -u;
    du = f0 * p - mu * u;
  };
  std::vector<cplx> out;
  out.reserve(ts.size());
  cplx p = 1.0, u = 0.0;
  out.push_back(p);
  for (size_t i = 1; i < ts.size(); ++i) {
    const double h = (ts[i] - ts[i - 1]) / subdiv;
    for (int s = 0; s < subdiv; ++s) {
      cplx k1p, k1u, k2p, k2u, k3p, k3u, k4p, k4u;
      slope(p, u, k1p, k1u);
      slope(p + 0.5 * h * k1p, u + 0.5 * h * k1u, k2p, k2u);
      slope(p + 0.5 * h * k2p, u + 0.5 * h * k2u, k3p, k3u);
      slope(p + h * k3p, u + h * k3u, k4p, k4u);
      p += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      u += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace detail

// Coherence survival factor: fixed-step integration, with the step halved
// until successive sweeps agree in sup norm.
inline DecoherenceFunction dephasing_p(const NoiseKernel& k,
                                       const std::vector<double>& ts) {
  require_time_grid(ts);
  if (!(k.decay > 0)) throw error("dephasing_p: kernel decay must be positive");
  double widest = 0;
  for (size_t i = 1; i < ts.size(); ++i)
    widest = std::max(widest, ts[i] - ts[i - 1]);
  int subdiv = 1;
  std::vector<cplx> prev = detail::kernel_ode_pass(k, ts, subdiv);
  for (;;) {
    subdiv *= 2;
    if (widest / subdiv < tol::ode_min_step)
      throw error("dephasing_p: step tolerance unreachable at minimum step");
    std::vector<cplx> cur = detail::kernel_ode_pass(k, ts, subdiv);
    double dev = 0;
    for (size_t i = 0; i < cur.size(); ++i)
      dev = std::max(dev, std::abs(cur[i] - prev[i]));
    if (dev < tol::ode_halving) {
      DecoherenceFunction f;
      f.kind = DecoherenceKind::dephasing;
      f.t = ts;
      f.p = std::move(cur);
      f.check();
      return f;
    }
    prev = std::move(cur);
  }
}

// ---------------------------------------------------------------------------
// closed forms for phase noise on the pure family (verbatim, case split
// included; the published discord expression algebraically reduces to the
// first line of the nonlocality one)

struct NonMarkovLaw {
  double min_value = 0;
  double gd_value = 0;
};

inline NonMarkovLaw law_eval_nonmarkov(double alpha, double pd_abs) {
  check_unit_interval(alpha, "law alpha");
  check_unit_interval(pd_abs, "pd_abs");
  const double m = pd_abs * pd_abs * pd_abs * pd_abs * (alpha - alpha * alpha);
  NonMarkovLaw out;
  if (std::abs(alpha - 0.5) < 1e-12)
    out.min_value = 0.25 + 2 * m - std::min(0.25, m);
  else
    out.min_value = 2 * m;
  out.gd_value = 2 * m + 0.25 + (0.5 - alpha) * (0.5 - alpha) -
                 std::max(0.5 - alpha + alpha * alpha, m);
  return out;
}

// ---------------------------------------------------------------------------
// evolution

namespace detail {

// memory-kernel damping as a Kraus pair in the computational basis, |1>
// excited: diag(1, p) plus the lowering operator sqrt(1-|p|^2)|0><1|. A
// sub-1e-9 overshoot of |p| from the integrator is squashed so the CPTP
// gate sees an exact partition.
inline QubitChannel memory_damping(cplx p) {
  const double a = std::abs(p);
  if (a > 1.0) p /= a;
  const double q = std::sqrt(std::max(0.0, 1.0 - std::norm(p)));
  return QubitChannel::from_kraus(
      {CMat2::from_entries(1, 0, 0, p), CMat2::from_entries(0, q, 0, 0)},
      "memory damping");
}

// |00><11| carries p on each qubit, |01><10| carries p on one and conj(p)
// on the other, so only the outer coherence rotates.
inline XState dephase_x(const XState& s0, cplx p) {
  const double a = std::abs(p);
  if (a > 1.0) p /= a;
  XState x = s0;
  const double f = std::norm(p);
  x.rho14 = f * s0.rho14;
  x.rho23 = f * s0.rho23;
  x.phase14 = s0.phase14 + 2 * std::arg(p);
  return x;
}

}  // namespace detail

// Identical noise on both qubits. The phase branch applies the published
// element map directly (diagonals frozen, coherences times p^2); the
// damping branch goes through the generic Kraus engine, since the published
// damping element list holds the ground population constant and feeds the
// wrong level pair, which breaks the trace (see
// amplitude_elements_vs_engine).
inline std::vector<TrajectoryRecord> evolve_nonmarkov(
    const XState& s0, DecoherenceKind kind, const DecoherenceFunction& pf,
    std::optional<FamilyParam> fam = {}) {
  pf.check();
  if (pf.kind != kind)
    throw error("evolve_nonmarkov: decoherence function kind mismatch");
  const bool attach_laws = kind == DecoherenceKind::dephasing && fam &&
                           fam->family == StateFamily::pure;
  std::vector<TrajectoryRecord> out;
  out.reserve(pf.t.size());
  for (size_t i = 0; i < pf.t.size(); ++i) {
    const cplx p = pf.p[i];
    TrajectoryRecord r;
    r.t = pf.t[i];
    r.strength = std::abs(p);
    if (fam) r.alpha = fam->alpha;
    TwoQubitState st = [&] {
      if (kind == DecoherenceKind::dephasing)
        return to_density(detail::dephase_x(s0, p));
      return apply_local(detail::memory_damping(p), to_density(s0));
    }();
    r.state = as_x_state(st);
    r.min_engine = min_closed(st);
    r.gd_engine = gd_closed(st);
    if (attach_laws) {
      const NonMarkovLaw law =
          law_eval_nonmarkov(fam->alpha, std::min(r.strength, 1.0));
      r.min_pred = law.min_value;
      r.gd_pred = law.gd_value;
      r.res_min = std::abs(r.min_engine - *r.min_pred);
      r.res_gd = std::abs(r.gd_engine - *r.gd_pred);
    }
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// published damping element list, compared but not adopted

struct ElementCheck {
  const char* label;  // element name in the published (excited-first) basis
  double printed = 0;
  double engine = 0;
  double residual = 0;
};

// The published list orders the basis excited-first, the reverse of the
// computational order used here, so printed index k refers to engine index
// 5-k. Two lines disagree with the channel: the ground population is held
// at its initial value, and one single-excitation level feeds from its
// partner instead of from the doubly excited level.
inline std::vector<ElementCheck> amplitude_elements_vs_engine(
    const XState& s0, cplx p, const XState& evolved) {
  const double f2 = std::min(std::norm(p), 1.0);
  const double f4 = f2 * f2;
  const double q2 = 1.0 - f2;
  const double t1 = s0.rho44, t2 = s0.rho33, t3 = s0.rho22, t4 = s0.rho11;
  (void)t4;
  std::vector<ElementCheck> rows = {
      {"rho11", f4 * t1, evolved.rho44, 0},
      {"rho22", f2 * (t2 + q2 * t3), evolved.rho33, 0},
      {"rho33", f2 * (t3 + q2 * t1), evolved.rho22, 0},
      {"rho44", 1.0 - t1 - t2 - t3, evolved.rho11, 0},
      {"rho14", f2 * s0.rho14, evolved.rho14, 0},
      {"rho23", f2 * s0.rho23, evolved.rho23, 0},
  };
  for (ElementCheck& r : rows) r.residual = std::abs(r.printed - r.engine);
  return rows;
}

// ---------------------------------------------------------------------------
// figure grids and root finding

enum class NonMarkovFigure { f9, f10 };

inline LorentzianSpectrum default_spectrum(NonMarkovFigure fig) {
  // both survey figures fix lambda = 0.1 gamma0; the phase one adds a small
  // detuning
  LorentzianSpectrum s;
  s.lambda = 0.1;
  s.delta = fig == NonMarkovFigure::f10 ? 0.01 : 0.0;
  return s;
}

inline FigureData figure_data_nonmarkov(
    NonMarkovFigure fig, std::optional<LorentzianSpectrum> spec = {},
    int t_points = 3001, int alpha_points = 101) {
  if (t_points < 2 || alpha_points < 2)
    throw error("figure_data_nonmarkov: grid too small");
  const LorentzianSpectrum sp = spec ? *spec : default_spectrum(fig);
  sp.validate();
  const auto ts = linspace(0.0, 30.0 / sp.gamma0, t_points);
  const auto alphas = linspace(0.0, 1.0, alpha_points);
  const DecoherenceKind kind = fig == NonMarkovFigure::f9
                                   ? DecoherenceKind::amplitude
                                   : DecoherenceKind::dephasing;
  const DecoherenceFunction pf =
      kind == DecoherenceKind::amplitude
          ? sample_amplitude_p(sp, ts)
          : dephasing_p(kernel_from_spectrum(sp), ts);
  FigureData out;
  out.figure = fig == NonMarkovFigure::f9 ? "F9" : "F10";
  FigureSeries series;
  series.label = kind == DecoherenceKind::amplitude ? "ad" : "deph";
  series.rows.reserve(static_cast<size_t>(t_points) * alpha_points);
  for (double a : alphas) {
    const XState s0 = as_x_state(make_family(StateFamily::pure, a));
    auto rows =
        evolve_nonmarkov(s0, kind, pf, FamilyParam{StateFamily::pure, a});
    series.rows.insert(series.rows.end(), rows.begin(), rows.end());
  }
  out.series.push_back(std::move(series));
  return out;
}

// First real zero of the resonant amplitude, by scan plus bisection.
inline double amplitude_first_zero(const LorentzianSpectrum& spec,
                                   double t_max) {
  spec.validate();
  const double step = 0.01 / spec.gamma0;
  double lo = 0, hi = 0;
  double prev = amplitude_p(spec, 0).real();
  for (double t = step; t <= t_max; t += step) {
    const double cur = amplitude_p(spec, t).real();
    if ((prev > 0) != (cur > 0)) {
      lo = t - step;
      hi = t;
      break;
    }
    prev = cur;
  }
  if (hi == 0) throw error("amplitude_first_zero: no sign change found");
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((amplitude_p(spec, lo).real() > 0) !=
        (amplitude_p(spec, mid).real() > 0))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qcorr
