#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "qcorr/csv.hpp"
#include "qcorr/markov.hpp"
#include "qcorr/nonmarkov.hpp"
#include "qcorr/random.hpp"

// Validation report: every published closed form re-derived against the
// generic Kraus engine, plus the structural invariant suites. Output is
// fully deterministic for a fixed seed (no timing, no addresses, fixed
// float formatting), so repeated runs can be byte-compared.

namespace qcorr {

struct LawReport {
  std::string name;
  bool required = false;  // informational rows never fail the run
  double max_residual = 0;
  bool verified = false;
};

struct SuiteReport {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  uint64_t seed = 0;
  int n_states = 0;
  std::vector<LawReport> laws;
  std::vector<SuiteReport> suites;
  bool pass = false;
};

namespace detail {

inline std::string fmt3(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline const std::vector<double>& val_alphas() {
  static const std::vector<double> g = linspace(0.0, 1.0, 11);
  return g;
}
inline const std::vector<double>& val_gammas() {
  static const std::vector<double> g = linspace(0.0, 1.0, 21);
  return g;
}

inline double x_residual(const XState& law, const XState& engine) {
  double r = 0;
  r = std::max(r, std::abs(law.rho11 - engine.rho11));
  r = std::max(r, std::abs(law.rho22 - engine.rho22));
  r = std::max(r, std::abs(law.rho33 - engine.rho33));
  r = std::max(r, std::abs(law.rho44 - engine.rho44));
  r = std::max(r, std::abs(law.rho14 - engine.rho14));
  r = std::max(r, std::abs(law.rho23 - engine.rho23));
  return r;
}

inline LawReport scalar_law_report(ClosedFormLaw min_law, ClosedFormLaw gd_law,
                                   StateFamily fam, MarkovChannel ch,
                                   const std::string& name, bool required) {
  double worst = 0;
  for (double a : val_alphas())
    for (double g : val_gammas()) {
      const TwoQubitState st = apply_markov(ch, g, 1.0, make_family(fam, a));
      worst = std::max(worst, std::abs(min_closed(st) -
                                       std::get<double>(law_eval(min_law, a, g))));
      worst = std::max(worst, std::abs(gd_closed(st) -
                                       std::get<double>(law_eval(gd_law, a, g))));
    }
  return {name, required, worst, worst <= tol::law_residual};
}

inline LawReport element_law_report(ClosedFormLaw law, StateFamily fam,
                                    MarkovChannel ch, bool needs_p,
                                    bool required) {
  double worst = 0;
  const std::vector<double> ps =
      needs_p ? std::vector<double>{0.0, 0.25, 0.5, 0.67, 1.0}
              : std::vector<double>{1.0};
  for (double a : val_alphas())
    for (double g : val_gammas())
      for (double p : ps) {
        const XState engine =
            as_x_state(apply_markov(ch, g, p, make_family(fam, a)));
        const XState predicted = std::get<XState>(
            needs_p ? law_eval(law, a, g, p) : law_eval(law, a, g));
        worst = std::max(worst, x_residual(predicted, engine));
      }
  return {std::string(law_name(law)), required, worst,
          worst <= tol::law_residual};
}

inline void nonmarkov_law_reports(std::vector<LawReport>& out) {
  const auto pf =
      dephasing_p(kernel_from_spectrum(default_spectrum(NonMarkovFigure::f10)),
                  linspace(0.0, 30.0, 61));
  double worst_min = 0, worst_gd = 0;
  for (double a : val_alphas()) {
    const XState s0 = as_x_state(make_family(StateFamily::pure, a));
    for (const TrajectoryRecord& r :
         evolve_nonmarkov(s0, DecoherenceKind::dephasing, pf,
                          FamilyParam{StateFamily::pure, a})) {
      worst_min = std::max(worst_min, *r.res_min);
      worst_gd = std::max(worst_gd, *r.res_gd);
    }
  }
  out.push_back({"memory_deph_pure_min", true, worst_min,
                 worst_min <= tol::law_residual});
  out.push_back({"memory_deph_pure_gd", true, worst_gd,
                 worst_gd <= tol::law_residual});

  // published damping element list, excited-first basis; two lines are known
  // to disagree with any trace-preserving local damping
  double worst_elem = 0;
  const cplx probes[] = {cplx(0.9, 0.0), 0.6 * std::exp(cplx(0.0, 0.4)),
                         cplx(0.25, 0.0)};
  for (const auto& [fam, a] :
       {std::pair{StateFamily::pure, 0.3}, std::pair{StateFamily::pure, 0.5},
        std::pair{StateFamily::vedral_plenio, 0.25}}) {
    const XState s0 = as_x_state(make_family(fam, a));
    for (cplx p : probes) {
      DecoherenceFunction pf2;
      pf2.kind = DecoherenceKind::amplitude;
      pf2.t = {0.0, 1.0};
      pf2.p = {1.0, p};
      const auto rows = evolve_nonmarkov(s0, DecoherenceKind::amplitude, pf2);
      for (const ElementCheck& c :
           amplitude_elements_vs_engine(s0, p, *rows[1].state))
        worst_elem = std::max(worst_elem, c.residual);
    }
  }
  out.push_back({"memory_damping_elements", false, worst_elem,
                 worst_elem <= tol::law_residual});
}

inline LawReport variant_kraus_report() {
  // the sqrt(gamma/2) Pauli weighting: report the completeness defect
  double worst = 0;
  for (double g : {0.25, 0.5, 1.0}) {
    const auto ops = depolarizing_variant_kraus(g);
    CMat2 acc;
    for (const CMat2& e : ops) acc = acc + dagger(e) * e;
    worst = std::max(worst, max_abs(acc - CMat2::identity()));
  }
  return {"depol_variant_completeness", false, worst, worst <= tol::cptp_check};
}

}  // namespace detail

inline ValidationReport run_validation(uint64_t seed, int n_states) {
  if (n_states < 1) throw error("run_validation: need at least one state");
  using detail::fmt3;
  ValidationReport rep;
  rep.seed = seed;
  rep.n_states = n_states;

  // ---- closed-form law table -------------------------------------------
  rep.laws.push_back(detail::scalar_law_report(
      ClosedFormLaw::depol_pure_correlations,
      ClosedFormLaw::depol_pure_correlations, StateFamily::pure,
      MarkovChannel::depolarizing, "depol_pure_correlations", true));
  rep.laws.push_back(detail::scalar_law_report(
      ClosedFormLaw::depol_werner_correlations,
      ClosedFormLaw::depol_werner_correlations, StateFamily::werner,
      MarkovChannel::depolarizing, "depol_werner_correlations", true));
  rep.laws.push_back(detail::scalar_law_report(
      ClosedFormLaw::deph_pure_min, ClosedFormLaw::deph_pure_gd,
      StateFamily::pure, MarkovChannel::dephasing, "deph_pure_correlations",
      true));
  rep.laws.push_back(detail::scalar_law_report(
      ClosedFormLaw::deph_werner_min, ClosedFormLaw::deph_werner_gd,
      StateFamily::werner, MarkovChannel::dephasing, "deph_werner_correlations",
      true));
  rep.laws.push_back(detail::element_law_report(
      ClosedFormLaw::deph_pure_elements, StateFamily::pure,
      MarkovChannel::dephasing, false, true));
  rep.laws.push_back(detail::element_law_report(
      ClosedFormLaw::deph_werner_elements, StateFamily::werner,
      MarkovChannel::dephasing, false, true));
  rep.laws.push_back(detail::element_law_report(
      ClosedFormLaw::depol_pure_elements, StateFamily::pure,
      MarkovChannel::depolarizing, false, false));
  rep.laws.push_back(detail::element_law_report(
      ClosedFormLaw::gad_pure_elements, StateFamily::pure,
      MarkovChannel::damping, true, false));
  rep.laws.push_back(detail::element_law_report(
      ClosedFormLaw::gad_werner_elements, StateFamily::werner,
      MarkovChannel::damping, true, false));
  rep.laws.push_back(detail::element_law_report(
      ClosedFormLaw::combined_pure_elements, StateFamily::pure,
      MarkovChannel::combined, false, false));
  detail::nonmarkov_law_reports(rep.laws);
  rep.laws.push_back(detail::variant_kraus_report());

  // ---- invariant suites -------------------------------------------------
  const auto suite = [&rep](std::string name, bool pass, std::string detail) {
    rep.suites.push_back({std::move(name), pass, std::move(detail)});
  };

  {  // value range and ordering on random states
    double worst_gap = 0, worst_ceiling = 0;
    for (int k = 0; k < n_states; ++k) {
      Rng rng = rng_for(seed, static_cast<uint64_t>(k));
      const TwoQubitState s = random_state(rng);
      const double mn = min_closed(s), gd = gd_closed(s);
      worst_gap = std::max(worst_gap, gd - mn);
      worst_ceiling = std::max(worst_ceiling, mn - 0.5);
    }
    suite("range and ordering (" + std::to_string(n_states) + " states)",
          worst_gap <= 1e-12 && worst_ceiling <= 1e-9,
          "worst gd-min gap " + fmt3(worst_gap));
  }

  {  // closed form vs brute-force measurement search
    const int m = std::min(n_states, 200);
    double worst = 0;
    for (int k = 0; k < m; ++k) {
      Rng rng = rng_for(seed, 1000000 + static_cast<uint64_t>(k));
      const TwoQubitState s = random_state(rng);
      worst = std::max(worst, std::abs(min_closed(s) - min_oracle(s).value));
      worst = std::max(worst, std::abs(gd_closed(s) - gd_oracle(s).value));
    }
    suite("oracle agreement (" + std::to_string(m) + " states)", worst <= 1e-6,
          "worst deviation " + fmt3(worst));
  }

  {  // invariance under local unitaries
    const int m = std::min(n_states, 1000);
    double worst = 0;
    for (int k = 0; k < m; ++k) {
      Rng rng = rng_for(seed, 2000000 + static_cast<uint64_t>(k));
      const TwoQubitState s = random_state(rng);
      const CMat4 u = kron(random_unitary2(rng), random_unitary2(rng));
      const TwoQubitState rot = TwoQubitState::trusted(u * s.rho * dagger(u));
      worst = std::max(worst, std::abs(min_closed(rot) - min_closed(s)));
      worst = std::max(worst, std::abs(gd_closed(rot) - gd_closed(s)));
    }
    suite("local unitary invariance (" + std::to_string(m) + " triples)",
          worst <= 1e-9, "worst shift " + fmt3(worst));
  }

  {  // Kraus completeness across the constructed channel grid
    double worst = 0;
    int count = 0;
    const auto defect = [&](const QubitChannel& ch) {
      CMat2 acc;
      for (const CMat2& e : ch.kraus) acc = acc + dagger(e) * e;
      worst = std::max(worst, max_abs(acc - CMat2::identity()));
      ++count;
    };
    for (double g : detail::val_gammas()) {
      defect(depolarizing(g));
      defect(dephasing(g));
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) defect(gad(g, p));
    }
    suite("channel completeness (" + std::to_string(count) + " channels)",
          worst <= tol::cptp_check, "worst defect " + fmt3(worst));
  }

  {  // explicitly built classical-quantum states carry no discord
    double worst = 0;
    for (int k = 0; k < 200; ++k) {
      Rng rng = rng_for(seed, 3000000 + static_cast<uint64_t>(k));
      worst = std::max(worst, gd_closed(random_classical_quantum(rng)));
    }
    suite("zero-discord classical-quantum states (200 states)", worst <= 1e-9,
          "worst gd " + fmt3(worst));
  }

  {  // trace, positivity, X-structure along evolved trajectories
    double worst_trace = 0, worst_neg = 0, worst_off = 0;
    const auto ts = linspace(0.0, 8.0, 41);
    for (const auto& [fam, a] :
         {std::pair{StateFamily::pure, 0.3}, std::pair{StateFamily::pure, 0.5},
          std::pair{StateFamily::werner, 0.6},
          std::pair{StateFamily::vedral_plenio, 0.25}})
      for (MarkovChannel ch :
           {MarkovChannel::depolarizing, MarkovChannel::dephasing,
            MarkovChannel::damping, MarkovChannel::combined})
        for (double t : ts) {
          const double g = RateSchedule{1.0}.strength_at(t);
          const TwoQubitState st =
              detail::apply_markov(ch, g, 0.67, make_family(fam, a));
          worst_trace =
              std::max(worst_trace, std::abs(st.rho.trace().real() - 1.0));
          worst_neg = std::max(worst_neg, -st.min_eigenvalue());
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              if ((i + j) != 3 && i != j)
                worst_off = std::max(worst_off, std::abs(st.rho.at(i, j)));
        }
    // the memory-kernel damping branch, where the published element list
    // breaks trace, so the engine is the part under test
    LorentzianSpectrum narrow;
    narrow.lambda = 0.1;
    const auto pf = sample_amplitude_p(narrow, linspace(0.0, 30.0, 41));
    for (double a : {0.3, 0.5}) {
      const XState s0 = as_x_state(make_family(StateFamily::pure, a));
      for (const TrajectoryRecord& r :
           evolve_nonmarkov(s0, DecoherenceKind::amplitude, pf)) {
        const TwoQubitState st = to_density(*r.state);
        worst_trace =
            std::max(worst_trace, std::abs(st.rho.trace().real() - 1.0));
        worst_neg = std::max(worst_neg, -st.min_eigenvalue());
      }
    }
    suite("trajectory trace and positivity",
          worst_trace <= 1e-12 && worst_neg <= 1e-9 && worst_off <= 1e-12,
          "trace drift " + fmt3(worst_trace) + ", negativity " +
              fmt3(worst_neg));
  }

  {  // monotone decay under depolarizing and damping. One genuine exception:
     // damping on tilted pure states with alpha > 1/2 drives the local vector
     // through zero and regrows it, lifting the discord by up to ~2.3e-3
     // before both measures resume their decay. The nonlocality never rises.
    bool min_ok = true, gd_ok = true;
    double exception_rise = 0;
    const auto ts = linspace(0.0, 8.0, 201);
    for (StateFamily fam : {StateFamily::pure, StateFamily::werner})
      for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (MarkovChannel ch :
             {MarkovChannel::depolarizing, MarkovChannel::damping})
          for (double p : {1.0, 0.5, 0.67}) {
            if (ch == MarkovChannel::depolarizing && p != 1.0) continue;
            const bool revival_wedge = fam == StateFamily::pure &&
                                       ch == MarkovChannel::damping && a > 0.5;
            const auto rows = evolve_markov(make_family(fam, a), ch,
                                            RateSchedule{1.0}, ts, {}, p);
            for (size_t i = 1; i < rows.size(); ++i) {
              if (rows[i].min_engine > rows[i - 1].min_engine + 1e-10)
                min_ok = false;
              const double rise = rows[i].gd_engine - rows[i - 1].gd_engine;
              if (revival_wedge)
                exception_rise = std::max(exception_rise, rise);
              else if (rise > 1e-10)
                gd_ok = false;
            }
          }
    suite("monotone decay",
          min_ok && gd_ok && exception_rise > 1e-4 && exception_rise < 3e-3,
          "gd revival " + fmt3(exception_rise) +
              " on damped tilted pure states, flat elsewhere");
  }

  {  // nonlocality survives to the end of every dense grid
    bool ok = true;
    const auto ts = linspace(0.0, 8.0, 201);
    for (const auto& [fam, a] :
         {std::pair{StateFamily::pure, 0.3}, std::pair{StateFamily::werner, 0.6},
          std::pair{StateFamily::vedral_plenio, 0.25}})
      for (MarkovChannel ch :
           {MarkovChannel::depolarizing, MarkovChannel::dephasing,
            MarkovChannel::damping}) {
        const auto rows =
            evolve_markov(make_family(fam, a), ch, RateSchedule{1.0}, ts);
        if (rows.front().min_engine <= 0) continue;
        for (const TrajectoryRecord& r : rows)
          if (!(r.min_engine > 0)) ok = false;
      }
    suite("no sudden death", ok, "dense-grid positivity");
  }

  {  // dephasing floor for the werner family as gamma -> 1
    double worst_min = 0, worst_gd = 0;
    for (double a : {0.25, 0.5, 0.75, 1.0}) {
      const TwoQubitState st = apply_local(
          dephasing(1.0 - 1e-12), make_family(StateFamily::werner, a));
      worst_min = std::max(
          worst_min, std::abs(min_closed(st) - 0.25 * a * a));
      worst_gd = std::max(worst_gd, gd_closed(st));
    }
    suite("dephasing robustness floor", worst_min <= 1e-9 && worst_gd <= 1e-9,
          "limit error " + fmt3(worst_min));
  }

  {  // the damping trajectory where the two measures meet and then coincide
    const TwoQubitState s0 = make_family(StateFamily::vedral_plenio, 0.25);
    const auto gap = [&s0](double g) {
      const TwoQubitState st = apply_local(gad(g, 1.0), s0);
      return min_closed(st) - gd_closed(st);
    };
    double lo = 0.0, hi = 0.0;
    bool ordered = gap(0.0) > 0;
    for (double g = 0.0; g < 0.999; g += 0.005)
      if (gap(g) > 1e-9 && !(gap(g + 0.005) > 1e-9)) {
        lo = g;
        hi = g + 0.005;
        break;
      }
    for (int i = 0; i < 60 && hi > lo; ++i) {
      const double mid = 0.5 * (lo + hi);
      (gap(mid) > 1e-9 ? lo : hi) = mid;
    }
    const double gstar = 0.5 * (lo + hi);
    for (double g = 0.0; g < gstar - 1e-3; g += 0.01)
      if (!(gap(g) > 0)) ordered = false;
    const bool found = hi > 0.0 && std::abs(gap(gstar)) < 1e-6;
    suite("crossing location", found && ordered,
          "measures meet at strength " + fmt3(gstar));
  }

  {  // one-sided branch semicontinuity at x -> 0
    CMat4 bd = 0.25 * CMat4::identity();
    bd = bd + 0.125 * kron(pauli::x, pauli::x);
    bd = bd + 0.075 * kron(pauli::y, pauli::y);
    bd = bd + 0.025 * kron(pauli::z, pauli::z);
    const TwoQubitState s0 = TwoQubitState::from_matrix(bd);
    CMat4 zup;
    zup.at(0, 0) = 0.5;
    zup.at(1, 1) = 0.5;
    CMat4 xup = 0.25 * CMat4::identity();
    xup = xup + 0.25 * kron(pauli::x, pauli::id);
    const double delta = 1e-6;
    const auto tilt = [&](const CMat4& probe) {
      return min_closed(
          TwoQubitState::trusted((1.0 - delta) * s0.rho + delta * probe));
    };
    const double at_zero = min_closed(s0);
    const double along_z = tilt(zup), along_x = tilt(xup);
    const bool ok = std::abs(at_zero - 0.085) < 1e-12 &&
                    std::abs(along_z - at_zero) < 1e-4 &&
                    along_x <= at_zero + 1e-6 &&
                    std::abs(along_x - 0.025) < 1e-4;
    suite("branch semicontinuity", ok,
          "aligned " + fmt3(along_z) + ", jump path " + fmt3(along_x));
  }

  {  // survival factors bounded and cross-checked against direct quadrature
    bool bounded = true;
    const auto ts = linspace(0.0, 30.0, 301);
    for (double lambda : {0.1, 1.0, 20.0}) {
      LorentzianSpectrum s;
      s.lambda = lambda;
      for (const cplx& v : sample_amplitude_p(s, ts).p)
        if (std::abs(v) > 1.0 + tol::amplitude_norm) bounded = false;
      for (const cplx& v :
           dephasing_p(NoiseKernel{0.5 * lambda, lambda, 0.01}, ts).p)
        if (std::abs(v) > 1.0 + tol::amplitude_norm) bounded = false;
    }
    const NoiseKernel k{0.05, 0.1, 0.01};
    const auto quad = [&k] {
      // direct trapezoid treatment of the integral form, independent of the
      // ODE reduction used by dephasing_p
      const double h = 1e-3;
      const int n = 10000;
      std::vector<cplx> fk(n + 1), p(n + 1);
      for (int i = 0; i <= n; ++i)
        fk[i] = k.amplitude *
                std::exp(cplx(-k.decay * i * h, k.phase_rate * i * h));
      p[0] = 1.0;
      cplx dp = 0.0;
      for (int m = 0; m < n; ++m) {
        cplx s = 0.5 * h * fk[m + 1] * p[0];
        for (int j = 1; j <= m; ++j) s += h * fk[m + 1 - j] * p[j];
        p[m + 1] =
            (p[m] + 0.5 * h * dp - 0.5 * h * s) / (1.0 + 0.25 * h * h * fk[0]);
        dp = -(s + 0.5 * h * fk[0].real() * p[m + 1]);
      }
      return p;
    }();
    const auto grid = linspace(0.0, 10.0, 101);
    const auto ode = dephasing_p(k, grid);
    double worst = 0;
    for (size_t i = 0; i < grid.size(); ++i)
      worst = std::max(worst, std::abs(ode.p[i] - quad[i * 100]));
    suite("survival factor bounds and quadrature",
          bounded && worst <= 1e-6, "ode vs quadrature " + fmt3(worst));
  }

  {  // broad-bandwidth phase noise tracks the flat-spectrum law; the early
     // transient genuinely exceeds 5%, so the tight window starts at 1.2
    const NoiseKernel k{10.0, 20.0, 0.0};
    const auto ts = linspace(0.0, 2.0, 201);
    const auto pf = dephasing_p(k, ts);
    const XState s0 = as_x_state(make_family(StateFamily::pure, 0.3));
    const auto rows = evolve_nonmarkov(s0, DecoherenceKind::dephasing, pf);
    double worst_all = 0, worst_tail = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
      const double g = 1.0 - std::exp(-rows[i].t);
      const double flat = std::get<double>(
          law_eval(ClosedFormLaw::deph_pure_min, 0.3, g));
      const double rel = std::abs(rows[i].min_engine - flat) / flat;
      worst_all = std::max(worst_all, rel);
      if (rows[i].t >= 1.2) worst_tail = std::max(worst_tail, rel);
    }
    suite("markov limit tracking", worst_all <= 0.12 && worst_tail <= 0.05,
          "peak " + fmt3(worst_all) + ", tail " + fmt3(worst_tail));
  }

  rep.pass = true;
  for (const LawReport& l : rep.laws)
    if (l.required && !l.verified) rep.pass = false;
  for (const SuiteReport& s : rep.suites)
    if (!s.pass) rep.pass = false;
  return rep;
}

inline void print_validation(std::ostream& os, const ValidationReport& rep) {
  os << "correlation dynamics validation\n";
  os << "seed " << rep.seed << ", " << rep.n_states << " random states\n\n";
  os << "closed-form laws vs engine\n";
  char line[160];
  for (const LawReport& l : rep.laws) {
    std::snprintf(line, sizeof line, "  %-28s %-13s max residual %-10s %s\n",
                  l.name.c_str(), l.required ? "required" : "informational",
                  detail::fmt3(l.max_residual).c_str(),
                  l.verified ? "VERIFIED" : "DISCREPANT");
    os << line;
  }
  os << "\ninvariant suites\n";
  for (const SuiteReport& s : rep.suites) {
    std::snprintf(line, sizeof line, "  %-46s %-5s %s\n", s.name.c_str(),
                  s.pass ? "PASS" : "FAIL", s.detail.c_str());
    os << line;
  }
  os << "\noverall: " << (rep.pass ? "PASS" : "FAIL") << "\n";
}

}  // namespace qcorr
