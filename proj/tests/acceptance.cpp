#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qcorr/qcorr.hpp"
#include "volterra.hpp"

// Release gate. Each criterion prints exactly one PASS/FAIL line with its
// measured numbers and the pinned bars; the process exits nonzero if any
// criterion fails. argv[1] names the command-line binary for the end-to-end
// determinism check.

using namespace qcorr;

namespace {

int failures = 0;

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string g3(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

void line(int idx, bool ok, const std::string& text) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// 1: every maximally entangled pair scores 0.5 on both measures, closed form
// and search, in under a second.
void criterion1() {
  const double t0 = now_s();
  double worst = 0;
  for (BellState b : {BellState::phi_plus, BellState::phi_minus,
                      BellState::psi_plus, BellState::psi_minus}) {
    const TwoQubitState s = make_bell(b);
    worst = std::max({worst, std::abs(min_closed(s) - 0.5),
                      std::abs(gd_closed(s) - 0.5),
                      std::abs(min_oracle(s).value - 0.5),
                      std::abs(gd_oracle(s).value - 0.5)});
  }
  const double dt = now_s() - t0;
  line(1, worst <= 1e-12 && dt < 1.0,
       "maximally entangled pairs give 0.5 everywhere, worst deviation " +
           g3(worst) + " (bar 1e-12), " + g3(dt) + " s (bar 1)");
}

// 2: depolarized pure family follows 2a(1-a)(1-g)^4 on the full figure grid.
void criterion2() {
  const double t0 = now_s();
  double worst = 0;
  const auto ts = linspace(0.0, 8.0, 400);
  for (double a : linspace(0.0, 1.0, 101)) {
    const auto rows =
        evolve_markov(make_family(StateFamily::pure, a),
                      MarkovChannel::depolarizing, RateSchedule{1.0}, ts,
                      FamilyParam{StateFamily::pure, a});
    for (const TrajectoryRecord& r : rows) {
      const double want = 2 * a * (1 - a) * std::pow(1 - r.strength, 4);
      worst = std::max({worst, std::abs(r.min_engine - want),
                        std::abs(r.gd_engine - want)});
    }
  }
  const double dt = now_s() - t0;
  line(2, worst <= 1e-9 && dt < 30.0,
       "depolarized pure family tracks the quartic law on 101x400 points, "
       "worst residual " +
           g3(worst) + " (bar 1e-9), " + g3(dt) + " s (bar 30)");
}

// 3: depolarized Werner family follows (a^2/2)(1-g)^4 with the local vector
// pinned at zero along every trajectory.
void criterion3() {
  double worst = 0, worst_x = 0;
  const auto ts = linspace(0.0, 8.0, 400);
  for (double a : linspace(0.0, 1.0, 101)) {
    const auto rows =
        evolve_markov(make_family(StateFamily::werner, a),
                      MarkovChannel::depolarizing, RateSchedule{1.0}, ts,
                      FamilyParam{StateFamily::werner, a});
    for (const TrajectoryRecord& r : rows) {
      const double want = 0.5 * a * a * std::pow(1 - r.strength, 4);
      worst = std::max({worst, std::abs(r.min_engine - want),
                        std::abs(r.gd_engine - want)});
      if (!r.state) {
        worst_x = 1;
        continue;
      }
      const BlochForm b = bloch_decompose(to_density(*r.state));
      worst_x = std::max(worst_x, b.x.norm());
    }
  }
  line(3, worst <= 1e-9 && worst_x <= 1e-12,
       "depolarized Werner family tracks the quartic law, worst residual " +
           g3(worst) + " (bar 1e-9), worst local-vector norm " + g3(worst_x) +
           " (bar 1e-12)");
}

// 4: full dephasing leaves the balanced pure member at 0.25 nonlocality with
// zero discord while every unbalanced member decays to zero.
void criterion4() {
  const QubitChannel full = dephasing(1.0 - 1e-12);
  const TwoQubitState balanced =
      apply_local(full, make_family(StateFamily::pure, 0.5));
  const double mn = min_closed(balanced), gd = gd_closed(balanced);
  double worst_off = 0;
  for (double a : {0.0, 0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9, 1.0})
    worst_off = std::max(
        worst_off, min_closed(apply_local(full, make_family(StateFamily::pure, a))));
  line(4,
       std::abs(mn - 0.25) <= 1e-9 && gd <= 1e-9 && worst_off <= 1e-9,
       "dephased balanced pure member holds 0.25 (got " + g3(mn) +
           ", discord " + g3(gd) + "), unbalanced members decay to " +
           g3(worst_off) + " (bars 1e-9)");
}

// 5: fully dephased Werner members keep (a/2)^2 nonlocality and no discord.
void criterion5() {
  double worst_min = 0, worst_gd = 0;
  for (double a : {0.25, 0.5, 0.75, 1.0}) {
    const TwoQubitState st = apply_local(dephasing(1.0 - 1e-12),
                                         make_family(StateFamily::werner, a));
    worst_min = std::max(worst_min, std::abs(min_closed(st) - 0.25 * a * a));
    worst_gd = std::max(worst_gd, gd_closed(st));
  }
  line(5, worst_min <= 1e-9 && worst_gd <= 1e-9,
       "dephased Werner floor tracks (a/2)^2, worst deviation " +
           g3(worst_min) + ", residual discord " + g3(worst_gd) +
           " (bars 1e-9)");
}

// 6: under amplitude damping the two measures of the tilted mixed member
// cross exactly once, located by bisection.
void criterion6() {
  const TwoQubitState s0 = make_family(StateFamily::vedral_plenio, 0.25);
  const auto gap = [&s0](double t) {
    const double g = RateSchedule{1.0}.strength_at(t);
    const TwoQubitState st = apply_local(gad(g, 1.0), s0);
    return min_closed(st) - gd_closed(st);
  };
  double lo = 0, hi = 0;
  for (double t = 0.01; t <= 4.0; t += 0.01)
    if (gap(t) <= 0) {
      hi = t;
      lo = t - 0.01;
      break;
    }
  bool ok = hi > 0;
  double tstar = 0, resid = 1;
  if (ok) {
    while (hi - lo > 1e-6) {
      const double m = 0.5 * (lo + hi);
      (gap(m) > 0 ? lo : hi) = m;
    }
    tstar = 0.5 * (lo + hi);
    resid = std::abs(gap(tstar));
    ok = resid < 1e-6 && gap(0.25 * tstar) > 0 &&
         gap(std::max(tstar - 1e-3, 0.0)) > 0;
  }
  line(6, ok,
       "damped tilted mixed member crosses at t* = " + g3(tstar) + ", |gap| " +
           g3(resid) + " (bar 1e-6), nonlocality leads before the crossing");
}

// 7: closed forms agree with the measurement search on 10^4 random states and
// every sample obeys 0 <= discord <= nonlocality <= 0.5.
void criterion7() {
  const double t0 = now_s();
  double worst_dev = 0, worst_gap = 0, worst_ceiling = 0, worst_floor = 0;
  for (int k = 0; k < 10000; ++k) {
    Rng rng = rng_for(12345, 1000000 + static_cast<std::uint64_t>(k));
    const TwoQubitState s = random_state(rng);
    const double mn = min_closed(s), gd = gd_closed(s);
    worst_dev = std::max({worst_dev, std::abs(mn - min_oracle(s).value),
                          std::abs(gd - gd_oracle(s).value)});
    worst_gap = std::max(worst_gap, gd - mn);
    worst_ceiling = std::max(worst_ceiling, mn - 0.5);
    worst_floor = std::max(worst_floor, -gd);
  }
  const double dt = now_s() - t0;
  line(7,
       worst_dev <= 1e-6 && worst_gap <= 1e-12 && worst_ceiling <= 1e-9 &&
           worst_floor <= 0.0 && dt < 300.0,
       "10^4 random states: worst search deviation " + g3(worst_dev) +
           " (bar 1e-6), worst ordering slack " + g3(worst_gap) +
           " (bar 1e-12), " + g3(dt) + " s (bar 300)");
}

// 8: both measures are invariant under random local rotations.
void criterion8() {
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng = rng_for(12345, 2000000 + static_cast<std::uint64_t>(k));
    const TwoQubitState s = random_state(rng);
    const CMat4 u = kron(random_unitary2(rng), random_unitary2(rng));
    const TwoQubitState rot = TwoQubitState::trusted(u * s.rho * dagger(u));
    worst = std::max({worst, std::abs(min_closed(rot) - min_closed(s)),
                      std::abs(gd_closed(rot) - gd_closed(s))});
  }
  line(8, worst <= 1e-9,
       "10^3 random local rotations shift the measures by at most " +
           g3(worst) + " (bar 1e-9)");
}

// 9: constructed channels are complete, the printed depolarizing coefficient
// variant is not, and the report records that discrepancy as informational.
void criterion9() {
  double worst = 0;
  const auto defect = [&worst](const QubitChannel& ch) {
    CMat2 acc;
    for (const CMat2& e : ch.kraus) acc = acc + dagger(e) * e;
    worst = std::max(worst, max_abs(acc - CMat2::identity()));
  };
  for (double g : linspace(0.0, 1.0, 21)) {
    defect(depolarizing(g));
    defect(dephasing(g));
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) defect(gad(g, p));
  }
  const ValidationReport rep = run_validation(12345, 10);
  const LawReport* variant = nullptr;
  for (const LawReport& l : rep.laws)
    if (l.name == "depol_variant_completeness") variant = &l;
  const bool variant_documented =
      variant && !variant->required && !variant->verified &&
      variant->max_residual > 0.5;
  line(9, worst <= 1e-10 && variant_documented,
       "constructed channels complete to " + g3(worst) +
           " (bar 1e-10); printed coefficient variant breaks completeness by " +
           g3(variant ? variant->max_residual : 0.0) +
           " and is reported informationally");
}

// 10: the memory-kernel dephasing engine matches its closed-form laws, the
// phase-noise integrator matches the zero-detuning solution, and both match
// an independent integral-equation solver.
void criterion10() {
  const FigureData d = figure_data_nonmarkov(NonMarkovFigure::f10, {}, 3001, 101);
  double worst_res = 0;
  bool preds = true;
  for (const FigureSeries& s : d.series)
    for (const TrajectoryRecord& r : s.rows) {
      if (!r.res_min || !r.res_gd) {
        preds = false;
        continue;
      }
      worst_res = std::max({worst_res, *r.res_min, *r.res_gd});
    }

  LorentzianSpectrum flat;  // lambda 0.1, zero detuning
  const auto ts = linspace(0.0, 30.0, 301);
  const auto pd = dephasing_p(kernel_from_spectrum(flat), ts);
  double worst_ode = 0;
  for (size_t i = 0; i < ts.size(); ++i)
    worst_ode = std::max(worst_ode, std::abs(pd.p[i] - amplitude_p(flat, ts[i])));

  const NoiseKernel detuned = kernel_from_spectrum(default_spectrum(NonMarkovFigure::f10));
  const auto oracle = qcorr_test::volterra_p(detuned, 10.0, 1e-3);
  const auto vts = linspace(0.0, 10.0, 101);
  const auto vode = dephasing_p(detuned, vts);
  double worst_volterra = 0;
  for (size_t i = 0; i < vts.size(); ++i)
    worst_volterra =
        std::max(worst_volterra, std::abs(vode.p[i] - oracle[i * 100]));

  line(10,
       preds && worst_res <= 1e-9 && worst_ode <= 1e-8 &&
           worst_volterra <= 1e-6,
       "phase-memory grid residual " + g3(worst_res) +
           " (bar 1e-9), integrator vs closed form " + g3(worst_ode) +
           " (bar 1e-8), vs integral-equation solver " + g3(worst_volterra) +
           " (bar 1e-6)");
}

// 11: the amplitude survival factor first vanishes near 8.24 decay times and
// the balanced pure member's nonlocality revives after that collapse.
void criterion11() {
  const LorentzianSpectrum narrow;  // lambda 0.1
  const double zero = amplitude_first_zero(narrow, 30.0);

  const auto ts = linspace(0.0, 15.0, 1501);
  const auto pf = sample_amplitude_p(narrow, ts);
  const XState s0 = as_x_state(make_family(StateFamily::pure, 0.5));
  const auto rows = evolve_nonmarkov(s0, DecoherenceKind::amplitude, pf);
  size_t dip_at = 0;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].min_engine < rows[dip_at].min_engine) dip_at = i;
  double later_peak = 0;
  for (size_t i = dip_at; i < rows.size(); ++i)
    later_peak = std::max(later_peak, rows[i].min_engine);
  const double rise = later_peak - rows[dip_at].min_engine;
  const bool interior = dip_at > 0 && dip_at + 1 < rows.size();

  line(11, std::abs(zero - 8.24) <= 0.05 && interior && rise >= 1e-4,
       "survival factor first vanishes at " + g3(zero) +
           " (bar 8.24 +- 0.05); nonlocality dips at t = " +
           g3(rows[dip_at].t) + " then revives by " + g3(rise) +
           " (bar 1e-4)");
}

// 12: the installed binary reproduces its validation report byte for byte.
void criterion12(const char* cli) {
  if (!cli) {
    line(12, false, "no binary path supplied on the command line");
    return;
  }
  const auto capture = [cli](std::string& out) {
    const std::string cmd =
        std::string("'") + cli + "' validate --n 10000 --seed 12345 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::array<char, 4096> buf;
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
      out.append(buf.data(), n);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  std::string a, b;
  const int ca = capture(a);
  const int cb = capture(b);
  const bool ok = ca == 0 && cb == 0 && !a.empty() && a == b &&
                  a.find("overall: PASS") != std::string::npos;
  line(12, ok,
       std::string("two validation runs at the default seed exit ") +
           std::to_string(ca) + "/" + std::to_string(cb) + " and are " +
           (a == b ? "byte-identical" : "DIFFERENT"));
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12(argc > 1 ? argv[1] : nullptr);
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures > 0 ? 1 : 0;
}
