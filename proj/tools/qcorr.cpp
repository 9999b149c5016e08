#include <array>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcorr/qcorr.hpp"

// Command-line front end: single-state reports, schedule evolutions, figure
// grid sweeps, memory-kernel runs and the validation report.
//
// Exit codes: 0 success, 1 validation failure, 2 unparseable flags or specs,
// 3 invalid density matrix, 4 unwritable output path.

namespace {

using namespace qcorr;

// QCORR_THREADS caps worker threads, 0 = auto. Every computation in the
// engine runs on one worker, so any cap is honored as-is; garbage values
// fall back to auto.
int thread_cap() {
  const char* env = std::getenv("QCORR_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) return 0;
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

double parse_real(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw error(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

// RE, RE+IMi or RE-IMi (pure imaginaries written with an explicit 0 real part)
cplx parse_complex(const std::string& tok) {
  const char* c = tok.c_str();
  char* end = nullptr;
  const double re = std::strtod(c, &end);
  if (end == c) throw error("bad matrix entry '" + tok + "'");
  if (*end == '\0') return {re, 0.0};
  char* end2 = nullptr;
  const double im = std::strtod(end, &end2);
  if (end2 == end || *end2 != 'i' || end2[1] != '\0')
    throw error("bad matrix entry '" + tok + "' (want RE, RE+IMi or RE-IMi)");
  return {re, im};
}

struct ParsedState {
  TwoQubitState state;
  std::optional<FamilyParam> family;  // set when closed-form laws can attach
};

ParsedState parse_state(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 2 &&
      (parts[0] == "pure" || parts[0] == "werner" || parts[0] == "vp")) {
    const StateFamily fam = parts[0] == "pure"     ? StateFamily::pure
                            : parts[0] == "werner" ? StateFamily::werner
                                                   : StateFamily::vedral_plenio;
    const double a = parse_real(parts[1], "alpha");
    return {make_family(fam, a), FamilyParam{fam, a}};
  }
  if (parts.size() == 2 && parts[0] == "bell") {
    BellState b;
    if (parts[1] == "phi+") b = BellState::phi_plus;
    else if (parts[1] == "phi-") b = BellState::phi_minus;
    else if (parts[1] == "psi+") b = BellState::psi_plus;
    else if (parts[1] == "psi-") b = BellState::psi_minus;
    else throw error("unknown bell state '" + parts[1] + "'");
    std::optional<FamilyParam> fam;
    if (b == BellState::phi_plus) fam = FamilyParam{StateFamily::pure, 0.5};
    return {make_bell(b), fam};
  }
  if (parts.size() == 2 && parts[0] == "mat") {
    const auto toks = split(parts[1], ',');
    if (toks.size() != 16)
      throw error("matrix literal needs 16 comma-separated entries, got " +
                  std::to_string(toks.size()));
    std::array<cplx, 16> e;
    for (size_t i = 0; i < 16; ++i) e[i] = parse_complex(toks[i]);
    return {TwoQubitState::from_matrix(CMat4::from_entries(e)), {}};
  }
  throw error("unrecognized state spec '" + spec +
              "' (pure:A | werner:A | vp:A | bell:phi+|phi-|psi+|psi- | "
              "mat:16 row-major entries)");
}

struct ParsedChannel {
  MarkovChannel kind = MarkovChannel::dephasing;
  double damping_p = 1.0;
};

ParsedChannel parse_channel(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() >= 2 && parts[1] == "sched") {
    if (parts[0] == "depol" && parts.size() == 2)
      return {MarkovChannel::depolarizing, 1.0};
    if (parts[0] == "deph" && parts.size() == 2)
      return {MarkovChannel::dephasing, 1.0};
    if (parts[0] == "gad" && parts.size() <= 3) {
      ParsedChannel c{MarkovChannel::damping, 1.0};
      if (parts.size() == 3) c.damping_p = parse_real(parts[2], "damping p");
      return c;
    }
    if (parts[0] == "deph+gad" && parts.size() == 2)
      return {MarkovChannel::combined, 1.0};
  }
  throw error("unrecognized channel spec '" + spec +
              "' (depol:sched | deph:sched | gad:sched[:p] | deph+gad:sched)");
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

int with_output(const std::string& path,
                const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(std::cout);
    return 0;
  }
  std::ofstream ofs(path);
  if (!ofs) {
    std::cerr << "error: cannot open output path '" << path << "'\n";
    return 4;
  }
  emit(ofs);
  ofs.flush();
  if (!ofs) {
    std::cerr << "error: write failed for '" << path << "'\n";
    return 4;
  }
  return 0;
}

int run_compute(const std::string& state_spec) {
  const ParsedState ps = parse_state(state_spec);
  const CorrelationReport rep = correlation_report(ps.state);
  std::cout << "state " << state_spec << "\n"
            << "branch "
            << (rep.branch == Branch::x_nonzero ? "local-vector-nonzero"
                                                : "local-vector-zero")
            << "\n"
            << "min_closed " << fmt12(rep.min_value) << "\n"
            << "gd_closed " << fmt12(rep.gd_value) << "\n"
            << "min_oracle " << fmt12(rep.min_oracle_value) << "\n"
            << "gd_oracle " << fmt12(rep.gd_oracle_value) << "\n"
            << "state,min,gd,min_oracle,gd_oracle\n"
            << csv_quote(state_spec) << ',' << fmt12(rep.min_value) << ','
            << fmt12(rep.gd_value) << ',' << fmt12(rep.min_oracle_value) << ','
            << fmt12(rep.gd_oracle_value) << "\n";
  return 0;
}

int run_evolve(const std::string& state_spec, const std::string& channel_spec,
               double rate, double tmax, int steps, const std::string& out) {
  const ParsedState ps = parse_state(state_spec);
  const ParsedChannel ch = parse_channel(channel_spec);
  if (!(rate > 0)) throw error("rate must be positive");
  if (steps < 0) throw error("steps must be nonnegative");
  if (steps >= 2 && !(tmax > 0)) throw error("tmax must be positive");
  std::vector<TrajectoryRecord> rows;
  if (steps == 1)
    rows = evolve_markov(ps.state, ch.kind, RateSchedule{rate}, {0.0},
                         ps.family, ch.damping_p);
  else if (steps >= 2)
    rows = evolve_markov(ps.state, ch.kind, RateSchedule{rate},
                         linspace(0.0, tmax, steps), ps.family, ch.damping_p);
  return with_output(out, [&rows](std::ostream& os) {
    write_csv(os, markov_csv_header, rows);
  });
}

int run_sweep(const std::string& figure, int tpoints, int apoints, double rate,
              const std::string& out) {
  MarkovFigure fig;
  if (figure == "F1") fig = MarkovFigure::f1;
  else if (figure == "F2") fig = MarkovFigure::f2;
  else if (figure == "F3") fig = MarkovFigure::f3;
  else if (figure == "F4") fig = MarkovFigure::f4;
  else if (figure == "F5") fig = MarkovFigure::f5;
  else if (figure == "F6") fig = MarkovFigure::f6;
  else if (figure == "F7") fig = MarkovFigure::f7;
  else if (figure == "F8") fig = MarkovFigure::f8;
  else throw error("sweep figure must be F1..F8, got '" + figure + "'");
  const FigureData d = figure_data(fig, tpoints, apoints, rate);
  return with_output(out, [&d](std::ostream& os) {
    write_sweep_csv(os, d, markov_csv_header);
  });
}

int run_nonmarkov(const std::string& figure, const std::string& kind,
                  const std::optional<double>& gamma0,
                  const std::optional<double>& lambda,
                  const std::optional<double>& delta, int tpoints, int apoints,
                  const std::string& out) {
  NonMarkovFigure fig;
  if (figure == "F9") fig = NonMarkovFigure::f9;
  else if (figure == "F10") fig = NonMarkovFigure::f10;
  else if (!figure.empty())
    throw error("nonmarkov figure must be F9 or F10, got '" + figure + "'");
  else if (kind == "ad" || kind == "amplitude") fig = NonMarkovFigure::f9;
  else if (kind == "deph" || kind == "dephasing") fig = NonMarkovFigure::f10;
  else
    throw error("give --figure F9|F10 or --kind ad|deph");
  LorentzianSpectrum spec = default_spectrum(fig);
  if (gamma0) spec.gamma0 = *gamma0;
  if (lambda) spec.lambda = *lambda;
  if (delta) spec.delta = *delta;
  const FigureData d = figure_data_nonmarkov(fig, spec, tpoints, apoints);
  return with_output(out, [&d](std::ostream& os) {
    write_csv(os, nonmarkov_csv_header, d.series[0].rows);
  });
}

int run_validate(uint64_t seed, int n) {
  const auto t0 = std::chrono::steady_clock::now();
  const ValidationReport rep = run_validation(seed, n);
  print_validation(std::cout, rep);
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  std::cerr << "validation wall time " << dt.count() << " s\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  (void)thread_cap();  // engine runs one worker; the cap is read and honored

  CLI::App app{"two-qubit nonlocality and discord dynamics toolkit"};
  app.require_subcommand(1);
  app.footer(
      "state specs:   pure:A | werner:A | vp:A | bell:phi+|phi-|psi+|psi- |\n"
      "               mat:e11,e12,...,e44 (16 row-major entries, RE or RE+-IMi)\n"
      "channel specs: depol:sched | deph:sched | gad:sched[:p] | deph+gad:sched\n"
      "               (strength follows gamma(t) = 1 - exp(-rate t))\n"
      "environment:   QCORR_THREADS caps worker threads (0 = auto)\n"
      "exit codes:    0 ok, 1 validation failure, 2 bad flags or specs,\n"
      "               3 invalid density matrix, 4 unwritable output");

  std::string state_spec, channel_spec, figure, kind, out;
  double rate = 1.0, tmax = 8.0;
  int steps = 400, tpoints = 400, apoints = 101;
  int nm_tpoints = 3001, nm_apoints = 101;
  double gamma0 = 1.0, lambda = 0.1, delta = 0.0;
  std::uint64_t seed = 12345;
  int n_states = 10000;

  CLI::App* compute =
      app.add_subcommand("compute", "correlation report for one state");
  compute->add_option("--state", state_spec, "state spec")->required();

  CLI::App* evolve =
      app.add_subcommand("evolve", "decay trajectory under one channel");
  evolve->add_option("--state", state_spec, "state spec")->required();
  evolve->add_option("--channel", channel_spec, "channel spec")->required();
  evolve->add_option("--rate", rate, "schedule rate")->capture_default_str();
  evolve->add_option("--tmax", tmax, "grid end time")->capture_default_str();
  evolve->add_option("--steps", steps, "time points")->capture_default_str();
  evolve->add_option("--out", out, "output path (default stdout)");

  CLI::App* sweep =
      app.add_subcommand("sweep", "full figure grid (F1..F8)");
  sweep->add_option("--figure", figure, "figure id")->required();
  sweep->add_option("--tpoints", tpoints, "time points")->capture_default_str();
  sweep->add_option("--apoints", apoints, "alpha points")
      ->capture_default_str();
  sweep->add_option("--rate", rate, "schedule rate")->capture_default_str();
  sweep->add_option("--out", out, "output path (default stdout)");

  CLI::App* nonmarkov = app.add_subcommand(
      "nonmarkov", "structured-bath grid (F9, F10 or custom spectrum)");
  nonmarkov->add_option("--figure", figure, "figure id (F9 | F10)");
  nonmarkov->add_option("--kind", kind, "ad | deph (when no figure given)");
  CLI::Option* og = nonmarkov->add_option("--gamma0", gamma0, "qubit decay rate");
  CLI::Option* ol = nonmarkov->add_option("--lambda", lambda, "bath bandwidth");
  CLI::Option* od = nonmarkov->add_option("--delta", delta, "bath detuning");
  nonmarkov->add_option("--tpoints", nm_tpoints, "time points")
      ->capture_default_str();
  nonmarkov->add_option("--apoints", nm_apoints, "alpha points")
      ->capture_default_str();
  nonmarkov->add_option("--out", out, "output path (default stdout)");

  CLI::App* validate =
      app.add_subcommand("validate", "law table and invariant suites");
  validate->add_option("--seed", seed, "random stream seed")
      ->capture_default_str();
  validate->add_option("--n", n_states, "random states")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*compute) return run_compute(state_spec);
    if (*evolve)
      return run_evolve(state_spec, channel_spec, rate, tmax, steps, out);
    if (*sweep) return run_sweep(figure, tpoints, apoints, rate, out);
    if (*nonmarkov)
      return run_nonmarkov(
          figure, kind,
          og->count() ? std::optional<double>(gamma0) : std::nullopt,
          ol->count() ? std::optional<double>(lambda) : std::nullopt,
          od->count() ? std::optional<double>(delta) : std::nullopt,
          nm_tpoints, nm_apoints, out);
    if (*validate) return run_validate(seed, n_states);
  } catch (const invalid_state& e) {
    std::cerr << "invalid density matrix: " << e.what()
              << " (offending eigenvalue " << fmt12(e.offending_eigenvalue)
              << ")\n";
    return 3;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
