#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// End-to-end checks against the installed command-line binary. The build
// passes its absolute path in through QCORR_CLI_PATH.

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the tool with stderr dropped; captures stdout and the exit code.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string(QCORR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string grab_line(const std::string& text, const std::string& prefix) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind(prefix, 0) == 0) return line;
  return {};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream ifs(path);
  std::ostringstream os;
  os << ifs.rdbuf();
  return os.str();
}

constexpr const char* markov_header =
    "t,gamma,alpha,min_engine,gd_engine,min_pred,gd_pred,res_min,res_gd";
constexpr const char* nonmarkov_header =
    "t,p_abs,alpha,min_engine,gd_engine,min_pred,gd_pred,res_min,res_gd";

}  // namespace

TEST_CASE("cli single-state reports") {
  SECTION("maximally entangled pair") {
    const RunResult r = run_cli("compute --state bell:phi+");
    CHECK(r.code == 0);
    CHECK(grab_line(r.out, "min_closed") == "min_closed 0.5");
    CHECK(grab_line(r.out, "gd_closed") == "gd_closed 0.5");
    CHECK(grab_line(r.out, "branch") == "branch local-vector-zero");
    CHECK(grab_line(r.out, "bell:phi+,") == "bell:phi+,0.5,0.5,0.5,0.5");
  }

  SECTION("partially mixed family member") {
    const RunResult r = run_cli("compute --state werner:0.6");
    CHECK(r.code == 0);
    CHECK(grab_line(r.out, "min_closed") == "min_closed 0.18");
    CHECK(grab_line(r.out, "gd_closed") == "gd_closed 0.18");
  }

  SECTION("matrix literal with complex entries") {
    const RunResult r = run_cli(
        "compute --state "
        "'mat:0.5,0,0,0-0.5i,0,0,0,0,0,0,0,0,0+0.5i,0,0,0.5'");
    CHECK(r.code == 0);
    CHECK(grab_line(r.out, "min_closed") == "min_closed 0.5");
  }
}

TEST_CASE("cli trajectory output") {
  SECTION("long dephasing run settles on the entanglement floor") {
    const RunResult r = run_cli(
        "evolve --state pure:0.5 --channel deph:sched --rate 1 --tmax 8 "
        "--steps 400");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 401);
    CHECK(rows[0] == markov_header);
    double t = 0, g = 0, a = 0, mn = -1;
    REQUIRE(std::sscanf(rows.back().c_str(), "%lf,%lf,%lf,%lf", &t, &g, &a,
                        &mn) == 4);
    CHECK(t == 8.0);
    CHECK(mn >= 0.25);
    CHECK(mn <= 0.2501);
  }

  SECTION("zero steps produce a header-only document") {
    const RunResult r =
        run_cli("evolve --state pure:0.5 --channel deph:sched --steps 0");
    CHECK(r.code == 0);
    CHECK(r.out == std::string(markov_header) + "\n");
  }

  SECTION("one step reports the initial point with predictions") {
    const RunResult r =
        run_cli("evolve --state pure:0.5 --channel depol:sched --steps 1");
    CHECK(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1] == "0,0,0.5,0.5,0.5,0.5,0.5,0,0");
  }

  SECTION("matrix-literal states evolve without predictions") {
    const RunResult r = run_cli(
        "evolve --state 'mat:0.5,0,0,0.5,0,0,0,0,0,0,0,0,0.5,0,0,0.5' "
        "--channel depol:sched --tmax 1 --steps 3");
    CHECK(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1] == "0,0,,0.5,0.5,,,,");
  }
}

TEST_CASE("cli figure documents") {
  SECTION("markov grids carry figure and series columns") {
    const RunResult r = run_cli("sweep --figure F8 --tpoints 3 --apoints 2");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    CHECK(rows[0] == std::string("figure,series,") + markov_header);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[1].rfind("F8,", 0) == 0);
  }

  SECTION("structured-bath grids use the survival-factor column") {
    const RunResult r =
        run_cli("nonmarkov --figure F10 --tpoints 3 --apoints 2");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    CHECK(rows[0] == nonmarkov_header);
    CHECK(rows[1].rfind("0,1,0,", 0) == 0);
  }

  SECTION("kind aliases select the matching grid") {
    const RunResult a = run_cli("nonmarkov --kind ad --tpoints 2 --apoints 2");
    CHECK(a.code == 0);
    const RunResult d =
        run_cli("nonmarkov --kind dephasing --tpoints 2 --apoints 2");
    CHECK(d.code == 0);
  }
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("compute").code == 2);
  CHECK(run_cli("compute --state pure:1.5").code == 2);
  CHECK(run_cli("compute --state bell:omega+").code == 2);
  CHECK(run_cli("compute --state 'mat:1,2,3'").code == 2);
  CHECK(run_cli("evolve --state pure:0.5 --channel bogus:sched --steps 4")
            .code == 2);
  CHECK(run_cli("evolve --state pure:0.5 --channel depol --steps 4").code ==
        2);
  CHECK(run_cli("sweep --figure F11").code == 2);
  CHECK(run_cli("nonmarkov --figure F3").code == 2);
  CHECK(run_cli("nonmarkov --kind never").code == 2);
  CHECK(run_cli("validate --n 0").code == 2);

  SECTION("invalid densities report the offending eigenvalue") {
    const RunResult r = run_cli(
        "compute --state 'mat:2,0,0,0,0,-1,0,0,0,0,0,0,0,0,0,0'");
    CHECK(r.code == 3);
  }

  SECTION("unwritable output paths fail distinctly") {
    const RunResult r = run_cli(
        "evolve --state pure:0.5 --channel deph:sched --steps 2 --tmax 1 "
        "--out /nonexistent-dir/x.csv");
    CHECK(r.code == 4);
  }
}

TEST_CASE("cli determinism") {
  SECTION("validation output is byte-identical across runs") {
    const RunResult a = run_cli("validate --n 30 --seed 9");
    const RunResult b = run_cli("validate --n 30 --seed 9");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("overall: PASS") != std::string::npos);
  }

  SECTION("file output matches stdout output byte for byte") {
    const std::string path = "/tmp/qcorr_cli_determinism.csv";
    const std::string args =
        "evolve --state werner:0.8 --channel depol:sched --tmax 4 --steps 50";
    const RunResult direct = run_cli(args);
    REQUIRE(direct.code == 0);
    REQUIRE(run_cli(args + " --out " + path).code == 0);
    CHECK(slurp(path) == direct.out);
    std::remove(path.c_str());
  }

  SECTION("thread cap values never change results") {
    const RunResult base = run_cli("sweep --figure F1 --tpoints 3 --apoints 3");
    for (const char* env :
         {"QCORR_THREADS=0", "QCORR_THREADS=2", "QCORR_THREADS=garbage"}) {
      const RunResult r =
          run_cli("sweep --figure F1 --tpoints 3 --apoints 3", env);
      CHECK(r.code == 0);
      CHECK(r.out == base.out);
    }
  }
}
