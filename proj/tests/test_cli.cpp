#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kronlap/config.hpp"
#include "kronlap/spectral.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "kronlap_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

RunResult run(const std::string& args) {
  const char* exe = std::getenv("KRONLAP_CLI");
  REQUIRE_MESSAGE(exe != nullptr, "KRONLAP_CLI must point at the binary");
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + exe + "\" " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const std::string kConfig =
    "factor.1.interval = 0 3.141592653589793\n"
    "factor.1.points = 6\n"
    "factor.1.bc = dirichlet\n"
    "factor.2.interval = 0 2\n"
    "factor.2.points = 5\n"
    "factor.2.bc = dirichlet\n";

fs::path config_path() {
  static const fs::path path = [] {
    const fs::path p = work_dir() / "problem.cfg";
    spit(p, kConfig);
    return p;
  }();
  return path;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("spectrum output matches the library and is deterministic") {
  const fs::path csv_a = work_dir() / "spec_a.csv";
  const fs::path csv_b = work_dir() / "spec_b.csv";
  RunResult r = run("spectrum --config " + config_path().string() +
                    " --count 10 --out " + csv_a.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("command=spectrum") != std::string::npos);
  CHECK(r.out.find("seed=0") != std::string::npos);
  REQUIRE(run("spectrum --config " + config_path().string() +
              " --count 10 --out " + csv_b.string())
              .exit_code == 0);
  CHECK(slurp(csv_a) == slurp(csv_b));  // identical bytes on identical input

  const auto rows = parse_csv(slurp(csv_a));
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == std::vector<std::string>{"rank", "value", "i1", "i2"});

  // library oracle for the same problem
  const kronlap::ProblemConfig config = kronlap::parse_config(kConfig);
  const auto es =
      kronlap::ProductEigensystem::build(kronlap::make_grid(config), 0.0);
  const auto entries = es.enumerate_spectrum(10);
  for (int i = 0; i < 10; ++i) {
    CHECK(rows[i + 1][0] == std::to_string(i + 1));
    CHECK(std::stod(rows[i + 1][1]) ==
          doctest::Approx(entries[i].value).epsilon(1e-14));
    // indices in the file are 1-based
    CHECK(std::stoull(rows[i + 1][2]) == entries[i].indices[0] + 1);
    CHECK(std::stoull(rows[i + 1][3]) == entries[i].indices[1] + 1);
  }
  CHECK(rows[1][2] == "1");
  CHECK(rows[1][3] == "1");
}

TEST_CASE("heat at t=0 writes identical input and output files") {
  const fs::path out = work_dir() / "heat.csv";
  RunResult r = run("heat --config " + config_path().string() +
                    " --t 0 --seed 3 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string a = slurp(out);
  const std::string b = slurp(out.string() + ".in");
  REQUIRE(!a.empty());
  CHECK(a == b);

  // and at t > 0 they differ
  RunResult r2 = run("heat --config " + config_path().string() +
                     " --t 0.5 --seed 3 --out " + out.string());
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(out) != slurp(out.string() + ".in"));
}

TEST_CASE("solve with the manufactured right-hand side is exact") {
  const fs::path out = work_dir() / "solve.csv";
  RunResult r = run("solve --config " + config_path().string() + " --out " +
                    out.string());
  REQUIRE(r.exit_code == 0);
  const auto pos = r.out.find("solve_rel_err=");
  REQUIRE(pos != std::string::npos);
  const double err = std::stod(r.out.substr(pos + 14));
  CHECK(err <= 1e-11);
}

TEST_CASE("solve propagates singularity as exit 3") {
  const fs::path cfg = work_dir() / "neumann.cfg";
  spit(cfg,
       "factor.1.interval = 0 1\nfactor.1.points = 3\n"
       "factor.1.bc = neumann\n");
  const fs::path rhs = work_dir() / "ones.csv";
  spit(rhs, "index,re,im\n0,1,0\n1,1,0\n2,1,0\n");
  RunResult r = run("solve --config " + cfg.string() + " --rhs file:" +
                    rhs.string() + " --out " + (work_dir() / "u.csv").string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("singular") != std::string::npos);
}

TEST_CASE("converge reports second order") {
  RunResult r = run("converge --config " + config_path().string() +
                    " --levels 3 --out " + (work_dir() / "conv.csv").string());
  REQUIRE(r.exit_code == 0);
  const auto h2pos = r.out.find("h2_order=");
  const auto svpos = r.out.find("solve_order=");
  REQUIRE(h2pos != std::string::npos);
  REQUIRE(svpos != std::string::npos);
  CHECK(std::abs(std::stod(r.out.substr(h2pos + 9)) - 2.0) <= 0.3);
  CHECK(std::abs(std::stod(r.out.substr(svpos + 12)) - 2.0) <= 0.3);

  const auto rows = parse_csv(slurp(work_dir() / "conv.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[1][1] == "6x5");
  CHECK(rows[3][1] == "24x20");
}

TEST_CASE("verify without a config runs the full sweep and exits 0") {
  const fs::path out = work_dir() / "sweep.csv";
  RunResult r = run("verify --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("config=builtin-sweep") != std::string::npos);
  CHECK(r.out.find("status=pass") != std::string::npos);
  const auto rows = parse_csv(slurp(out));
  // 8x8 combos at two size pairs plus two 3-factor samples, 5 checks each
  CHECK(rows.size() > 8 * 8 * 2 * 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "1");
}

TEST_CASE("verify on a config exits 0 and lists passing checks") {
  const fs::path out = work_dir() / "verify.csv";
  RunResult r = run("verify --config " + config_path().string() + " --out " +
                    out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("status=pass") != std::string::npos);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() >= 5);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].back() == "1");
}

TEST_CASE("usage and config failures exit 1") {
  CHECK(run("spectrum").exit_code == 1);                      // missing config
  CHECK(run("nonsense").exit_code == 1);                      // bad subcommand
  CHECK(run("spectrum --config /nonexistent.cfg").exit_code == 1);

  const fs::path bad = work_dir() / "bad.cfg";
  spit(bad, "factor.1.interval = 0 1\nfactor.1.points = 4\n"
            "factor.1.bc = quasiperiodic:9\n");
  RunResult r = run("spectrum --config " + bad.string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);

  // count beyond the grid is a usage error
  CHECK(run("spectrum --config " + config_path().string() + " --count 99")
            .exit_code == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").exit_code == 0);
}
