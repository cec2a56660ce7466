// kronlap command line: spectrum / solve / heat / verify / converge on a
// problem config, CSV output. Exit codes: 0 ok, 1 usage or config error,
// 2 verification failure, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kronlap.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitNumerical = 3;

int exit_for(kronlap_status status) {
  switch (status) {
    case KRONLAP_OK:
      return 0;
    case KRONLAP_ERR_ARGUMENT:
    case KRONLAP_ERR_CONFIG:
    case KRONLAP_ERR_CAP:
    case KRONLAP_ERR_IO:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

[[noreturn]] void die(kronlap_status status) {
  std::cerr << "kronlap: " << kronlap_status_string(status) << ": "
            << kronlap_last_error() << "\n";
  std::exit(exit_for(status));
}

void check(kronlap_status status) {
  if (status != KRONLAP_OK) die(status);
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "kronlap: cannot open '" << path << "'\n";
    std::exit(kExitUsage);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

using ProblemPtr =
    std::unique_ptr<kronlap_problem, decltype(&kronlap_problem_free)>;

ProblemPtr open_problem(const std::string& text) {
  kronlap_problem* raw = nullptr;
  check(kronlap_problem_from_string(text.c_str(), &raw));
  return ProblemPtr(raw, &kronlap_problem_free);
}

// Sink for CSV bytes: a file when --out is given, stdout otherwise (the run
// report then moves to stderr to keep the stream clean).
struct Output {
  std::ofstream file;
  bool to_stdout = false;
  std::string path = "-";

  explicit Output(const std::string& out_path) {
    if (out_path.empty()) {
      to_stdout = true;
    } else {
      path = out_path;
      file.open(out_path, std::ios::binary);
      if (!file) {
        std::cerr << "kronlap: cannot write '" << out_path << "'\n";
        std::exit(kExitUsage);
      }
    }
  }
  std::ostream& stream() { return to_stdout ? std::cout : file; }
  std::ostream& report() { return to_stdout ? std::cerr : std::cout; }
};

void write_field_csv(std::ostream& os, const std::vector<double>& field) {
  os << "index,re,im\n";
  for (std::size_t i = 0; i * 2 < field.size(); ++i)
    os << i << ',' << g17(field[2 * i]) << ',' << g17(field[2 * i + 1])
       << '\n';
}

std::vector<double> read_field_csv(const std::string& path, std::size_t total) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "kronlap: cannot open field file '" << path << "'\n";
    std::exit(kExitUsage);
  }
  std::vector<double> out(2 * total, 0.0);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("index", 0) == 0) continue;
    std::size_t index = 0;
    double re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%zu,%lf,%lf", &index, &re, &im) != 3 ||
        index >= total) {
      std::cerr << "kronlap: bad field row '" << line << "' in " << path
                << "\n";
      std::exit(kExitUsage);
    }
    out[2 * index] = re;
    out[2 * index + 1] = im;
    ++rows;
  }
  if (rows != total) {
    std::cerr << "kronlap: field file " << path << " has " << rows
              << " rows, grid needs " << total << "\n";
    std::exit(kExitUsage);
  }
  return out;
}

struct Report {
  std::string command;
  std::string config = "-";
  std::string digest = "-";
  std::uint64_t seed = 0;
  kronlap_problem* problem = nullptr;
  std::string output = "-";
  std::string status = "ok";
  std::chrono::steady_clock::time_point started =
      std::chrono::steady_clock::now();

  void print(std::ostream& os) const {
    os << "command=" << command << '\n';
    os << "config=" << config << '\n';
    os << "digest=" << digest << '\n';
    os << "seed=" << seed << '\n';
    if (problem) {
      os << "factors=" << kronlap_problem_factor_count(problem) << '\n';
      os << "total=" << kronlap_problem_total_points(problem) << '\n';
      os << "shift=" << g17(kronlap_problem_shift(problem)) << '\n';
    }
    os << "output=" << output << '\n';
    os << "status=" << status << '\n';
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", ms);
    os << "elapsed_ms=" << buf << '\n';
  }
};

double weighted_norm(kronlap_problem* p, const std::vector<double>& f) {
  double re = 0, im = 0;
  check(kronlap_inner(p, f.data(), f.data(), &re, &im));
  return std::sqrt(std::max(re, 0.0));
}

int cmd_spectrum(kronlap_problem* p, std::int64_t count, Output& out,
                 Report& report) {
  const int rank = kronlap_problem_factor_count(p);
  std::vector<double> values(static_cast<std::size_t>(count));
  std::vector<std::int64_t> indices(static_cast<std::size_t>(count) * rank);
  check(kronlap_spectrum(p, count, values.data(), indices.data()));

  std::ostream& os = out.stream();
  os << "rank,value";
  for (int j = 1; j <= rank; ++j) os << ",i" << j;
  os << '\n';
  for (std::int64_t r = 0; r < count; ++r) {
    os << (r + 1) << ',' << g17(values[r]);
    for (int j = 0; j < rank; ++j) os << ',' << indices[r * rank + j] + 1;
    os << '\n';
  }
  report.print(out.report());
  return 0;
}

int cmd_solve(kronlap_problem* p, const std::string& rhs_mode, Output& out,
              Report& report) {
  const std::size_t total =
      static_cast<std::size_t>(kronlap_problem_total_points(p));
  const int rank = kronlap_problem_factor_count(p);
  std::vector<double> solution(2 * total);
  double error = -1.0;

  if (rhs_mode == "manufactured") {
    // Exact solution: the eigen-tensor of the lowest nontrivial factor
    // modes; its image under the operator is the right-hand side.
    std::vector<std::int64_t> index(rank);
    for (int j = 0; j < rank; ++j)
      check(kronlap_lowest_nontrivial_index(p, j, &index[j]));
    std::vector<double> exact(2 * total), rhs(2 * total);
    check(kronlap_eigenfunction(p, index.data(), exact.data()));
    check(kronlap_apply(p, exact.data(), rhs.data()));
    check(kronlap_solve(p, rhs.data(), 0, solution.data()));
    std::vector<double> diff(2 * total);
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = solution[i] - exact[i];
    error = weighted_norm(p, diff) / weighted_norm(p, exact);
  } else if (rhs_mode.rfind("file:", 0) == 0) {
    const std::vector<double> rhs = read_field_csv(rhs_mode.substr(5), total);
    check(kronlap_solve(p, rhs.data(), 0, solution.data()));
  } else {
    std::cerr << "kronlap: unknown rhs mode '" << rhs_mode
              << "' (use manufactured or file:<path>)\n";
    return kExitUsage;
  }

  write_field_csv(out.stream(), solution);
  if (error >= 0) out.report() << "solve_rel_err=" << g17(error) << '\n';
  report.print(out.report());
  return 0;
}

int cmd_heat(kronlap_problem* p, double t, std::uint64_t seed, Output& out,
             Report& report) {
  const std::size_t total =
      static_cast<std::size_t>(kronlap_problem_total_points(p));
  std::vector<double> input(2 * total), output(2 * total);
  check(kronlap_random_field(p, seed, input.data()));
  check(kronlap_heat(p, t, input.data(), output.data()));

  write_field_csv(out.stream(), output);
  if (!out.to_stdout) {
    std::ofstream fin(out.path + ".in", std::ios::binary);
    if (!fin) {
      std::cerr << "kronlap: cannot write '" << out.path << ".in'\n";
      return kExitUsage;
    }
    write_field_csv(fin, input);
  }
  report.print(out.report());
  return 0;
}

void write_verify_rows(std::ostream& os, const std::string& combo,
                       const std::string& sizes,
                       const kronlap_verify_report& rep) {
  for (int i = 0; i < rep.check_count; ++i) {
    const kronlap_verify_check& c = rep.checks[i];
    os << combo << ',' << sizes << ',' << c.name << ',' << c.trials << ','
       << g17(c.max_err) << ',' << g17(c.tolerance) << ',' << c.passed
       << '\n';
  }
}

// The built-in sweep: every ordered pair from the boundary-condition menu on
// two factors, plus two 3-factor samples.
const std::vector<std::string> kBcMenu = {
    "dirichlet",
    "neumann",
    "periodic",
    "quasiperiodic:0",
    "quasiperiodic:0.7",
    "quasiperiodic:3.141592653589793",
    "mixed:d,n",
    "mixed:n,d",
};

std::string sweep_config(const std::vector<std::string>& bcs,
                         const std::vector<int>& sizes) {
  std::ostringstream os;
  for (std::size_t j = 0; j < bcs.size(); ++j) {
    os << "factor." << (j + 1) << ".interval = 0 " << (j + 1) << "\n";
    os << "factor." << (j + 1) << ".points = " << sizes[j] << "\n";
    os << "factor." << (j + 1) << ".bc = " << bcs[j] << "\n";
  }
  return os.str();
}

int cmd_verify(const std::string& config_text, bool sweep, double tol,
               std::uint64_t seed, Output& out, Report& report) {
  std::ostream& os = out.stream();
  os << "combo,sizes,check,trials,max_err,tolerance,passed\n";
  bool all_passed = true;

  const auto run_one = [&](const std::string& text, const std::string& combo,
                           const std::string& sizes) {
    ProblemPtr p = open_problem(text);
    kronlap_verify_report rep;
    check(kronlap_verify(p.get(), tol, seed, 20, &rep));
    write_verify_rows(os, combo, sizes, rep);
    all_passed = all_passed && rep.passed != 0;
  };

  if (sweep) {
    for (const std::string& bc1 : kBcMenu)
      for (const std::string& bc2 : kBcMenu) {
        run_one(sweep_config({bc1, bc2}, {3, 5}), bc1 + "|" + bc2, "3x5");
        run_one(sweep_config({bc1, bc2}, {5, 8}), bc1 + "|" + bc2, "5x8");
      }
    run_one(sweep_config({"dirichlet", "neumann", "periodic"}, {3, 4, 5}),
            "dirichlet|neumann|periodic", "3x4x5");
    run_one(sweep_config({"quasiperiodic:0.7", "mixed:d,n", "dirichlet"},
                         {2, 3, 5}),
            "quasiperiodic:0.7|mixed:d,n|dirichlet", "2x3x5");
  } else {
    ProblemPtr p = open_problem(config_text);
    kronlap_verify_report rep;
    check(kronlap_verify(p.get(), tol, seed, 20, &rep));
    std::ostringstream sizes;
    const int rank = kronlap_problem_factor_count(p.get());
    for (int j = 0; j < rank; ++j)
      sizes << (j ? "x" : "") << kronlap_problem_factor_points(p.get(), j);
    write_verify_rows(os, "config", sizes.str(), rep);
    all_passed = rep.passed != 0;
  }

  report.status = all_passed ? "pass" : "fail";
  report.print(out.report());
  return all_passed ? 0 : kExitVerifyFailed;
}

int cmd_converge(kronlap_problem* base, int levels, Output& out,
                 Report& report) {
  std::ostream& os = out.stream();
  os << "level,points,hmax,h2_value,h2_reference,h2_abs_err,h2_order,"
        "solve_rel_err,solve_order\n";

  const double sigma = kronlap_problem_shift(base);
  double prev_h = 0, prev_h2_err = 0, prev_solve_err = 0;
  double h2_order = 0, solve_order = 0;

  for (int lvl = 0; lvl < levels; ++lvl) {
    kronlap_problem* raw = nullptr;
    check(kronlap_problem_refine(base, 1 << lvl, &raw));
    ProblemPtr p(raw, &kronlap_problem_free);

    const std::size_t total =
        static_cast<std::size_t>(kronlap_problem_total_points(p.get()));
    const int rank = kronlap_problem_factor_count(p.get());

    std::vector<double> u(2 * total);
    double lambda = 0, norm2 = 0, h2_ref = 0;
    check(kronlap_reference_field(p.get(), u.data(), &lambda, &norm2,
                                  &h2_ref));

    double h2_value = 0;
    check(kronlap_h2_seminorm(p.get(), u.data(), &h2_value));
    const double h2_err = std::abs(h2_value - h2_ref);

    // Continuum right-hand side (lambda + sigma) u; the discrete solve then
    // carries the full discretization error.
    std::vector<double> rhs(2 * total), solution(2 * total);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      rhs[i] = (lambda + sigma) * u[i];
    check(kronlap_solve(p.get(), rhs.data(), 0, solution.data()));
    std::vector<double> diff(2 * total);
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = solution[i] - u[i];
    const double solve_err =
        weighted_norm(p.get(), diff) / std::sqrt(norm2);

    double hmax = 0;
    std::ostringstream points;
    for (int j = 0; j < rank; ++j) {
      points << (j ? "x" : "")
             << kronlap_problem_factor_points(p.get(), j);
      hmax = std::max(hmax, kronlap_problem_mesh_width(p.get(), j));
    }

    os << lvl << ',' << points.str() << ',' << g17(hmax) << ','
       << g17(h2_value) << ',' << g17(h2_ref) << ',' << g17(h2_err) << ',';
    if (lvl > 0) {
      h2_order = std::log(prev_h2_err / h2_err) / std::log(prev_h / hmax);
      os << g17(h2_order);
    }
    os << ',' << g17(solve_err) << ',';
    if (lvl > 0) {
      solve_order =
          std::log(prev_solve_err / solve_err) / std::log(prev_h / hmax);
      os << g17(solve_order);
    }
    os << '\n';

    prev_h = hmax;
    prev_h2_err = h2_err;
    prev_solve_err = solve_err;
  }

  if (levels > 1) {
    out.report() << "h2_order=" << g17(h2_order) << '\n';
    out.report() << "solve_order=" << g17(solve_order) << '\n';
  }
  report.print(out.report());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separable Laplacians on product grids"};
  app.require_subcommand(1);

  std::string config_path, out_path, rhs_mode = "manufactured";
  std::int64_t count = 10;
  double t = 0.0, tol = 1e-12;
  int levels = 3;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "problem config file");
    if (config_required) opt->required();
    sub->add_option("--out", out_path, "CSV output path (default stdout)");
    sub->add_option("--seed", seed, "random seed (default 0)");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "k smallest eigenvalues");
  add_common(spectrum, true);
  spectrum->add_option("--count", count, "number of eigenvalues (default 10)");

  CLI::App* solve = app.add_subcommand("solve", "solve (S + sigma) u = f");
  add_common(solve, true);
  solve->add_option("--rhs", rhs_mode,
                    "rhs mode: manufactured | file:<path> (default "
                    "manufactured)");

  CLI::App* heat = app.add_subcommand("heat", "apply the heat semigroup");
  add_common(heat, true);
  heat->add_option("--t", t, "diffusion time (default 0)");

  CLI::App* verify = app.add_subcommand(
      "verify", "check the operator identities (no --config: built-in sweep)");
  add_common(verify, false);
  verify->add_option("--tol", tol, "base tolerance (default 1e-12)");

  CLI::App* converge =
      app.add_subcommand("converge", "manufactured-solution refinement study");
  add_common(converge, true);
  converge->add_option("--levels", levels, "refinement levels (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  Report report;
  report.seed = seed;
  Output out(out_path);
  report.output = out.path;

  std::string config_text;
  ProblemPtr problem(nullptr, &kronlap_problem_free);
  if (!config_path.empty()) {
    config_text = read_file(config_path);
    report.config = config_path;
    report.digest = hex64(fnv1a(config_text));
    problem = open_problem(config_text);
    report.problem = problem.get();
  }

  if (spectrum->parsed()) {
    report.command = "spectrum";
    return cmd_spectrum(problem.get(), count, out, report);
  }
  if (solve->parsed()) {
    report.command = "solve";
    return cmd_solve(problem.get(), rhs_mode, out, report);
  }
  if (heat->parsed()) {
    report.command = "heat";
    return cmd_heat(problem.get(), t, seed, out, report);
  }
  if (verify->parsed()) {
    report.command = "verify";
    if (config_path.empty()) report.config = "builtin-sweep";
    return cmd_verify(config_text, config_path.empty(), tol, seed, out,
                      report);
  }
  if (converge->parsed()) {
    report.command = "converge";
    if (levels < 1) {
      std::cerr << "kronlap: --levels must be at least 1\n";
      return kExitUsage;
    }
    return cmd_converge(problem.get(), levels, out, report);
  }
  return kExitUsage;
}
