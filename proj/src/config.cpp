#include "kronlap/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace kronlap {

namespace {

[[noreturn]] void bad_line(int line, const std::string& what) {
  fail(ErrorCode::Config, "line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, int line, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    bad_line(line, "expected a number for " + what + ", got '" + s + "'");
  if (!std::isfinite(v)) bad_line(line, what + " must be finite");
  return v;
}

long parse_integer(const std::string& s, int line, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    bad_line(line, "expected an integer for " + what + ", got '" + s + "'");
  return v;
}

EndKind parse_end(const std::string& s, int line) {
  if (s == "d") return EndKind::Dirichlet;
  if (s == "n") return EndKind::Neumann;
  bad_line(line, "mixed endpoint must be 'd' or 'n', got '" + s + "'");
}

BoundaryCondition parse_bc(const std::string& s, int line) {
  if (s == "dirichlet") return BoundaryCondition::dirichlet();
  if (s == "neumann") return BoundaryCondition::neumann();
  if (s == "periodic") return BoundaryCondition::periodic();
  if (s.rfind("quasiperiodic:", 0) == 0) {
    const double theta =
        parse_number(trim(s.substr(14)), line, "quasiperiodic phase");
    if (!(theta > -M_PI && theta <= M_PI))
      bad_line(line, "quasiperiodic phase must lie in (-pi, pi]");
    return BoundaryCondition::quasiperiodic(theta);
  }
  if (s.rfind("mixed:", 0) == 0) {
    const std::string rest = s.substr(6);
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      bad_line(line, "mixed condition needs two endpoints, e.g. mixed:d,n");
    return BoundaryCondition::mixed(parse_end(trim(rest.substr(0, comma)), line),
                                    parse_end(trim(rest.substr(comma + 1)), line));
  }
  bad_line(line, "unknown boundary condition '" + s + "'");
}

struct PendingFactor {
  bool have_interval = false, have_points = false, have_bc = false;
  double a = 0, b = 0;
  long n = 0;
  BoundaryCondition bc;
  int first_line = 0;
};

}  // namespace

ProblemConfig parse_config(const std::string& text) {
  ProblemConfig config;
  std::map<long, PendingFactor> pending;
  bool have_shift = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      bad_line(lineno, "expected '<key> = <value>'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) bad_line(lineno, "empty key");
    if (value.empty()) bad_line(lineno, "empty value for key '" + key + "'");

    if (key == "shift") {
      if (have_shift) bad_line(lineno, "duplicate key 'shift'");
      config.shift = parse_number(value, lineno, "shift");
      if (config.shift < 0) bad_line(lineno, "shift must be nonnegative");
      have_shift = true;
      continue;
    }

    if (key.rfind("factor.", 0) != 0) bad_line(lineno, "unknown key '" + key + "'");
    const std::string tail = key.substr(7);
    const auto dot = tail.find('.');
    if (dot == std::string::npos) bad_line(lineno, "unknown key '" + key + "'");
    const long index = parse_integer(tail.substr(0, dot), lineno, "factor index");
    if (index < 1) bad_line(lineno, "factor indices start at 1");
    const std::string field = tail.substr(dot + 1);

    PendingFactor& pf = pending[index];
    if (pf.first_line == 0) pf.first_line = lineno;
    if (field == "interval") {
      if (pf.have_interval) bad_line(lineno, "duplicate key '" + key + "'");
      std::istringstream vs(value);
      std::string sa, sb, extra;
      if (!(vs >> sa >> sb) || (vs >> extra))
        bad_line(lineno, "interval needs exactly two endpoints '<a> <b>'");
      pf.a = parse_number(sa, lineno, "interval endpoint");
      pf.b = parse_number(sb, lineno, "interval endpoint");
      if (!(pf.a < pf.b)) bad_line(lineno, "interval requires a < b");
      pf.have_interval = true;
    } else if (field == "points") {
      if (pf.have_points) bad_line(lineno, "duplicate key '" + key + "'");
      pf.n = parse_integer(value, lineno, "points");
      if (pf.n < 1) bad_line(lineno, "points must be positive");
      if (pf.n > kMaxFactorPoints)
        bad_line(lineno, "points exceeds the cap of " +
                             std::to_string(kMaxFactorPoints));
      pf.have_points = true;
    } else if (field == "bc") {
      if (pf.have_bc) bad_line(lineno, "duplicate key '" + key + "'");
      pf.bc = parse_bc(value, lineno);
      pf.have_bc = true;
    } else {
      bad_line(lineno, "unknown key '" + key + "'");
    }
  }

  if (pending.empty())
    fail(ErrorCode::Config, "config declares no factors");
  long expected = 1;
  for (const auto& [index, pf] : pending) {
    if (index != expected)
      fail(ErrorCode::Config,
           "factor indices must be contiguous from 1; missing factor." +
               std::to_string(expected));
    ++expected;
    if (!pf.have_interval)
      fail(ErrorCode::Config, "factor." + std::to_string(index) +
                                  ".interval is missing");
    if (!pf.have_points)
      fail(ErrorCode::Config,
           "factor." + std::to_string(index) + ".points is missing");
    if (!pf.have_bc)
      fail(ErrorCode::Config,
           "factor." + std::to_string(index) + ".bc is missing");
    FactorSpec spec{pf.a, pf.b, static_cast<int>(pf.n), pf.bc};
    try {
      spec.validate();
    } catch (const Error& e) {
      fail(ErrorCode::Config, "factor." + std::to_string(index) + ": " +
                                  e.what());
    }
    config.factors.push_back(spec);
  }
  return config;
}

ProblemConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

GridPtr make_grid(const ProblemConfig& config) {
  return make_grid(config.factors, config.caps);
}

std::uint64_t config_digest(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace kronlap
