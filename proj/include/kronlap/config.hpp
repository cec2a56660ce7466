#ifndef KRONLAP_CONFIG_HPP
#define KRONLAP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kronlap/grid.hpp"

namespace kronlap {

// Line-oriented problem description:
//   factor.<i>.interval = <a> <b>
//   factor.<i>.points   = <n>
//   factor.<i>.bc       = dirichlet | neumann | periodic
//                       | quasiperiodic:<theta> | mixed:<l>,<r>   (l,r: d or n)
//   shift = <sigma>
// Factor indices start at 1 and must be contiguous. '#' starts a comment.
// Keys are case-sensitive; unknown or duplicate keys are errors.
struct ProblemConfig {
  std::vector<FactorSpec> factors;
  double shift = 0.0;
  SizeCaps caps;
};

ProblemConfig parse_config(const std::string& text);
ProblemConfig parse_config_file(const std::string& path);

GridPtr make_grid(const ProblemConfig& config);

// FNV-1a of the raw config bytes; stable across runs.
std::uint64_t config_digest(const std::string& text);

}  // namespace kronlap

#endif
