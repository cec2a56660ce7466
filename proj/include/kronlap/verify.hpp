#ifndef KRONLAP_VERIFY_HPP
#define KRONLAP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kronlap/grid.hpp"

namespace kronlap {

struct VerificationCheck {
  std::string name;
  std::size_t trials = 0;
  double max_err = 0.0;    // worst scaled error over the trials
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationSummary {
  std::vector<VerificationCheck> checks;
  bool passed = true;
};

// Runs the operator identities on one grid with random complex fields:
// Kronecker-sum vs directly assembled product Laplacian (entry-wise, when
// the grid fits the dense cap), the first-order form identity, the
// second-order identity at 10x the tolerance, the factor-level expansion on
// elementary tensors, and self-adjointness of the apply path.
VerificationSummary run_verification(const GridPtr& grid, double tol,
                                     std::uint64_t seed, int trials);

}  // namespace kronlap

#endif
