#ifndef KRONLAP_SPECTRAL_HPP
#define KRONLAP_SPECTRAL_HPP

#include <vector>

#include "kronlap/grid.hpp"

namespace kronlap {

// One eigenvalue of the Kronecker sum: the sum of the indexed factor
// eigenvalues plus the shift. Indices are 0-based per factor.
struct SpectrumEntry {
  double value = 0.0;
  std::vector<std::size_t> indices;
};

struct SolveOptions {
  // Zero out kernel modes instead of failing (pseudo-inverse behaviour).
  bool zero_kernel_modes = false;
};

// The k smallest values of sum_j values[j][i_j] + shift over the index
// lattice, ascending, ties broken by lexicographic multi-index. Best-first
// search with a min-heap; each values[j] must be sorted ascending.
std::vector<SpectrumEntry> enumerate_sums(
    const std::vector<std::vector<double>>& values, double shift,
    std::size_t k);

// Spectral decomposition of the shifted Kronecker sum, built from the factor
// eigensystems. All solvers transform axis by axis into the factor
// eigenbases, act on the coefficients, and transform back; cost O(N sum n_j).
class ProductEigensystem {
 public:
  static ProductEigensystem build(GridPtr grid, double shift);

  // u with (S + sigma) u = f to 1e-10 relative residual. Fails with a
  // Singular error naming the offending multi-index when f has weight on a
  // kernel mode (unless zero_kernel_modes is set).
  TensorField solve(const TensorField& f, SolveOptions opts = {}) const;

  // e^{-t (S + sigma)} f through the joint eigenbasis. t = 0 returns f
  // unchanged.
  TensorField heat(const TensorField& f, double t) const;
  // Same semigroup as the commuting product of per-factor semigroups, one
  // axis at a time.
  TensorField heat_factorized(const TensorField& f, double t) const;

  // The k smallest eigenvalues in ascending order, ties broken by
  // lexicographic multi-index. Best-first lattice search; never builds all
  // N sums.
  std::vector<SpectrumEntry> enumerate_spectrum(std::size_t k) const;

  // Elementary tensor of the indexed factor eigenvectors; unit weighted norm.
  TensorField eigenfunction(const SpectrumEntry& entry) const;

  double min_eigenvalue() const;  // smallest eigenvalue sum plus shift
  double shift() const { return shift_; }
  const GridPtr& grid() const { return grid_; }
  const FactorEigensystem& factor_system(int j) const { return systems_[j]; }

 private:
  ProductEigensystem(GridPtr grid, double shift);

  // hq[j] = h_j Q_j^H (analysis), q[j] = Q_j (synthesis)
  std::vector<Complex> to_eigenbasis(const std::vector<Complex>& x) const;
  std::vector<Complex> from_eigenbasis(const std::vector<Complex>& c) const;
  void transform_axis(const Eigen::MatrixXcd& m, int axis,
                      const std::vector<Complex>& in,
                      std::vector<Complex>& out) const;

  GridPtr grid_;
  double shift_ = 0.0;
  std::vector<FactorEigensystem> systems_;
  std::vector<Eigen::MatrixXcd> analysis_;  // h_j Q_j^H
};

}  // namespace kronlap

#endif
