#ifndef KRONLAP_GRID_HPP
#define KRONLAP_GRID_HPP

#include <memory>
#include <vector>

#include "kronlap/factor.hpp"

namespace kronlap {

// Product of factor grids. Layout is row-major with the last factor
// fastest-varying; the quadrature weight of a node is the product of the
// factor mesh widths.
struct TensorGrid {
  std::vector<FactorOperator> factors;
  std::vector<std::size_t> shape;
  std::vector<std::size_t> strides;
  std::size_t total = 0;
  double weight = 1.0;
  SizeCaps caps;

  int rank() const { return static_cast<int>(factors.size()); }
};

using GridPtr = std::shared_ptr<const TensorGrid>;

GridPtr make_grid(const std::vector<FactorSpec>& specs, SizeCaps caps = {});
bool same_grid(const TensorGrid& a, const TensorGrid& b);

struct TensorField {
  GridPtr grid;
  std::vector<Complex> data;

  TensorField() = default;
  explicit TensorField(GridPtr g)
      : grid(std::move(g)), data(grid->total, Complex(0.0)) {}
};

void require_same_grid(const TensorField& f, const TensorField& g);

// Outer product of per-factor vectors, flattened row-major.
TensorField elementary_tensor(const GridPtr& grid,
                              const std::vector<std::vector<Complex>>& parts);

// Weighted L2 inner product, linear in f: (prod h_j) * sum f_i conj(g_i).
Complex inner(const TensorField& f, const TensorField& g);
double norm(const TensorField& f);

}  // namespace kronlap

#endif
