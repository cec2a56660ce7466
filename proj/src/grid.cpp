#include "kronlap/grid.hpp"

#include <cmath>

namespace kronlap {

GridPtr make_grid(const std::vector<FactorSpec>& specs, SizeCaps caps) {
  if (specs.empty())
    fail(ErrorCode::Argument, "a tensor grid needs at least one factor");
  auto grid = std::make_shared<TensorGrid>();
  grid->caps = caps;
  grid->factors.reserve(specs.size());
  grid->total = 1;
  for (const FactorSpec& s : specs) {
    grid->factors.push_back(build_factor(s));
    const std::size_t n = static_cast<std::size_t>(s.n);
    if (grid->total > caps.max_total / n)
      fail(ErrorCode::SizeCap,
           "product grid exceeds the cap of " +
               std::to_string(caps.max_total) + " points");
    grid->total *= n;
    grid->shape.push_back(n);
    grid->weight *= grid->factors.back().h;
  }
  grid->strides.assign(grid->shape.size(), 1);
  for (int j = grid->rank() - 2; j >= 0; --j)
    grid->strides[j] = grid->strides[j + 1] * grid->shape[j + 1];
  return grid;
}

bool same_grid(const TensorGrid& a, const TensorGrid& b) {
  if (&a == &b) return true;
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t j = 0; j < a.factors.size(); ++j)
    if (!(a.factors[j].spec == b.factors[j].spec)) return false;
  return true;
}

void require_same_grid(const TensorField& f, const TensorField& g) {
  if (!f.grid || !g.grid)
    fail(ErrorCode::Argument, "field has no grid attached");
  if (!same_grid(*f.grid, *g.grid))
    fail(ErrorCode::Argument, "fields live on different grids");
}

TensorField elementary_tensor(const GridPtr& grid,
                              const std::vector<std::vector<Complex>>& parts) {
  if (static_cast<int>(parts.size()) != grid->rank())
    fail(ErrorCode::Argument, "elementary tensor needs one part per factor");
  for (int j = 0; j < grid->rank(); ++j)
    if (parts[j].size() != grid->shape[j])
      fail(ErrorCode::Argument,
           "part " + std::to_string(j) + " length does not match factor size");

  TensorField out(grid);
  std::vector<std::size_t> idx(grid->rank(), 0);
  for (std::size_t flat = 0; flat < grid->total; ++flat) {
    Complex v(1.0);
    for (int j = 0; j < grid->rank(); ++j) v *= parts[j][idx[j]];
    out.data[flat] = v;
    for (int j = grid->rank() - 1; j >= 0; --j) {
      if (++idx[j] < grid->shape[j]) break;
      idx[j] = 0;
    }
  }
  return out;
}

Complex inner(const TensorField& f, const TensorField& g) {
  require_same_grid(f, g);
  Complex acc(0.0);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    acc += f.data[i] * std::conj(g.data[i]);
  return f.grid->weight * acc;
}

double norm(const TensorField& f) {
  double acc = 0.0;
  for (const Complex& v : f.data) acc += std::norm(v);
  return std::sqrt(f.grid->weight * acc);
}

}  // namespace kronlap
