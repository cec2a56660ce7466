#ifndef KRONLAP_TEST_HELPERS_HPP
#define KRONLAP_TEST_HELPERS_HPP

#include <vector>

#include "kronlap/grid.hpp"
#include "kronlap/rng.hpp"

namespace kronlap::test {

// The boundary-condition menu the sweeps draw from.
inline std::vector<BoundaryCondition> bc_menu() {
  return {
      BoundaryCondition::dirichlet(),
      BoundaryCondition::neumann(),
      BoundaryCondition::periodic(),
      BoundaryCondition::quasiperiodic(0.0),
      BoundaryCondition::quasiperiodic(0.7),
      BoundaryCondition::quasiperiodic(M_PI),
      BoundaryCondition::mixed(EndKind::Dirichlet, EndKind::Neumann),
      BoundaryCondition::mixed(EndKind::Neumann, EndKind::Dirichlet),
  };
}

inline FactorSpec spec_of(BoundaryCondition bc, int n, double a = 0.0,
                          double b = 1.0) {
  return FactorSpec{a, b, n, bc};
}

inline TensorField field_from_eigen(const GridPtr& grid,
                                    const Eigen::VectorXcd& v) {
  TensorField f(grid);
  for (std::size_t i = 0; i < grid->total; ++i)
    f.data[i] = v(static_cast<Eigen::Index>(i));
  return f;
}

inline Eigen::VectorXcd eigen_from_field(const TensorField& f) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(f.data.size()));
  for (std::size_t i = 0; i < f.data.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = f.data[i];
  return v;
}

inline double max_abs(const TensorField& f) {
  double m = 0.0;
  for (const Complex& v : f.data) m = std::max(m, std::abs(v));
  return m;
}

// 4/h^2 over the factors: the natural magnitude of the assembled operator.
inline double operator_scale(const TensorGrid& grid) {
  double s = 0.0;
  for (const FactorOperator& fo : grid.factors)
    s = std::max(s, 4.0 / (fo.h * fo.h));
  return s;
}

}  // namespace kronlap::test

#endif
