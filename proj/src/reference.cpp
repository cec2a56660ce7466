#include "kronlap/reference.hpp"

#include <cmath>

namespace kronlap {

FactorReference factor_reference(const FactorOperator& op) {
  const FactorSpec& spec = op.spec;
  const double len = spec.b - spec.a;
  FactorReference ref;
  ref.samples.resize(op.size());

  auto fill = [&](auto profile) {
    for (int i = 0; i < op.size(); ++i)
      ref.samples[i] = profile(op.nodes[i] - spec.a);
  };

  EndKind le = EndKind::Dirichlet, re = EndKind::Dirichlet;
  switch (spec.bc.kind) {
    case BoundaryCondition::Kind::Neumann:
      le = re = EndKind::Neumann;
      break;
    case BoundaryCondition::Kind::Mixed:
      le = spec.bc.left;
      re = spec.bc.right;
      break;
    default:
      break;
  }

  switch (spec.bc.kind) {
    case BoundaryCondition::Kind::Quasiperiodic:
      if (spec.bc.theta != 0.0) {
        const double k = spec.bc.theta / len;
        fill([k](double s) { return Complex(std::cos(k * s), std::sin(k * s)); });
        ref.eigenvalue = k * k;
        ref.norm2 = len;
        break;
      }
      [[fallthrough]];
    case BoundaryCondition::Kind::Periodic: {
      if (op.size() < 3)
        fail(ErrorCode::Argument,
             "periodic reference profile needs at least three points");
      const double k = 2.0 * M_PI / len;
      fill([k](double s) { return Complex(std::sin(k * s)); });
      ref.eigenvalue = k * k;
      ref.norm2 = 0.5 * len;
      break;
    }
    default: {
      // Endpoint-type conditions: a quarter or half sine/cosine arch.
      const double k = (le == re) ? M_PI / len : 0.5 * M_PI / len;
      if (le == EndKind::Dirichlet)
        fill([k](double s) { return Complex(std::sin(k * s)); });
      else
        fill([k](double s) { return Complex(std::cos(k * s)); });
      ref.eigenvalue = k * k;
      ref.norm2 = 0.5 * len;
      break;
    }
  }
  return ref;
}

ProductReference product_reference(const GridPtr& grid) {
  std::vector<std::vector<Complex>> parts;
  parts.reserve(grid->rank());
  ProductReference out;
  out.eigenvalue = 0.0;
  out.norm2 = 1.0;
  for (const FactorOperator& fo : grid->factors) {
    FactorReference ref = factor_reference(fo);
    out.eigenvalue += ref.eigenvalue;
    out.norm2 *= ref.norm2;
    parts.push_back(std::move(ref.samples));
  }
  out.field = elementary_tensor(grid, parts);
  out.h2_value = 0.5 * out.eigenvalue * out.eigenvalue * out.norm2;
  return out;
}

std::size_t lowest_nontrivial_index(const std::vector<double>& eigenvalues,
                                    double scale) {
  const double tol = 1e-9 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > tol) return i;
  fail(ErrorCode::Argument, "factor spectrum has no nontrivial eigenvalue");
}

}  // namespace kronlap
