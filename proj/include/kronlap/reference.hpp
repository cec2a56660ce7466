#ifndef KRONLAP_REFERENCE_HPP
#define KRONLAP_REFERENCE_HPP

#include <vector>

#include "kronlap/grid.hpp"

namespace kronlap {

// Lowest nontrivial eigenfunction of the continuum factor Laplacian, sampled
// on the factor grid, with its exact eigenvalue and squared L2 norm. On
// (a,b) with length len:
//   Dirichlet:            sin(pi (x-a)/len)
//   Neumann:              cos(pi (x-a)/len)
//   Periodic:             sin(2 pi (x-a)/len)         (needs n >= 3)
//   Quasiperiodic(theta): e^{i theta (x-a)/len}, theta != 0
//   Mixed(d,n) / (n,d):   sin / cos of pi (x-a)/(2 len)
struct FactorReference {
  std::vector<Complex> samples;
  double eigenvalue = 0.0;
  double norm2 = 0.0;
};

FactorReference factor_reference(const FactorOperator& op);

// Product of the factor references: a continuum eigenfunction of the product
// Laplacian with eigenvalue sum lambda, analytic squared norm, and analytic
// H2 seminorm value 1/2 lambda^2 norm2.
struct ProductReference {
  TensorField field;
  double eigenvalue = 0.0;
  double norm2 = 0.0;
  double h2_value = 0.0;
};

ProductReference product_reference(const GridPtr& grid);

// Per-factor index of the smallest eigenvalue clear of the kernel.
std::size_t lowest_nontrivial_index(const std::vector<double>& eigenvalues,
                                    double scale);

}  // namespace kronlap

#endif
