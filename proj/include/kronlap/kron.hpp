#ifndef KRONLAP_KRON_HPP
#define KRONLAP_KRON_HPP

#include <Eigen/Dense>

#include "kronlap/grid.hpp"

namespace kronlap {

// The Kronecker sum S = sum_j I x ... x L_j x ... x I plus a shift sigma.
struct KroneckerLaplacian {
  GridPtr grid;
  double shift = 0.0;

  // Matrix-free (S + sigma) f via per-axis stencil sweeps, O(N * rank).
  TensorField apply(const TensorField& f) const;

  // Explicit Kronecker-product assembly, N <= grid->caps.max_dense.
  Eigen::MatrixXcd assemble_dense() const;
};

// The product-domain Laplacian assembled directly as sum_k D_k^H D_k over
// all product-grid difference operators, without using the Kronecker
// structure. Each product-grid face inherits its factor's endpoint
// condition.
Eigen::MatrixXcd assemble_direct_product_laplacian(const TensorGrid& grid);

}  // namespace kronlap

#endif
