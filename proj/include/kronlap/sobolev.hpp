#ifndef KRONLAP_SOBOLEV_HPP
#define KRONLAP_SOBOLEV_HPP

#include <vector>

#include "kronlap/grid.hpp"

namespace kronlap {

struct FormReport {
  Complex lhs{0.0};
  Complex rhs{0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;  // abs_err <= tolerance * (1 + |lhs|)
};

FormReport make_form_report(Complex lhs, Complex rhs, double tol);

// The Dirichlet form sum_k <D_k f, D_k g> with face weight prod h_j; D_k is
// the factor difference operator along axis k.
Complex form_value(const TensorField& f, const TensorField& g);

// Checks form_value(f,g) == <S f, g> with zero shift.
FormReport verify_form_identity(const TensorField& f, const TensorField& g,
                                double tol);

// The same form evaluated on elementary tensors from factor-level data only:
//   sum_j h_j <D f_j, D g_j> prod_{l != j} h_l <f_l, g_l>.
Complex elementary_form_expansion(
    const TensorGrid& grid, const std::vector<std::vector<Complex>>& parts_f,
    const std::vector<std::vector<Complex>>& parts_g);

// Checks sum_{|alpha|=2} (1/alpha!) <D^alpha f, D^alpha g> == 1/2 <S f, S g>.
// Pure second derivatives are realized as L_j along one axis (weight 1/2),
// cross terms as D_i D_j on distinct axes (weight 1).
FormReport h2_identity(const TensorField& f, const TensorField& g, double tol);

// The left-hand side of the identity above with g = f (real, nonnegative).
double h2_seminorm(const TensorField& f);

// Squared H1 norm of an elementary tensor from factor-level quantities:
//   prod ||f_j||^2 + sum_j ||D f_j||^2 prod_{l != j} ||f_l||^2.
double h1_norm_elementary(const TensorGrid& grid,
                          const std::vector<std::vector<Complex>>& parts);

struct ConvergenceRow {
  int level = 0;
  std::vector<int> points;
  double hmax = 0.0;
  double h2_value = 0.0;
  double h2_reference = 0.0;
  double h2_abs_err = 0.0;
};

// Samples the per-factor reference eigenfunctions on refined grids (points
// doubled per level) and tabulates the discrete H2 seminorm against the
// analytic value; the error decreases at second order in h.
std::vector<ConvergenceRow> h2_convergence_probe(
    const std::vector<FactorSpec>& base, int levels, SizeCaps caps = {});

}  // namespace kronlap

#endif
