#ifndef KRONLAP_FACTOR_HPP
#define KRONLAP_FACTOR_HPP

#include <vector>

#include <Eigen/Dense>

#include "kronlap/common.hpp"

namespace kronlap {

enum class EndKind { Dirichlet, Neumann };

// Boundary condition of one 1D factor. Quasiperiodic(0) builds the same
// operator as Periodic, and Mixed(d,d)/Mixed(n,n) the same as
// Dirichlet/Neumann: they share the construction path.
struct BoundaryCondition {
  enum class Kind { Dirichlet, Neumann, Periodic, Quasiperiodic, Mixed };

  Kind kind = Kind::Dirichlet;
  double theta = 0.0;  // Quasiperiodic phase, in (-pi, pi]
  EndKind left = EndKind::Dirichlet;
  EndKind right = EndKind::Dirichlet;

  static BoundaryCondition dirichlet() { return {}; }
  static BoundaryCondition neumann() {
    return {Kind::Neumann, 0.0, EndKind::Neumann, EndKind::Neumann};
  }
  static BoundaryCondition periodic() {
    return {Kind::Periodic, 0.0, EndKind::Dirichlet, EndKind::Dirichlet};
  }
  static BoundaryCondition quasiperiodic(double theta) {
    return {Kind::Quasiperiodic, theta, EndKind::Dirichlet, EndKind::Dirichlet};
  }
  static BoundaryCondition mixed(EndKind l, EndKind r) {
    return {Kind::Mixed, 0.0, l, r};
  }

  bool operator==(const BoundaryCondition&) const = default;
};

struct FactorSpec {
  double a = 0.0;
  double b = 1.0;
  int n = 1;  // degrees of freedom
  BoundaryCondition bc;

  void validate() const;  // throws Error(Argument) on violation
  bool operator==(const FactorSpec&) const = default;
};

// One row of the difference operator D: a face value
//   (Df)_k = cl * v[left] + cr * v[right],
// where a node index of -1 denotes a ghost with value 0 (the entry is absent).
struct Face {
  int left = -1;
  int right = -1;
  Complex cl{0.0};
  Complex cr{0.0};
};

// Discrete factor: grid nodes, difference operator D (as faces) and the
// Laplacian L = D^H D, assembled entry-wise from the faces so the identity
// holds exactly. L is tridiagonal plus a wrap-around corner:
//   ldiag[i]  = L[i,i]      (real)
//   lsub[i]   = L[i+1,i]
//   lcorner   = L[n-1,0]    (periodic/quasiperiodic wrap, n >= 3)
//
// Node placement per boundary condition on (a,b) with n points:
//   Dirichlet:  h=(b-a)/(n+1), x_i = a+(i+1)h, faces at both ends (ghost 0)
//   Neumann:    h=(b-a)/n,     x_i = a+(i+1/2)h, interior faces only
//   Periodic:   h=(b-a)/n,     x_i = a+ih, circulant wrap face
//   Quasiperiodic(theta): as Periodic, wrap face reads (e^{i theta} f_0 - f_{n-1})/h
//   Mixed:      Dirichlet end one full cell, Neumann end half a cell beyond
//               the nearest node; h = (b-a)/(n-1+off_l+off_r), off = 1 or 1/2
struct FactorOperator {
  FactorSpec spec;
  double h = 0.0;
  std::vector<double> nodes;
  std::vector<Face> faces;

  std::vector<double> ldiag;
  std::vector<Complex> lsub;
  Complex lcorner{0.0};

  int size() const { return static_cast<int>(nodes.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  double weight() const { return h; }

  // y[i*ys] = (L x)[i] along a strided line of length size().
  void apply_L_line(const Complex* x, std::ptrdiff_t xs, Complex* y,
                    std::ptrdiff_t ys) const;
  // y[i*ys] += (L x)[i]
  void accumulate_L_line(const Complex* x, std::ptrdiff_t xs, Complex* y,
                         std::ptrdiff_t ys) const;
  // y[k*ys] = (D x)[k], k = 0..face_count()-1
  void apply_D_line(const Complex* x, std::ptrdiff_t xs, Complex* y,
                    std::ptrdiff_t ys) const;

  Eigen::MatrixXcd dense_L() const;
  Eigen::MatrixXcd dense_D() const;
};

struct FactorEigensystem {
  double h = 0.0;
  std::vector<double> eigenvalues;  // ascending
  // Columns are eigenvectors, orthonormal under <u,v> = h * sum u_i conj(v_i);
  // the first nonzero component of each column is real and positive.
  Eigen::MatrixXcd vectors;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

FactorOperator build_factor(const FactorSpec& spec);
FactorEigensystem factor_eigensystem(const FactorOperator& op);
std::vector<Complex> apply_D(const FactorOperator& op,
                             const std::vector<Complex>& v);

}  // namespace kronlap

#endif
