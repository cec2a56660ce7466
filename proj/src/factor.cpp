#include "kronlap/factor.hpp"

#include <cmath>
#include <sstream>

namespace kronlap {

namespace {

bool needs_two_points(BoundaryCondition::Kind k) {
  return k == BoundaryCondition::Kind::Periodic ||
         k == BoundaryCondition::Kind::Quasiperiodic;
}

double end_offset(EndKind e) {
  return e == EndKind::Dirichlet ? 1.0 : 0.5;
}

}  // namespace

void FactorSpec::validate() const {
  if (!(a < b)) {
    std::ostringstream os;
    os << "factor interval requires a < b, got [" << a << ", " << b << "]";
    fail(ErrorCode::Argument, os.str());
  }
  if (!std::isfinite(a) || !std::isfinite(b))
    fail(ErrorCode::Argument, "factor interval endpoints must be finite");
  if (n < 1) fail(ErrorCode::Argument, "factor needs at least one point");
  if (n < 2 && needs_two_points(bc.kind))
    fail(ErrorCode::Argument,
         "periodic/quasiperiodic factors need at least two points");
  if (n > kMaxFactorPoints)
    fail(ErrorCode::SizeCap, "factor exceeds the " +
                                 std::to_string(kMaxFactorPoints) +
                                 "-point cap");
  if (bc.kind == BoundaryCondition::Kind::Quasiperiodic) {
    if (!std::isfinite(bc.theta))
      fail(ErrorCode::Argument, "quasiperiodic phase must be finite");
    if (!(bc.theta > -M_PI && bc.theta <= M_PI))
      fail(ErrorCode::Argument, "quasiperiodic phase must lie in (-pi, pi]");
  }
}

FactorOperator build_factor(const FactorSpec& spec) {
  spec.validate();

  FactorOperator op;
  op.spec = spec;
  const int n = spec.n;
  const double len = spec.b - spec.a;
  const auto kind = spec.bc.kind;

  if (kind == BoundaryCondition::Kind::Periodic ||
      kind == BoundaryCondition::Kind::Quasiperiodic) {
    op.h = len / n;
    const double invh = 1.0 / op.h;
    op.nodes.resize(n);
    for (int i = 0; i < n; ++i) op.nodes[i] = spec.a + i * op.h;
    for (int i = 0; i + 1 < n; ++i)
      op.faces.push_back({i, i + 1, Complex(-invh), Complex(invh)});
    const double theta =
        kind == BoundaryCondition::Kind::Quasiperiodic ? spec.bc.theta : 0.0;
    const Complex phase(std::cos(theta), std::sin(theta));
    op.faces.push_back({n - 1, 0, Complex(-invh), phase * invh});
  } else {
    EndKind le = EndKind::Dirichlet, re = EndKind::Dirichlet;
    switch (kind) {
      case BoundaryCondition::Kind::Dirichlet:
        break;
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
    op.h = len / (n - 1 + end_offset(le) + end_offset(re));
    const double invh = 1.0 / op.h;
    op.nodes.resize(n);
    const double x0 = spec.a + end_offset(le) * op.h;
    for (int i = 0; i < n; ++i) op.nodes[i] = x0 + i * op.h;
    if (le == EndKind::Dirichlet)
      op.faces.push_back({-1, 0, Complex(0.0), Complex(invh)});
    for (int i = 0; i + 1 < n; ++i)
      op.faces.push_back({i, i + 1, Complex(-invh), Complex(invh)});
    if (re == EndKind::Dirichlet)
      op.faces.push_back({n - 1, -1, Complex(-invh), Complex(0.0)});
  }

  // L = D^H D accumulated face by face.
  op.ldiag.assign(n, 0.0);
  op.lsub.assign(n > 1 ? n - 1 : 0, Complex(0.0));
  op.lcorner = Complex(0.0);
  auto add_pair = [&op, n](int i, Complex ci, int j, Complex cj) {
    // contribution conj(ci)*cj to L[i,j]; store the lower triangle
    if (i == j) {
      op.ldiag[i] += std::norm(ci);
    } else if (i > j) {
      const Complex v = std::conj(ci) * cj;
      if (i - j == 1)
        op.lsub[j] += v;
      else
        op.lcorner += v;  // wrap entry L[n-1,0]
    }
  };
  for (const Face& f : op.faces) {
    if (f.left >= 0) add_pair(f.left, f.cl, f.left, f.cl);
    if (f.right >= 0) add_pair(f.right, f.cr, f.right, f.cr);
    if (f.left >= 0 && f.right >= 0) {
      add_pair(f.left, f.cl, f.right, f.cr);
      add_pair(f.right, f.cr, f.left, f.cl);
    }
  }
  return op;
}

void FactorOperator::apply_L_line(const Complex* x, std::ptrdiff_t xs,
                                  Complex* y, std::ptrdiff_t ys) const {
  const int n = size();
  if (n == 1) {
    y[0] = ldiag[0] * x[0];
    return;
  }
  for (int i = 0; i < n; ++i) {
    Complex acc = ldiag[i] * x[i * xs];
    if (i > 0) acc += lsub[i - 1] * x[(i - 1) * xs];
    if (i + 1 < n) acc += std::conj(lsub[i]) * x[(i + 1) * xs];
    y[i * ys] = acc;
  }
  if (lcorner != Complex(0.0)) {
    y[0] += std::conj(lcorner) * x[(n - 1) * xs];
    y[(n - 1) * ys] += lcorner * x[0];
  }
}

void FactorOperator::accumulate_L_line(const Complex* x, std::ptrdiff_t xs,
                                       Complex* y, std::ptrdiff_t ys) const {
  const int n = size();
  if (n == 1) {
    y[0] += ldiag[0] * x[0];
    return;
  }
  for (int i = 0; i < n; ++i) {
    Complex acc = ldiag[i] * x[i * xs];
    if (i > 0) acc += lsub[i - 1] * x[(i - 1) * xs];
    if (i + 1 < n) acc += std::conj(lsub[i]) * x[(i + 1) * xs];
    y[i * ys] += acc;
  }
  if (lcorner != Complex(0.0)) {
    y[0] += std::conj(lcorner) * x[(n - 1) * xs];
    y[(n - 1) * ys] += lcorner * x[0];
  }
}

void FactorOperator::apply_D_line(const Complex* x, std::ptrdiff_t xs,
                                  Complex* y, std::ptrdiff_t ys) const {
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const Face& f = faces[k];
    Complex v(0.0);
    if (f.left >= 0) v += f.cl * x[f.left * xs];
    if (f.right >= 0) v += f.cr * x[f.right * xs];
    y[static_cast<std::ptrdiff_t>(k) * ys] = v;
  }
}

Eigen::MatrixXcd FactorOperator::dense_L() const {
  const int n = size();
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) L(i, i) = ldiag[i];
  for (int i = 0; i + 1 < n; ++i) {
    L(i + 1, i) = lsub[i];
    L(i, i + 1) = std::conj(lsub[i]);
  }
  if (lcorner != Complex(0.0)) {
    L(n - 1, 0) += lcorner;
    L(0, n - 1) += std::conj(lcorner);
  }
  return L;
}

Eigen::MatrixXcd FactorOperator::dense_D() const {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(face_count(), size());
  for (int k = 0; k < face_count(); ++k) {
    const Face& f = faces[k];
    if (f.left >= 0) D(k, f.left) += f.cl;
    if (f.right >= 0) D(k, f.right) += f.cr;
  }
  return D;
}

std::vector<Complex> apply_D(const FactorOperator& op,
                             const std::vector<Complex>& v) {
  if (static_cast<int>(v.size()) != op.size())
    fail(ErrorCode::Argument, "apply_D: vector length does not match factor");
  std::vector<Complex> out(op.face_count());
  if (!out.empty()) op.apply_D_line(v.data(), 1, out.data(), 1);
  return out;
}

FactorEigensystem factor_eigensystem(const FactorOperator& op) {
  const int n = op.size();
  const Eigen::MatrixXcd l = op.dense_L();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(l);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::Eigen, "factor eigensolver did not converge (n=" +
                               std::to_string(n) + ")");

  FactorEigensystem es;
  es.h = op.h;
  es.eigenvalues.assign(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + n);
  Eigen::MatrixXcd q = solver.eigenvectors();

  const double lscale =
      std::max({std::abs(es.eigenvalues.front()),
                std::abs(es.eigenvalues.back()), 1.0 / (op.h * op.h)});
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXcd r = l * q.col(k) - es.eigenvalues[k] * q.col(k);
    if (r.norm() > 1e-12 * lscale)
      fail(ErrorCode::Eigen,
           "factor eigensolver residual too large for column " +
               std::to_string(k));
  }

  // Phase convention: first nonzero component real and positive.
  for (int k = 0; k < n; ++k) {
    const double colmax = q.col(k).cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      const Complex v = q(i, k);
      if (std::abs(v) > 1e-8 * colmax) {
        q.col(k) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  // Rescale to orthonormality under the h-weighted inner product.
  es.vectors = q / std::sqrt(op.h);
  return es;
}

}  // namespace kronlap
