#include "kronlap/kron.hpp"

namespace kronlap {

namespace {

void check_dense_cap(const TensorGrid& grid) {
  if (grid.total > grid.caps.max_dense)
    fail(ErrorCode::SizeCap,
         "dense assembly capped at " + std::to_string(grid.caps.max_dense) +
             " points, grid has " + std::to_string(grid.total));
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TensorField KroneckerLaplacian::apply(const TensorField& f) const {
  if (!grid || !f.grid || !same_grid(*grid, *f.grid))
    fail(ErrorCode::Argument, "apply: field grid does not match operator grid");

  TensorField out(f.grid);
  if (shift != 0.0)
    for (std::size_t i = 0; i < f.data.size(); ++i)
      out.data[i] = shift * f.data[i];

  const std::size_t total = grid->total;
  for (int j = 0; j < grid->rank(); ++j) {
    const FactorOperator& fo = grid->factors[j];
    const std::size_t n = grid->shape[j];
    const std::size_t inner = grid->strides[j];
    const std::size_t outer = total / (n * inner);
    for (std::size_t o = 0; o < outer; ++o) {
      const std::size_t base = o * n * inner;
      for (std::size_t t = 0; t < inner; ++t)
        fo.accumulate_L_line(f.data.data() + base + t,
                             static_cast<std::ptrdiff_t>(inner),
                             out.data.data() + base + t,
                             static_cast<std::ptrdiff_t>(inner));
    }
  }
  return out;
}

Eigen::MatrixXcd KroneckerLaplacian::assemble_dense() const {
  check_dense_cap(*grid);
  const Eigen::Index n = static_cast<Eigen::Index>(grid->total);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < grid->rank(); ++j) {
    Eigen::Index pre = 1, post = 1;
    for (int l = 0; l < j; ++l) pre *= grid->shape[l];
    for (int l = j + 1; l < grid->rank(); ++l) post *= grid->shape[l];
    s += kron(kron(Eigen::MatrixXcd::Identity(pre, pre),
                   grid->factors[j].dense_L()),
              Eigen::MatrixXcd::Identity(post, post));
  }
  s += shift * Eigen::MatrixXcd::Identity(n, n);
  return s;
}

Eigen::MatrixXcd assemble_direct_product_laplacian(const TensorGrid& grid) {
  check_dense_cap(grid);
  const Eigen::Index n = static_cast<Eigen::Index>(grid.total);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);

  // Sweep every product-grid face: a factor face at a fixed multi-index of
  // the remaining axes. Accumulate conj(c_i) c_j into the global entries.
  for (int axis = 0; axis < grid.rank(); ++axis) {
    const FactorOperator& fo = grid.factors[axis];
    const std::size_t nj = grid.shape[axis];
    const std::size_t post = grid.strides[axis];
    const std::size_t pre = grid.total / (nj * post);
    for (std::size_t p = 0; p < pre; ++p) {
      for (std::size_t q = 0; q < post; ++q) {
        const auto global = [&](int i) {
          return static_cast<Eigen::Index>((p * nj + i) * post + q);
        };
        for (const Face& f : fo.faces) {
          if (f.left >= 0) m(global(f.left), global(f.left)) += std::norm(f.cl);
          if (f.right >= 0)
            m(global(f.right), global(f.right)) += std::norm(f.cr);
          if (f.left >= 0 && f.right >= 0) {
            m(global(f.left), global(f.right)) += std::conj(f.cl) * f.cr;
            m(global(f.right), global(f.left)) += std::conj(f.cr) * f.cl;
          }
        }
      }
    }
  }
  return m;
}

}  // namespace kronlap
