#include "kronlap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace kronlap {

namespace {

std::string index_string(const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < idx.size(); ++j)
    os << (j ? "," : "") << idx[j];
  os << ")";
  return os.str();
}

}  // namespace

ProductEigensystem::ProductEigensystem(GridPtr grid, double shift)
    : grid_(std::move(grid)), shift_(shift) {}

ProductEigensystem ProductEigensystem::build(GridPtr grid, double shift) {
  if (!grid) fail(ErrorCode::Argument, "eigensystem needs a grid");
  ProductEigensystem es(grid, shift);
  es.systems_.reserve(grid->rank());
  es.analysis_.reserve(grid->rank());
  for (const FactorOperator& fo : grid->factors) {
    es.systems_.push_back(factor_eigensystem(fo));
    es.analysis_.push_back(fo.h * es.systems_.back().vectors.adjoint());
  }
  return es;
}

void ProductEigensystem::transform_axis(const Eigen::MatrixXcd& m, int axis,
                                        const std::vector<Complex>& in,
                                        std::vector<Complex>& out) const {
  const std::size_t n = grid_->shape[axis];
  const std::size_t inner = grid_->strides[axis];
  const std::size_t outer = grid_->total / (n * inner);
  using RowMajor =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (std::size_t o = 0; o < outer; ++o) {
    Eigen::Map<const RowMajor> a(in.data() + o * n * inner, n, inner);
    Eigen::Map<RowMajor> b(out.data() + o * n * inner, n, inner);
    b.noalias() = m * a;
  }
}

std::vector<Complex> ProductEigensystem::to_eigenbasis(
    const std::vector<Complex>& x) const {
  std::vector<Complex> cur = x, tmp(x.size());
  for (int j = 0; j < grid_->rank(); ++j) {
    transform_axis(analysis_[j], j, cur, tmp);
    cur.swap(tmp);
  }
  return cur;
}

std::vector<Complex> ProductEigensystem::from_eigenbasis(
    const std::vector<Complex>& c) const {
  std::vector<Complex> cur = c, tmp(c.size());
  for (int j = 0; j < grid_->rank(); ++j) {
    transform_axis(systems_[j].vectors, j, cur, tmp);
    cur.swap(tmp);
  }
  return cur;
}

double ProductEigensystem::min_eigenvalue() const {
  double v = shift_;
  for (const FactorEigensystem& s : systems_) v += s.eigenvalues.front();
  return v;
}

TensorField ProductEigensystem::solve(const TensorField& f,
                                      SolveOptions opts) const {
  if (!f.grid || !same_grid(*grid_, *f.grid))
    fail(ErrorCode::Argument, "solve: field grid does not match");

  std::vector<Complex> c = to_eigenbasis(f.data);
  double cnorm2 = 0.0;
  for (const Complex& v : c) cnorm2 += std::norm(v);
  const double cnorm = std::sqrt(cnorm2);

  double opscale = std::abs(shift_);
  for (const FactorEigensystem& s : systems_)
    opscale += std::max(std::abs(s.eigenvalues.front()),
                        std::abs(s.eigenvalues.back()));
  const double singular_tol = 1e-12 * std::max(opscale, 1e-300);

  std::vector<std::size_t> idx(grid_->rank(), 0);
  for (std::size_t flat = 0; flat < grid_->total; ++flat) {
    double mu = shift_;
    for (int j = 0; j < grid_->rank(); ++j)
      mu += systems_[j].eigenvalues[idx[j]];
    if (std::abs(mu) <= singular_tol) {
      if (!opts.zero_kernel_modes && std::abs(c[flat]) > 1e-12 * cnorm)
        fail(ErrorCode::Singular,
             "singular solve: right-hand side hits the kernel mode at "
             "multi-index " +
                 index_string(idx));
      c[flat] = Complex(0.0);
    } else {
      c[flat] /= mu;
    }
    for (int j = grid_->rank() - 1; j >= 0; --j) {
      if (++idx[j] < grid_->shape[j]) break;
      idx[j] = 0;
    }
  }

  TensorField out(f.grid);
  out.data = from_eigenbasis(c);
  return out;
}

TensorField ProductEigensystem::heat(const TensorField& f, double t) const {
  if (!f.grid || !same_grid(*grid_, *f.grid))
    fail(ErrorCode::Argument, "heat: field grid does not match");
  if (t < 0) fail(ErrorCode::Argument, "heat: time must be nonnegative");
  if (t == 0.0) return f;

  std::vector<Complex> c = to_eigenbasis(f.data);
  std::vector<std::size_t> idx(grid_->rank(), 0);
  for (std::size_t flat = 0; flat < grid_->total; ++flat) {
    double mu = shift_;
    for (int j = 0; j < grid_->rank(); ++j)
      mu += systems_[j].eigenvalues[idx[j]];
    c[flat] *= std::exp(-t * mu);
    for (int j = grid_->rank() - 1; j >= 0; --j) {
      if (++idx[j] < grid_->shape[j]) break;
      idx[j] = 0;
    }
  }

  TensorField out(f.grid);
  out.data = from_eigenbasis(c);
  return out;
}

TensorField ProductEigensystem::heat_factorized(const TensorField& f,
                                                double t) const {
  if (!f.grid || !same_grid(*grid_, *f.grid))
    fail(ErrorCode::Argument, "heat: field grid does not match");
  if (t < 0) fail(ErrorCode::Argument, "heat: time must be nonnegative");
  if (t == 0.0) return f;

  TensorField out(f.grid);
  std::vector<Complex> cur = f.data, tmp(f.data.size());
  for (int j = 0; j < grid_->rank(); ++j) {
    // exp(-t L_j) along axis j: analysis, damp, synthesis.
    Eigen::VectorXcd damp(systems_[j].size());
    for (int i = 0; i < systems_[j].size(); ++i)
      damp(i) = std::exp(-t * systems_[j].eigenvalues[i]);
    const Eigen::MatrixXcd m =
        systems_[j].vectors * damp.asDiagonal() * analysis_[j];
    transform_axis(m, j, cur, tmp);
    cur.swap(tmp);
  }
  const double scale = std::exp(-t * shift_);
  for (Complex& v : cur) v *= scale;
  out.data = std::move(cur);
  return out;
}

std::vector<SpectrumEntry> enumerate_sums(
    const std::vector<std::vector<double>>& values, double shift,
    std::size_t k) {
  const int rank = static_cast<int>(values.size());
  if (rank == 0) fail(ErrorCode::Argument, "enumerate_sums: no factors");
  std::size_t total = 1;
  for (const auto& v : values) {
    if (v.empty()) fail(ErrorCode::Argument, "enumerate_sums: empty factor");
    if (total > std::numeric_limits<std::size_t>::max() / v.size())
      total = std::numeric_limits<std::size_t>::max();
    else
      total *= v.size();
  }
  if (k > total)
    fail(ErrorCode::Argument,
         "enumerate_sums: requested " + std::to_string(k) +
             " values from a lattice with " + std::to_string(total) +
             " points");

  auto value_of = [&](const std::vector<std::size_t>& idx) {
    double v = shift;
    for (int j = 0; j < rank; ++j) v += values[j][idx[j]];
    return v;
  };

  struct Node {
    double value;
    std::vector<std::size_t> idx;
    bool operator>(const Node& o) const {
      if (value != o.value) return value > o.value;
      return idx > o.idx;  // lexicographic tie-break
    }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
  std::set<std::vector<std::size_t>> seen;

  std::vector<std::size_t> origin(rank, 0);
  heap.push({value_of(origin), origin});
  seen.insert(origin);

  std::vector<SpectrumEntry> out;
  out.reserve(k);
  while (out.size() < k && !heap.empty()) {
    Node top = heap.top();
    heap.pop();
    out.push_back({top.value, top.idx});
    for (int j = 0; j < rank; ++j) {
      if (top.idx[j] + 1 >= values[j].size()) continue;
      std::vector<std::size_t> next = top.idx;
      ++next[j];
      if (seen.insert(next).second) heap.push({value_of(next), next});
    }
  }
  return out;
}

std::vector<SpectrumEntry> ProductEigensystem::enumerate_spectrum(
    std::size_t k) const {
  std::vector<std::vector<double>> values;
  values.reserve(systems_.size());
  for (const FactorEigensystem& s : systems_) values.push_back(s.eigenvalues);
  return enumerate_sums(values, shift_, k);
}

TensorField ProductEigensystem::eigenfunction(const SpectrumEntry& entry) const {
  if (static_cast<int>(entry.indices.size()) != grid_->rank())
    fail(ErrorCode::Argument, "eigenfunction: wrong multi-index rank");
  std::vector<std::vector<Complex>> parts(grid_->rank());
  for (int j = 0; j < grid_->rank(); ++j) {
    const std::size_t i = entry.indices[j];
    if (i >= grid_->shape[j])
      fail(ErrorCode::Argument, "eigenfunction: index " + std::to_string(i) +
                                    " out of range for factor " +
                                    std::to_string(j));
    const auto& q = systems_[j].vectors;
    parts[j].resize(grid_->shape[j]);
    for (std::size_t r = 0; r < grid_->shape[j]; ++r)
      parts[j][r] = q(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
  }
  return elementary_tensor(grid_, parts);
}

}  // namespace kronlap
