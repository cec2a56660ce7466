#include "kronlap/sobolev.hpp"

#include <algorithm>
#include <cmath>

#include "kronlap/kron.hpp"
#include "kronlap/reference.hpp"

namespace kronlap {

namespace {

// Applies the face difference operator of factor `fo` along `axis` of an
// array with the given shape; the axis length changes from n to the face
// count. Shape is updated in place.
std::vector<Complex> apply_D_along_axis(const FactorOperator& fo,
                                        const std::vector<Complex>& in,
                                        std::vector<std::size_t>& shape,
                                        int axis) {
  const std::size_t n = shape[axis];
  const std::size_t m = static_cast<std::size_t>(fo.face_count());
  std::size_t inner = 1, outer = 1;
  for (std::size_t j = axis + 1; j < shape.size(); ++j) inner *= shape[j];
  for (int j = 0; j < axis; ++j) outer *= shape[j];

  std::vector<Complex> out(outer * m * inner, Complex(0.0));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t t = 0; t < inner; ++t)
      fo.apply_D_line(in.data() + o * n * inner + t,
                      static_cast<std::ptrdiff_t>(inner),
                      out.data() + o * m * inner + t,
                      static_cast<std::ptrdiff_t>(inner));
  shape[axis] = m;
  return out;
}

std::vector<Complex> apply_L_along_axis(const FactorOperator& fo,
                                        const std::vector<Complex>& in,
                                        const std::vector<std::size_t>& shape,
                                        int axis) {
  const std::size_t n = shape[axis];
  std::size_t inner = 1, outer = 1;
  for (std::size_t j = axis + 1; j < shape.size(); ++j) inner *= shape[j];
  for (int j = 0; j < axis; ++j) outer *= shape[j];

  std::vector<Complex> out(in.size());
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t t = 0; t < inner; ++t)
      fo.apply_L_line(in.data() + o * n * inner + t,
                      static_cast<std::ptrdiff_t>(inner),
                      out.data() + o * n * inner + t,
                      static_cast<std::ptrdiff_t>(inner));
  return out;
}

Complex weighted_dot(const std::vector<Complex>& a,
                     const std::vector<Complex>& b, double weight) {
  Complex acc(0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a[i] * std::conj(b[i]);
  return weight * acc;
}

}  // namespace

FormReport make_form_report(Complex lhs, Complex rhs, double tol) {
  FormReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  r.tolerance = tol;
  r.passed = r.abs_err <= tol * (1.0 + std::abs(lhs));
  return r;
}

Complex form_value(const TensorField& f, const TensorField& g) {
  require_same_grid(f, g);
  const TensorGrid& grid = *f.grid;
  Complex acc(0.0);
  std::vector<Complex> df, dg;
  for (int axis = 0; axis < grid.rank(); ++axis) {
    const FactorOperator& fo = grid.factors[axis];
    const std::size_t n = grid.shape[axis];
    const std::size_t m = static_cast<std::size_t>(fo.face_count());
    const std::size_t inner = grid.strides[axis];
    const std::size_t outer = grid.total / (n * inner);
    df.assign(m, Complex(0.0));
    dg.assign(m, Complex(0.0));
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t t = 0; t < inner; ++t) {
        const std::size_t base = o * n * inner + t;
        fo.apply_D_line(f.data.data() + base,
                        static_cast<std::ptrdiff_t>(inner), df.data(), 1);
        fo.apply_D_line(g.data.data() + base,
                        static_cast<std::ptrdiff_t>(inner), dg.data(), 1);
        for (std::size_t k = 0; k < m; ++k) acc += df[k] * std::conj(dg[k]);
      }
    }
  }
  return grid.weight * acc;
}

FormReport verify_form_identity(const TensorField& f, const TensorField& g,
                                double tol) {
  const Complex lhs = form_value(f, g);
  KroneckerLaplacian s{f.grid, 0.0};
  const Complex rhs = inner(s.apply(f), g);
  return make_form_report(lhs, rhs, tol);
}

Complex elementary_form_expansion(
    const TensorGrid& grid, const std::vector<std::vector<Complex>>& parts_f,
    const std::vector<std::vector<Complex>>& parts_g) {
  const int k = grid.rank();
  if (static_cast<int>(parts_f.size()) != k ||
      static_cast<int>(parts_g.size()) != k)
    fail(ErrorCode::Argument, "expansion needs one part per factor");

  std::vector<Complex> mass(k), stiff(k);
  for (int j = 0; j < k; ++j) {
    const FactorOperator& fo = grid.factors[j];
    if (parts_f[j].size() != grid.shape[j] ||
        parts_g[j].size() != grid.shape[j])
      fail(ErrorCode::Argument,
           "part " + std::to_string(j) + " length does not match factor size");
    mass[j] = weighted_dot(parts_f[j], parts_g[j], fo.h);
    stiff[j] =
        weighted_dot(apply_D(fo, parts_f[j]), apply_D(fo, parts_g[j]), fo.h);
  }

  Complex acc(0.0);
  for (int j = 0; j < k; ++j) {
    Complex term = stiff[j];
    for (int l = 0; l < k; ++l)
      if (l != j) term *= mass[l];
    acc += term;
  }
  return acc;
}

namespace {

Complex h2_lhs(const TensorField& f, const TensorField& g) {
  const TensorGrid& grid = *f.grid;
  const int k = grid.rank();
  Complex acc(0.0);

  // Pure terms: 1/2 <L_j f, L_j g> per axis.
  for (int j = 0; j < k; ++j) {
    const auto lf = apply_L_along_axis(grid.factors[j], f.data, grid.shape, j);
    const auto lg = apply_L_along_axis(grid.factors[j], g.data, grid.shape, j);
    acc += 0.5 * weighted_dot(lf, lg, grid.weight);
  }
  // Cross terms: <D_i D_j f, D_i D_j g> for i < j, face weight prod h.
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::vector<std::size_t> shape_f = grid.shape;
      auto df = apply_D_along_axis(grid.factors[j], f.data, shape_f, j);
      df = apply_D_along_axis(grid.factors[i], df, shape_f, i);
      std::vector<std::size_t> shape_g = grid.shape;
      auto dg = apply_D_along_axis(grid.factors[j], g.data, shape_g, j);
      dg = apply_D_along_axis(grid.factors[i], dg, shape_g, i);
      acc += weighted_dot(df, dg, grid.weight);
    }
  }
  return acc;
}

}  // namespace

FormReport h2_identity(const TensorField& f, const TensorField& g,
                       double tol) {
  require_same_grid(f, g);
  const Complex lhs = h2_lhs(f, g);
  KroneckerLaplacian s{f.grid, 0.0};
  const Complex rhs = 0.5 * inner(s.apply(f), s.apply(g));
  return make_form_report(lhs, rhs, tol);
}

double h2_seminorm(const TensorField& f) {
  if (!f.grid) fail(ErrorCode::Argument, "field has no grid attached");
  return h2_lhs(f, f).real();
}

double h1_norm_elementary(const TensorGrid& grid,
                          const std::vector<std::vector<Complex>>& parts) {
  const int k = grid.rank();
  if (static_cast<int>(parts.size()) != k)
    fail(ErrorCode::Argument, "h1 norm needs one part per factor");

  std::vector<double> mass(k), stiff(k);
  for (int j = 0; j < k; ++j) {
    const FactorOperator& fo = grid.factors[j];
    if (parts[j].size() != grid.shape[j])
      fail(ErrorCode::Argument,
           "part " + std::to_string(j) + " length does not match factor size");
    mass[j] = weighted_dot(parts[j], parts[j], fo.h).real();
    const auto d = apply_D(fo, parts[j]);
    stiff[j] = weighted_dot(d, d, fo.h).real();
  }

  double acc = 1.0;
  for (int j = 0; j < k; ++j) acc *= mass[j];
  for (int j = 0; j < k; ++j) {
    double term = stiff[j];
    for (int l = 0; l < k; ++l)
      if (l != j) term *= mass[l];
    acc += term;
  }
  return acc;
}

std::vector<ConvergenceRow> h2_convergence_probe(
    const std::vector<FactorSpec>& base, int levels, SizeCaps caps) {
  if (levels < 1)
    fail(ErrorCode::Argument, "convergence probe needs at least one level");
  std::vector<ConvergenceRow> rows;
  rows.reserve(levels);
  for (int lvl = 0; lvl < levels; ++lvl) {
    std::vector<FactorSpec> specs = base;
    for (FactorSpec& s : specs) s.n <<= lvl;
    GridPtr grid = make_grid(specs, caps);
    const ProductReference ref = product_reference(grid);

    ConvergenceRow row;
    row.level = lvl;
    double hmax = 0.0;
    for (const FactorOperator& fo : grid->factors) {
      row.points.push_back(fo.size());
      hmax = std::max(hmax, fo.h);
    }
    row.hmax = hmax;
    row.h2_value = h2_seminorm(ref.field);
    row.h2_reference = ref.h2_value;
    row.h2_abs_err = std::abs(row.h2_value - row.h2_reference);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kronlap
