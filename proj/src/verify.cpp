#include "kronlap/verify.hpp"

#include <algorithm>
#include <cmath>

#include "kronlap/kron.hpp"
#include "kronlap/rng.hpp"
#include "kronlap/sobolev.hpp"

namespace kronlap {

VerificationSummary run_verification(const GridPtr& grid, double tol,
                                     std::uint64_t seed, int trials) {
  if (trials < 1) fail(ErrorCode::Argument, "verification needs trials >= 1");
  VerificationSummary summary;
  Rng seeds(seed);

  // Entry-wise Kronecker vs direct stencil assembly, pinned tolerance.
  if (grid->total <= grid->caps.max_dense) {
    double scale = 0.0;
    for (const FactorOperator& fo : grid->factors)
      scale = std::max(scale, 4.0 / (fo.h * fo.h));
    KroneckerLaplacian s{grid, 0.0};
    const Eigen::MatrixXcd diff =
        s.assemble_dense() - assemble_direct_product_laplacian(*grid);
    VerificationCheck check{"kronecker_vs_direct", 1, 0.0, 1e-13 * scale,
                            false};
    check.max_err = diff.cwiseAbs().maxCoeff();
    check.passed = check.max_err <= check.tolerance;
    summary.checks.push_back(check);
  }

  VerificationCheck form{"form_identity", static_cast<std::size_t>(trials),
                         0.0, tol, false};
  VerificationCheck h2{"h2_identity", static_cast<std::size_t>(trials), 0.0,
                       10.0 * tol, false};
  VerificationCheck fubini{"fubini_expansion",
                           static_cast<std::size_t>(trials), 0.0, tol, false};
  VerificationCheck adj{"self_adjointness", static_cast<std::size_t>(trials),
                        0.0, tol, false};

  KroneckerLaplacian s{grid, 0.0};
  for (int trial = 0; trial < trials; ++trial) {
    const TensorField f = gaussian_field(grid, seeds.next());
    const TensorField g = gaussian_field(grid, seeds.next());

    const FormReport fr = verify_form_identity(f, g, tol);
    form.max_err =
        std::max(form.max_err, fr.abs_err / (1.0 + std::abs(fr.lhs)));

    const FormReport hr = h2_identity(f, g, 10.0 * tol);
    h2.max_err = std::max(h2.max_err, hr.abs_err / (1.0 + std::abs(hr.lhs)));

    std::vector<std::vector<Complex>> pf, pg;
    for (int j = 0; j < grid->rank(); ++j) {
      pf.push_back(gaussian_vector(grid->shape[j], seeds.next()));
      pg.push_back(gaussian_vector(grid->shape[j], seeds.next()));
    }
    const Complex route_factor = elementary_form_expansion(*grid, pf, pg);
    const Complex route_field =
        form_value(elementary_tensor(grid, pf), elementary_tensor(grid, pg));
    fubini.max_err =
        std::max(fubini.max_err, std::abs(route_factor - route_field) /
                                     (1.0 + std::abs(route_field)));

    const Complex left = inner(s.apply(f), g);
    const Complex right = inner(f, s.apply(g));
    adj.max_err = std::max(
        adj.max_err, std::abs(left - right) / (1.0 + std::abs(left)));
  }

  form.passed = form.max_err <= form.tolerance;
  h2.passed = h2.max_err <= h2.tolerance;
  fubini.passed = fubini.max_err <= fubini.tolerance;
  adj.passed = adj.max_err <= adj.tolerance;
  summary.checks.push_back(form);
  summary.checks.push_back(h2);
  summary.checks.push_back(fubini);
  summary.checks.push_back(adj);

  summary.passed = true;
  for (const VerificationCheck& c : summary.checks)
    summary.passed = summary.passed && c.passed;
  return summary;
}

}  // namespace kronlap
