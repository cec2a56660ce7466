#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "kronlap/factor.hpp"

using namespace kronlap;
using test::bc_menu;
using test::spec_of;

namespace {

double max_entry(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("dirichlet factor on (0,pi) with three points") {
  const FactorOperator op =
      build_factor({0.0, M_PI, 3, BoundaryCondition::dirichlet()});

  CHECK(op.h == doctest::Approx(M_PI / 4).epsilon(1e-15));
  REQUIRE(op.size() == 3);
  CHECK(op.nodes[0] == doctest::Approx(M_PI / 4));
  CHECK(op.nodes[1] == doctest::Approx(M_PI / 2));
  CHECK(op.nodes[2] == doctest::Approx(3 * M_PI / 4));
  CHECK(op.face_count() == 4);

  const double invh2 = 1.0 / (op.h * op.h);
  Eigen::MatrixXcd expected(3, 3);
  expected << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  expected *= invh2;
  CHECK(max_entry(op.dense_L() - expected) <= 1e-14 * invh2);

  const FactorEigensystem es = factor_eigensystem(op);

  // Independent oracle: dense eigensolver on the tridiagonal built here.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(expected);
  REQUIRE(oracle.info() == Eigen::Success);
  for (int k = 0; k < 3; ++k)
    CHECK(es.eigenvalues[k] ==
          doctest::Approx(oracle.eigenvalues()(k)).epsilon(1e-12));

  // Frozen values; the analytic form is (4/h^2) sin^2(k pi / 8).
  CHECK(es.eigenvalues[0] == doctest::Approx(0.94964120355178).epsilon(1e-10));
  CHECK(es.eigenvalues[1] == doctest::Approx(3.2422778765548).epsilon(1e-10));
  CHECK(es.eigenvalues[2] == doctest::Approx(5.5349145495578).epsilon(1e-10));
  for (int k = 1; k <= 3; ++k) {
    const double analytic =
        4.0 * invh2 * std::pow(std::sin(k * M_PI / 8.0), 2);
    CHECK(es.eigenvalues[k - 1] == doctest::Approx(analytic).epsilon(1e-10));
  }

  // Ground mode is the discrete sine vector.
  Eigen::VectorXcd sine(3);
  sine << std::sin(M_PI / 4), std::sin(M_PI / 2), std::sin(3 * M_PI / 4);
  sine /= std::sqrt(op.h) * sine.norm();
  CHECK((es.vectors.col(0) - sine).norm() <= 1e-12 * sine.norm());
}

TEST_CASE("neumann kernel and cell-centered nodes") {
  const FactorOperator op =
      build_factor({-1.0, 2.0, 6, BoundaryCondition::neumann()});
  CHECK(op.h == doctest::Approx(0.5));
  CHECK(op.nodes[0] == doctest::Approx(-0.75));
  CHECK(op.face_count() == 5);

  std::vector<Complex> ones(6, Complex(1.0)), out(6);
  op.apply_L_line(ones.data(), 1, out.data(), 1);
  for (const Complex& v : out) CHECK(std::abs(v) == 0.0);  // exact kernel

  const FactorEigensystem es = factor_eigensystem(op);
  CHECK(std::abs(es.eigenvalues[0]) <= 1e-12 / (op.h * op.h));
  const Eigen::VectorXcd ground = es.vectors.col(0);
  CHECK((ground.array() - ground(0)).abs().maxCoeff() <=
        1e-12 * std::abs(ground(0)));
}

TEST_CASE("quasiperiodic(0) builds the periodic operator") {
  const FactorOperator qp =
      build_factor({0.0, 1.0, 4, BoundaryCondition::quasiperiodic(0.0)});
  const FactorOperator per =
      build_factor({0.0, 1.0, 4, BoundaryCondition::periodic()});
  CHECK(qp.h == per.h);
  CHECK(qp.nodes == per.nodes);
  CHECK(qp.ldiag == per.ldiag);
  CHECK(qp.lsub == per.lsub);
  CHECK(qp.lcorner == per.lcorner);
  CHECK(max_entry(qp.dense_D() - per.dense_D()) == 0.0);
}

TEST_CASE("mixed with equal ends reproduces dirichlet and neumann") {
  const auto dd = build_factor(
      {0.0, 2.0, 5,
       BoundaryCondition::mixed(EndKind::Dirichlet, EndKind::Dirichlet)});
  const auto d = build_factor({0.0, 2.0, 5, BoundaryCondition::dirichlet()});
  CHECK(dd.h == d.h);
  CHECK(dd.nodes == d.nodes);
  CHECK(dd.ldiag == d.ldiag);
  CHECK(dd.lsub == d.lsub);

  const auto nn = build_factor(
      {0.0, 2.0, 5,
       BoundaryCondition::mixed(EndKind::Neumann, EndKind::Neumann)});
  const auto n = build_factor({0.0, 2.0, 5, BoundaryCondition::neumann()});
  CHECK(nn.h == n.h);
  CHECK(nn.nodes == n.nodes);
  CHECK(nn.ldiag == n.ldiag);
  CHECK(nn.lsub == n.lsub);
}

TEST_CASE("mixed node placement: one full cell at dirichlet, half at neumann") {
  const auto op = build_factor(
      {0.0, 1.0, 2,
       BoundaryCondition::mixed(EndKind::Dirichlet, EndKind::Neumann)});
  CHECK(op.h == doctest::Approx(0.4));  // 1 / (2 - 1 + 1 + 0.5)
  CHECK(op.nodes[0] == doctest::Approx(0.4));
  CHECK(op.nodes[1] == doctest::Approx(0.8));
  CHECK(op.face_count() == 2);  // dirichlet end face + one interior face
}

TEST_CASE("periodic (0,1) with four points: kernel simple, next pair degenerate") {
  const FactorOperator op =
      build_factor({0.0, 1.0, 4, BoundaryCondition::periodic()});
  const FactorEigensystem es = factor_eigensystem(op);

  // Oracle: dense eigensolver on the circulant built here.
  Eigen::MatrixXcd circ = Eigen::MatrixXcd::Zero(4, 4);
  const double invh2 = 16.0;
  for (int i = 0; i < 4; ++i) {
    circ(i, i) = 2 * invh2;
    circ(i, (i + 1) % 4) = -invh2;
    circ(i, (i + 3) % 4) = -invh2;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(circ);
  for (int k = 0; k < 4; ++k)
    CHECK(es.eigenvalues[k] ==
          doctest::Approx(oracle.eigenvalues()(k)).epsilon(1e-12));

  CHECK(std::abs(es.eigenvalues[0]) <= 1e-12 * invh2);
  CHECK(es.eigenvalues[1] > 1e-6 * invh2);  // kernel is simple
  CHECK(es.eigenvalues[1] == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(es.eigenvalues[2] == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(es.eigenvalues[3] == doctest::Approx(64.0).epsilon(1e-12));
}

TEST_CASE("L equals D^H D for the whole menu") {
  for (const BoundaryCondition& bc : bc_menu()) {
    for (int n = 2; n <= 64; ++n) {
      const FactorOperator op = build_factor(spec_of(bc, n, -0.3, 1.9));
      const Eigen::MatrixXcd d = op.dense_D();
      const double invh2 = 1.0 / (op.h * op.h);
      CHECK(max_entry(op.dense_L() - d.adjoint() * d) <= 1e-14 * invh2);
      CHECK(max_entry(op.dense_L() - op.dense_L().adjoint()) <=
            1e-14 * invh2);

      const FactorEigensystem es = factor_eigensystem(op);
      CHECK(es.eigenvalues.front() >= -1e-12 * 4.0 * invh2);
      CHECK(std::is_sorted(es.eigenvalues.begin(), es.eigenvalues.end()));

      // Weighted orthonormality and per-column residual.
      const Eigen::MatrixXcd gram =
          es.vectors.adjoint() * (op.h * es.vectors);
      CHECK(max_entry(gram - Eigen::MatrixXcd::Identity(n, n)) <= 1e-12);
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXcd r = op.dense_L() * es.vectors.col(k) -
                                   es.eigenvalues[k] * es.vectors.col(k);
        CHECK(r.norm() * std::sqrt(op.h) <= 1e-12 * 4.0 * invh2);
      }

      // Phase convention: first nonzero component real positive.
      for (int k = 0; k < n; ++k) {
        const double colmax = es.vectors.col(k).cwiseAbs().maxCoeff();
        for (int i = 0; i < n; ++i) {
          const Complex v = es.vectors(i, k);
          if (std::abs(v) > 1e-8 * colmax) {
            CHECK(v.real() > 0.0);
            CHECK(std::abs(v.imag()) <= 1e-12 * colmax);
            break;
          }
        }
      }
    }
  }
}

TEST_CASE("dirichlet eigenvalues match the closed form") {
  for (int n : {2, 5, 16, 64}) {
    const FactorOperator op =
        build_factor({0.0, 2.5, n, BoundaryCondition::dirichlet()});
    const FactorEigensystem es = factor_eigensystem(op);
    for (int k = 1; k <= n; ++k) {
      const double analytic = 4.0 / (op.h * op.h) *
                              std::pow(std::sin(k * M_PI / (2 * (n + 1))), 2);
      CHECK(es.eigenvalues[k - 1] ==
            doctest::Approx(analytic).epsilon(1e-10));
    }
  }
}

TEST_CASE("quasiperiodic eigenvalues are continuous in theta") {
  for (double theta : {-2.0, -0.4, 0.0, 0.7, 2.9}) {
    const int n = 8;
    const auto a = factor_eigensystem(
        build_factor({0.0, 1.0, n, BoundaryCondition::quasiperiodic(theta)}));
    const auto b = factor_eigensystem(build_factor(
        {0.0, 1.0, n, BoundaryCondition::quasiperiodic(theta + 1e-6)}));
    const double invh2 = static_cast<double>(n) * n;
    for (int k = 0; k < n; ++k)
      CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) <= 1e-4 * invh2);
  }
}

TEST_CASE("quasiperiodic at 0 is exactly real, at pi nearly so") {
  const auto zero =
      build_factor({0.0, 1.0, 5, BoundaryCondition::quasiperiodic(0.0)});
  for (const Complex& v : zero.lsub) CHECK(v.imag() == 0.0);
  CHECK(zero.lcorner.imag() == 0.0);

  const auto pi =
      build_factor({0.0, 1.0, 5, BoundaryCondition::quasiperiodic(M_PI)});
  const double invh2 = 25.0;
  CHECK(std::abs(pi.lcorner.imag()) <= 1e-14 * invh2);
}

TEST_CASE("mixed dirichlet/neumann is strictly positive") {
  const auto es = factor_eigensystem(build_factor(
      {0.0, 1.0, 8,
       BoundaryCondition::mixed(EndKind::Dirichlet, EndKind::Neumann)}));
  CHECK(es.eigenvalues.front() > 1e-8);
}

TEST_CASE("apply_D incidence rule") {
  SUBCASE("dirichlet two points, h = 1") {
    const FactorOperator op =
        build_factor({0.0, 3.0, 2, BoundaryCondition::dirichlet()});
    REQUIRE(op.h == doctest::Approx(1.0));
    const auto out = apply_D(op, {Complex(1.0), Complex(0.0)});
    REQUIRE(out.size() == 3);
    CHECK(out[0] == Complex(1.0));
    CHECK(out[1] == Complex(-1.0));
    CHECK(out[2] == Complex(0.0));
  }
  SUBCASE("zero in, zero out") {
    for (const BoundaryCondition& bc : bc_menu()) {
      const FactorOperator op = build_factor(spec_of(bc, 5));
      for (const Complex& v : apply_D(op, std::vector<Complex>(5)))
        CHECK(std::abs(v) == 0.0);
    }
  }
  SUBCASE("periodic constants are gradient-free") {
    const FactorOperator op =
        build_factor({0.0, 1.0, 6, BoundaryCondition::periodic()});
    for (const Complex& v :
         apply_D(op, std::vector<Complex>(6, Complex(2.5, -1.0))))
      CHECK(std::abs(v) == 0.0);
  }
  SUBCASE("length mismatch") {
    const FactorOperator op =
        build_factor({0.0, 1.0, 4, BoundaryCondition::dirichlet()});
    CHECK_THROWS_AS((void)apply_D(op, std::vector<Complex>(3)), Error);
  }
}

TEST_CASE("factor spec validation") {
  CHECK_THROWS_AS((void)build_factor({1.0, 1.0, 4, {}}), Error);
  CHECK_THROWS_AS((void)build_factor({2.0, 1.0, 4, {}}), Error);
  CHECK_THROWS_AS((void)build_factor({0.0, 1.0, 0, {}}), Error);
  CHECK_THROWS_AS(
      (void)build_factor({0.0, 1.0, 1, BoundaryCondition::periodic()}), Error);
  CHECK_THROWS_AS((void)build_factor(
                      {0.0, 1.0, 1, BoundaryCondition::quasiperiodic(0.3)}),
                  Error);
  const double nan = std::nan("");
  CHECK_THROWS_AS((void)build_factor(
                      {0.0, 1.0, 4, BoundaryCondition::quasiperiodic(nan)}),
                  Error);
  CHECK_THROWS_AS((void)build_factor(
                      {0.0, 1.0, 4, BoundaryCondition::quasiperiodic(3.2)}),
                  Error);
  CHECK_THROWS_AS((void)build_factor(
                      {0.0, 1.0, 4, BoundaryCondition::quasiperiodic(-M_PI)}),
                  Error);
  CHECK_THROWS_AS((void)build_factor({0.0, 1.0, 9000, {}}), Error);

  // n = 1 is fine away from the wrap conditions
  CHECK(build_factor({0.0, 1.0, 1, BoundaryCondition::dirichlet()}).size() ==
        1);
  const auto n1 = build_factor({0.0, 1.0, 1, BoundaryCondition::neumann()});
  CHECK(n1.ldiag[0] == 0.0);
}
