#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>

#include "esdg/reference_operators.hpp"
#include "esdg/sbp.hpp"

using namespace esdg;

namespace {

double max_abs(const Eigen::MatrixXd& A) { return A.cwiseAbs().maxCoeff(); }

// Modal coefficients of x^a y^b by exact L2 projection.
Eigen::VectorXd monomial_coeffs(ElementKind kind, int n, int a, int b) {
  const auto rule = exact_volume_rule(kind, 2 * n + a + b);
  const Eigen::MatrixXd V = basis_eval(Basis{kind, n}, rule.points);
  const Eigen::VectorXd f = rule.points.col(0).array().pow(a) * rule.points.col(1).array().pow(b);
  return V.transpose() * rule.weights.asDiagonal() * f;
}

Eigen::VectorXd monomial_at(const Eigen::MatrixXd& pts, int a, int b) {
  return pts.col(0).array().pow(a) * pts.col(1).array().pow(b);
}

Eigen::MatrixXd all_points(const ReferenceOperators& ops) {
  Eigen::MatrixXd x(ops.Ntot(), 2);
  x << ops.volume.points, ops.face_points;
  return x;
}

}  // namespace

TEST_CASE("reference operator invariants") {
  for (int n = 1; n <= 7; ++n) {
    for (auto kind : {ElementKind::Triangle, ElementKind::Quadrilateral}) {
      for (int option = 1; option <= 3; ++option) {
        const auto ops = build_reference_operators(kind, n, option);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(ops.Np(), ops.Np());
        CHECK(max_abs(ops.Pq * ops.Vq - I) < 1e-12);
        CHECK(max_abs(ops.E * Eigen::VectorXd::Ones(ops.Nq()) - Eigen::VectorXd::Ones(ops.Nfq())) < 1e-13);
        for (int i = 0; i < 2; ++i) {
          const Eigen::MatrixXd& S = ops.QNskew[i];
          const Eigen::MatrixXd BN = ops.BN(i).asDiagonal();
          CHECK(max_abs(S + S.transpose() - BN) < 1e-13);
          CHECK(max_abs(S * Eigen::VectorXd::Ones(ops.Ntot())) < 1e-12);
          CHECK(max_abs(ops.QN[i] * Eigen::VectorXd::Ones(ops.Ntot())) < 1e-12);
          CHECK(max_abs(ops.Q[i].transpose() * Eigen::VectorXd::Ones(ops.Nq()) -
                        ops.E.transpose() * ops.B[i]) < 1e-12);
          // Lower-right block of the skew part vanishes identically.
          const Eigen::MatrixXd K = S - 0.5 * BN;
          CHECK(max_abs(K.bottomRightCorner(ops.Nfq(), ops.Nfq())) == 0);
          CHECK(max_abs(K + K.transpose()) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("insufficient volume quadrature is reported") {
  CHECK_THROWS_WITH_AS(build_reference_operators(ElementKind::Quadrilateral, 3,
                                                 tensor_rule_2d(gauss_1d(2)), gauss_1d(4)),
                       doctest::Contains("insufficient volume quadrature"), std::runtime_error);
  CHECK_THROWS_AS(build_reference_operators(ElementKind::Triangle, 3, triangle_volume_rule(2),
                                            gauss_1d(4)),
                  std::runtime_error);
}

TEST_CASE("hybridized operator blocks") {
  const auto ops = build_reference_operators(ElementKind::Triangle, 3, 2);
  const Eigen::MatrixXd QN = assemble_hybridized(ops, 0);
  const Eigen::MatrixXd half_B = 0.5 * Eigen::MatrixXd(ops.B[0].asDiagonal());
  CHECK(max_abs(QN.bottomRightCorner(ops.Nfq(), ops.Nfq()) - half_B) == 0);
}

TEST_CASE("skew and hybridized operators agree under GSBP") {
  for (int n : {3, 6}) {
    const auto gll = build_reference_operators(ElementKind::Quadrilateral, n, 1);
    const auto gauss = build_reference_operators(ElementKind::Quadrilateral, n, 3);
    const auto mixed = build_reference_operators(ElementKind::Quadrilateral, n, 2);
    for (int i = 0; i < 2; ++i) {
      CHECK(max_abs(gll.QNskew[i] - gll.QN[i]) <= 1e-13);
      CHECK(max_abs(gauss.QNskew[i] - gauss.QN[i]) <= 1e-13);
      CHECK(max_abs(gsbp_residual(gll, i)) < 1e-12);
      CHECK(max_abs(gsbp_residual(mixed, i)) > 1e-3);
      CHECK(max_abs(mixed.QNskew[i] - mixed.QN[i]) > 1e-3);
    }
  }
  // Degree-4 triangle volume rule with GLL(3) faces loses GSBP, keeps SBP.
  const auto tri = build_reference_operators(ElementKind::Triangle, 2, triangle_volume_rule(4), gll_1d(3));
  for (int i = 0; i < 2; ++i) {
    CHECK(max_abs(gsbp_residual(tri, i)) > 1e-3);
    const Eigen::MatrixXd& S = tri.QNskew[i];
    CHECK(max_abs(S + S.transpose() - Eigen::MatrixXd(tri.BN(i).asDiagonal())) < 1e-13);
  }
}

TEST_CASE("skew part annihilates symmetric Hadamard products") {
  const auto ops = build_reference_operators(ElementKind::Triangle, 4, 1);
  Eigen::MatrixXd F = Eigen::MatrixXd::Random(ops.Ntot(), ops.Ntot());
  F = (F + F.transpose()).eval();
  for (int i = 0; i < 2; ++i) {
    const Eigen::MatrixXd K = ops.QNskew[i] - 0.5 * Eigen::MatrixXd(ops.BN(i).asDiagonal());
    CHECK(std::abs(K.cwiseProduct(F).sum()) < 1e-12);
  }
}

TEST_CASE("approx_derivative exactness") {
  // u = 1
  {
    const auto ops = build_reference_operators(ElementKind::Triangle, 3, 1);
    const Eigen::VectorXd d = approx_derivative(ops, 0, Eigen::VectorXd::Ones(ops.Ntot()));
    CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
  }
  // Quad N=4. With GLL(5) volume and faces the generalized SBP property
  // holds, so every u in Q^4 is differentiated exactly. Replacing the faces
  // by Gauss(5) breaks it: x^3 is still exact, x^4 is not.
  {
    const auto gll = build_reference_operators(ElementKind::Quadrilateral, 4, 1);
    const Eigen::MatrixXd x = all_points(gll);
    const Eigen::VectorXd d3 = approx_derivative(gll, 0, monomial_at(x, 3, 0));
    CHECK((d3 - 3 * monomial_coeffs(gll.kind, 4, 2, 0)).cwiseAbs().maxCoeff() < 1e-11);
    const Eigen::VectorXd d4 = approx_derivative(gll, 0, monomial_at(x, 4, 0));
    CHECK((d4 - 4 * monomial_coeffs(gll.kind, 4, 3, 0)).cwiseAbs().maxCoeff() < 1e-11);

    const auto mixed = build_reference_operators(ElementKind::Quadrilateral, 4, 2);
    const Eigen::MatrixXd xm = all_points(mixed);
    const Eigen::VectorXd m3 = approx_derivative(mixed, 0, monomial_at(xm, 3, 0));
    CHECK((m3 - 3 * monomial_coeffs(mixed.kind, 4, 2, 0)).cwiseAbs().maxCoeff() < 1e-11);
    double worst = 0;
    for (int a = 0; a <= 4; ++a) {
      const int b = 4 - a;
      const Eigen::VectorXd d = approx_derivative(mixed, 0, monomial_at(xm, a, b));
      const Eigen::VectorXd e = a > 0 ? Eigen::VectorXd(a * monomial_coeffs(mixed.kind, 4, a - 1, b))
                                      : Eigen::VectorXd::Zero(mixed.Np());
      worst = std::max(worst, (d - e).cwiseAbs().maxCoeff());
    }
    CHECK(worst > 1e-6);
  }
  // Triangle N=3 with degree-6 volume and Gauss(4) faces: all of P^3 exact.
  {
    const auto ops = build_reference_operators(ElementKind::Triangle, 3, triangle_volume_rule(6), gauss_1d(4));
    const Eigen::MatrixXd x = all_points(ops);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; a + b <= 3; ++b) {
        const Eigen::VectorXd u = monomial_at(x, a, b);
        const Eigen::VectorXd dx = approx_derivative(ops, 0, u);
        const Eigen::VectorXd dy = approx_derivative(ops, 1, u);
        const Eigen::VectorXd ex = a > 0 ? Eigen::VectorXd(a * monomial_coeffs(ops.kind, 3, a - 1, b))
                                         : Eigen::VectorXd::Zero(ops.Np());
        const Eigen::VectorXd ey = b > 0 ? Eigen::VectorXd(b * monomial_coeffs(ops.kind, 3, a, b - 1))
                                         : Eigen::VectorXd::Zero(ops.Np());
        CHECK((dx - ex).cwiseAbs().maxCoeff() < 1e-11);
        CHECK((dy - ey).cwiseAbs().maxCoeff() < 1e-11);
      }
    }
  }
}

TEST_CASE("approx_derivative reduces to modal differentiation under GSBP") {
  const auto ops = build_reference_operators(ElementKind::Quadrilateral, 3, 3);
  const Eigen::VectorXd c = Eigen::VectorXd::Random(ops.Np());
  const Eigen::VectorXd u = ops.Vh() * c;
  for (int i = 0; i < 2; ++i) {
    CHECK((approx_derivative(ops, i, u) - ops.D[i] * c).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("curved operators for affine and identity maps") {
  const auto ops = build_reference_operators(ElementKind::Triangle, 3, 2);
  ElementGeometry geo;
  const int nt = ops.Ntot();
  const double g[2][2] = {{0.7, -0.2}, {0.1, 0.9}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) geo.G[i][j] = Eigen::VectorXd::Constant(nt, g[i][j]);
  geo.J = Eigen::VectorXd::Constant(ops.Nq(), 0.65);
  for (int i = 0; i < 2; ++i) geo.nJ[i] = ops.face_normals * Eigen::Vector2d(g[i][0], g[i][1]);
  const auto cur = assemble_curved(ops, geo);
  for (int i = 0; i < 2; ++i) {
    const Eigen::MatrixXd expect = g[i][0] * ops.QNskew[0] + g[i][1] * ops.QNskew[1];
    CHECK(max_abs(cur.Qk[i] - expect) < 1e-14);
    Eigen::VectorXd bn = Eigen::VectorXd::Zero(nt);
    bn.tail(ops.Nfq()) = cur.Bk[i];
    CHECK(max_abs(cur.Qk[i] + cur.Qk[i].transpose() - Eigen::MatrixXd(bn.asDiagonal())) < 1e-12);
    CHECK(max_abs(cur.Qk[i] * Eigen::VectorXd::Ones(nt)) < 1e-12);
  }
  CHECK(max_abs(cur.M - 0.65 * ops.M) < 1e-13);

  geo.J(0) = -1e-3;
  CHECK_THROWS_WITH_AS(assemble_curved(ops, geo), doctest::Contains("inverted element"), std::runtime_error);
}

TEST_CASE("Assumption 1 checks") {
  for (int n = 1; n <= 6; ++n) {
    for (int option = 1; option <= 3; ++option) {
      const auto quad = build_reference_operators(ElementKind::Quadrilateral, n, option);
      Eigen::VectorXd c(1);
      c(0) = 2.0;  // v = 1 = 2 phi_0 on the quad
      CHECK(check_assumption1(quad, 0, c).ok());
      const auto tri = build_reference_operators(ElementKind::Triangle, n, option);
      c(0) = std::sqrt(2.0);
      CHECK(check_assumption1(tri, 0, c).ok());
    }
  }
  // Degree-N geometric term on a triangle with GLL(N+1) faces: the surface
  // integrand has degree 2N, one more than the rule integrates.
  const int n = 4;
  const auto tri = build_reference_operators(ElementKind::Triangle, n, 1);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(basis_size(ElementKind::Triangle, n));
  v(basis_size(ElementKind::Triangle, n) - 1) = 1.0;
  const auto rep = check_assumption1(tri, n, v);
  CHECK(rep.volume_ok);
  CHECK(rep.mass_ok);
  CHECK_FALSE(rep.surface_ok);
  // The same v with Gauss faces is fine.
  CHECK(check_assumption1(build_reference_operators(ElementKind::Triangle, n, 3), n, v).ok());
}
