#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "esdg/jacobi.hpp"
#include "esdg/quadrature.hpp"

using namespace esdg;

namespace {

double interval_monomial(int a) { return a % 2 == 1 ? 0.0 : 2.0 / (a + 1); }

// int x^a y^b over the triangle (-1,-1),(1,-1),(-1,1), integrating x from
// -1 to -y first.
double triangle_monomial(int a, int b) {
  const double sign = (a + 1) % 2 == 0 ? 1.0 : -1.0;
  return sign / (a + 1) * (interval_monomial(a + b + 1) - interval_monomial(b));
}

template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
  return s * h / 3;
}

double apply(const QuadratureRule<double>& rule, int a, int b) {
  double s = 0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) {
    s += rule.weights[k] * std::pow(rule.points(k, 0), a) * std::pow(rule.points(k, 1), b);
  }
  return s;
}

}  // namespace

TEST_CASE("gauss_1d small rules") {
  const auto g1 = gauss_1d(1);
  CHECK(g1.points(0, 0) == doctest::Approx(0.0));
  CHECK(g1.weights[0] == doctest::Approx(2.0));

  const auto g2 = gauss_1d(2);
  double s3 = 0, s2 = 0;
  for (int i = 0; i < 2; ++i) {
    s3 += g2.weights[i] * std::pow(g2.points(i, 0), 3);
    s2 += g2.weights[i] * std::pow(g2.points(i, 0), 2);
  }
  CHECK(std::abs(s3) < 1e-15);
  CHECK(std::abs(s2 - 2.0 / 3.0) < 1e-15);
  CHECK(g2.exactness == 3);

  CHECK_THROWS_AS(gauss_1d(0), std::invalid_argument);
}

TEST_CASE("gauss_1d n=5 against composite Simpson") {
  const auto g = gauss_1d(5);
  double s8 = 0, s9 = 0;
  for (int i = 0; i < 5; ++i) {
    s8 += g.weights[i] * std::pow(g.points(i, 0), 8);
    s9 += g.weights[i] * std::pow(g.points(i, 0), 9);
  }
  const double oracle = simpson([](double x) { return std::pow(x, 8); }, -1, 1, 20000);
  CHECK(std::abs(oracle - 2.0 / 9.0) < 1e-12);
  CHECK(std::abs(s8 - oracle) < 1e-13);
  CHECK(std::abs(s9) < 1e-13);
}

TEST_CASE("gauss points are Legendre roots and symmetric") {
  for (int n = 1; n <= 16; ++n) {
    const auto g = gauss_1d(n);
    CHECK(g.weights.minCoeff() > 0);
    CHECK(std::abs(g.weights.sum() - 2) < 1e-13);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(legendre_p(g.points(i, 0), n)) <= 1e-12);
      CHECK(std::abs(g.points(i, 0) + g.points(n - 1 - i, 0)) < 1e-15);
      CHECK(std::abs(g.points(i, 0)) < 1);
    }
    for (int a = 0; a <= 2 * n - 1; ++a) {
      CHECK(std::abs(apply(g, a, 0) - interval_monomial(a)) <= 1e-12 * std::max(1.0, interval_monomial(a)));
    }
  }
}

TEST_CASE("gll_1d") {
  const auto g2 = gll_1d(2);
  CHECK(g2.points(0, 0) == -1);
  CHECK(g2.points(1, 0) == 1);
  CHECK(g2.weights[0] == doctest::Approx(1.0));
  CHECK(g2.weights[1] == doctest::Approx(1.0));

  const auto g3 = gll_1d(3);
  CHECK(std::abs(g3.points(1, 0)) < 1e-16);
  CHECK(std::abs(g3.weights[0] - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(g3.weights[1] - 4.0 / 3.0) < 1e-15);
  CHECK(std::abs(g3.weights[2] - 1.0 / 3.0) < 1e-15);

  const auto g4 = gll_1d(4);
  CHECK(g4.exactness == 5);
  CHECK(std::abs(apply(g4, 5, 0)) < 1e-15);
  CHECK(std::abs(apply(g4, 4, 0) - 0.4) < 1e-14);
  CHECK(std::abs(apply(g4, 6, 0) - 2.0 / 7.0) > 1e-3);

  CHECK_THROWS_AS(gll_1d(1), std::invalid_argument);

  for (int n = 2; n <= 12; ++n) {
    const auto g = gll_1d(n);
    CHECK(g.weights.minCoeff() > 0);
    for (int a = 0; a <= 2 * n - 3; ++a) {
      CHECK(std::abs(apply(g, a, 0) - interval_monomial(a)) <= 1e-12);
    }
  }
}

TEST_CASE("triangle volume rules") {
  CHECK(std::abs(triangle_volume_rule(0).weights.sum() - 2) < 1e-14);
  // By hand: int x = -2/3 and int x y = 0 (the integrand is odd in y after
  // the inner integration).
  CHECK(std::abs(triangle_monomial(1, 0) - (-2.0 / 3.0)) < 1e-15);
  CHECK(std::abs(triangle_monomial(1, 1)) < 1e-15);
  CHECK(std::abs(apply(triangle_volume_rule(2), 1, 0) + 2.0 / 3.0) < 1e-14);
  CHECK(std::abs(apply(triangle_volume_rule(2), 1, 1)) < 1e-14);

  for (int deg = 0; deg <= 14; ++deg) {
    const auto rule = triangle_volume_rule(deg);
    CHECK(rule.exactness == deg);
    CHECK(rule.weights.minCoeff() > 0);
    CHECK(std::abs(rule.weights.sum() - 2) < 1e-13);
    for (Eigen::Index k = 0; k < rule.size(); ++k) {
      CHECK(rule.points(k, 0) + rule.points(k, 1) < 0);
    }
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        const double exact = triangle_monomial(a, b);
        CHECK(std::abs(apply(rule, a, b) - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("tensor rules") {
  const auto c = tensor_rule_2d(gll_1d(2));
  CHECK(c.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(c.weights[k] == doctest::Approx(1.0));
    CHECK(std::abs(c.points(k, 0)) == 1.0);
    CHECK(std::abs(c.points(k, 1)) == 1.0);
  }
  CHECK(std::abs(apply(tensor_rule_2d(gauss_1d(3)), 5, 5)) < 1e-15);
  CHECK(std::abs(apply(tensor_rule_2d(gauss_1d(2)), 2, 2) - 4.0 / 9.0) < 1e-14);

  for (int n = 1; n <= 8; ++n) {
    const auto g = gauss_1d(n);
    const auto t = tensor_rule_2d(g);
    CHECK(t.exactness == g.exactness);
    CHECK(std::abs(t.weights.sum() - g.weights.sum() * g.weights.sum()) < 1e-13);
    for (int a = 0; a <= t.exactness; ++a)
      for (int b = 0; b <= t.exactness; ++b)
        CHECK(std::abs(apply(t, a, b) - interval_monomial(a) * interval_monomial(b)) < 1e-12);
  }
}

TEST_CASE("face rules") {
  const auto bottom = face_rule(ElementKind::Quadrilateral, 0, gauss_1d(2));
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(std::abs(bottom.points(i, 0)) - 1 / std::sqrt(3.0)) < 1e-15);
    CHECK(bottom.points(i, 1) == -1);
    CHECK(bottom.scaled_normals(i, 0) == 0);
    CHECK(bottom.scaled_normals(i, 1) == -1);
    CHECK(bottom.jacobian[i] == 1);
  }

  const auto hyp = face_rule(ElementKind::Triangle, 1, gll_1d(4));
  CHECK(std::abs(hyp.weights.sum() * hyp.jacobian[0] - 2 * std::sqrt(2.0)) < 1e-14);
  CHECK(hyp.scaled_normals(0, 0) == 1);
  CHECK(hyp.scaled_normals(0, 1) == 1);

  for (auto kind : {ElementKind::Triangle, ElementKind::Quadrilateral}) {
    double perimeter = 0;
    for (int f = 0; f < num_faces(kind); ++f) {
      const auto fr = face_rule(kind, f, gauss_1d(3));
      perimeter += fr.weights.dot(fr.jacobian);
    }
    const double expected = kind == ElementKind::Triangle ? 4 + 2 * std::sqrt(2.0) : 8;
    CHECK(std::abs(perimeter - expected) < 1e-13);
  }
  CHECK_THROWS_AS(face_rule(ElementKind::Triangle, 3, gauss_1d(2)), std::out_of_range);
  CHECK_THROWS_AS(face_rule(ElementKind::Quadrilateral, -1, gauss_1d(2)), std::out_of_range);
}
