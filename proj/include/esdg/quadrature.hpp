#ifndef ESDG_QUADRATURE_HPP
#define ESDG_QUADRATURE_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "esdg/element.hpp"
#include "esdg/jacobi.hpp"

namespace esdg {

/// Points and positive weights on a reference domain. For tensor-product
/// rules, `exactness` is the degree of the underlying 1D rule.
template <typename Scalar>
struct QuadratureRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> points;  // one row per point
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
  int exactness = 0;

  Eigen::Index size() const { return weights.size(); }
  Eigen::Index dim() const { return points.cols(); }
};

/// Surface rule on one face of a reference element. `weights` are the 1D
/// weights; `scaled_normals` hold n_hat * J_f and `jacobian` holds J_f.
template <typename Scalar>
struct FaceQuadrature {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> points;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> scaled_normals;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> jacobian;
  int exactness = 0;
};

namespace detail {

template <typename Scalar>
Scalar newton_tolerance() {
  return std::min(Scalar(1e-15), 4 * std::numeric_limits<Scalar>::epsilon());
}

// Zeros of the Jacobi polynomial of degree n by Newton iteration with
// deflation, starting from Chebyshev–Gauss points.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> jacobi_zeros(int n, Scalar alpha, Scalar beta) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n);
  const Scalar tol = newton_tolerance<Scalar>();
  for (int k = 0; k < n; ++k) {
    Scalar r = -std::cos((2 * k + 1) * std::numbers::pi_v<Scalar> / (2 * n));
    if (k > 0) r = (r + x[k - 1]) / 2;
    for (int it = 0; it < 100; ++it) {
      Scalar deflation = 0;
      for (int j = 0; j < k; ++j) deflation += 1 / (r - x[j]);
      const Scalar p = jacobi_p(r, alpha, beta, n);
      const Scalar dp = grad_jacobi_p(r, alpha, beta, n);
      const Scalar delta = -p / (dp - deflation * p);
      r += delta;
      if (std::abs(delta) < tol) break;
    }
    x[k] = r;
  }
  if (alpha == beta) {
    for (int k = 0; k < n / 2; ++k) {
      const Scalar m = (x[n - 1 - k] - x[k]) / 2;
      x[k] = -m;
      x[n - 1 - k] = m;
    }
    if (n % 2 == 1) x[n / 2] = 0;
  }
  return x;
}

}  // namespace detail

/// Gauss–Jacobi rule for the weight (1-x)^alpha (1+x)^beta; exact to 2n-1.
template <typename Scalar>
QuadratureRule<Scalar> gauss_jacobi_1d(int n, Scalar alpha, Scalar beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_1d: need at least one point");
  QuadratureRule<Scalar> rule;
  rule.points = detail::jacobi_zeros(n, alpha, beta);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Christoffel numbers from the orthonormal family.
    Scalar s = 0;
    for (int k = 0; k < n; ++k) {
      const Scalar p = jacobi_p(rule.points(i, 0), alpha, beta, k);
      s += p * p;
    }
    rule.weights[i] = 1 / s;
  }
  rule.exactness = 2 * n - 1;
  return rule;
}

template <typename Scalar = double>
QuadratureRule<Scalar> gauss_1d(int n) {
  if (n < 1) throw std::invalid_argument("gauss_1d: need at least one point");
  return gauss_jacobi_1d<Scalar>(n, 0, 0);
}

/// Gauss–Legendre–Lobatto rule with n points (endpoints included); exact to 2n-3.
template <typename Scalar = double>
QuadratureRule<Scalar> gll_1d(int n) {
  if (n < 2) throw std::invalid_argument("gll_1d: need at least two points");
  QuadratureRule<Scalar> rule;
  rule.points.resize(n, 1);
  rule.weights.resize(n);
  rule.points(0, 0) = -1;
  rule.points(n - 1, 0) = 1;
  if (n > 2) {
    rule.points.block(1, 0, n - 2, 1) = detail::jacobi_zeros<Scalar>(n - 2, 1, 1);
  }
  for (int i = 0; i < n; ++i) {
    const Scalar p = legendre_p(rule.points(i, 0), n - 1);
    rule.weights[i] = Scalar(2) / (n * (n - 1) * p * p);
  }
  rule.exactness = 2 * n - 3;
  return rule;
}

/// Tensor product of a 1D rule with itself; first coordinate varies fastest.
template <typename Scalar>
QuadratureRule<Scalar> tensor_rule_2d(const QuadratureRule<Scalar>& rule_1d) {
  const Eigen::Index n = rule_1d.size();
  QuadratureRule<Scalar> rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index k = j * n + i;
      rule.points(k, 0) = rule_1d.points(i, 0);
      rule.points(k, 1) = rule_1d.points(j, 0);
      rule.weights[k] = rule_1d.weights[i] * rule_1d.weights[j];
    }
  }
  rule.exactness = rule_1d.exactness;
  return rule;
}

/// Collapsed-coordinate rule on the reference triangle exact for total
/// degree `degree`: Gauss–Legendre in the collapsed direction times
/// Gauss–Jacobi(1,0) in s, with ceil(degree/2)+1 points each.
template <typename Scalar = double>
QuadratureRule<Scalar> triangle_volume_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("triangle_volume_rule: negative degree");
  const int q = (degree + 1) / 2 + 1;
  const auto ga = gauss_jacobi_1d<Scalar>(q, 0, 0);
  const auto gb = gauss_jacobi_1d<Scalar>(q, 1, 0);
  QuadratureRule<Scalar> rule;
  rule.points.resize(q * q, 2);
  rule.weights.resize(q * q);
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < q; ++i) {
      const int k = j * q + i;
      const Scalar a = ga.points(i, 0);
      const Scalar b = gb.points(j, 0);
      rule.points(k, 0) = (1 + a) * (1 - b) / 2 - 1;
      rule.points(k, 1) = b;
      rule.weights[k] = ga.weights[i] * gb.weights[j] / 2;
    }
  }
  rule.exactness = degree;
  return rule;
}

/// Lifts a 1D rule onto one face of a reference element.
template <typename Scalar>
FaceQuadrature<Scalar> face_rule(ElementKind kind, int face,
                                 const QuadratureRule<Scalar>& rule_1d) {
  if (face < 0 || face >= num_faces(kind)) {
    throw std::out_of_range("face_rule: invalid face index");
  }
  const auto [va, vb] = face_vertices(kind, face);
  const auto a = reference_vertex(kind, va);
  const auto b = reference_vertex(kind, vb);
  const Scalar dx = Scalar(b[0] - a[0]);
  const Scalar dy = Scalar(b[1] - a[1]);
  const Scalar length = std::sqrt(dx * dx + dy * dy);
  const Scalar jac = length / 2;

  const Eigen::Index n = rule_1d.size();
  FaceQuadrature<Scalar> out;
  out.points.resize(n, 2);
  out.scaled_normals.resize(n, 2);
  out.weights = rule_1d.weights;
  out.jacobian = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Constant(n, jac);
  out.exactness = rule_1d.exactness;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar t = rule_1d.points(i, 0);
    out.points(i, 0) = ((1 - t) * a[0] + (1 + t) * b[0]) / 2;
    out.points(i, 1) = ((1 - t) * a[1] + (1 + t) * b[1]) / 2;
    // Outward normal of a counter-clockwise edge, times J_f = length / 2.
    out.scaled_normals(i, 0) = dy / 2;
    out.scaled_normals(i, 1) = -dx / 2;
  }
  return out;
}

}  // namespace esdg

#endif  // ESDG_QUADRATURE_HPP
