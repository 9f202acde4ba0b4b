#include "esdg/basis.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "esdg/jacobi.hpp"
#include "esdg/quadrature.hpp"

namespace esdg {

namespace {

void check_inside(const Basis& basis, const Eigen::Ref<const Eigen::MatrixXd>& points) {
  if (points.cols() != 2) throw std::invalid_argument("basis: points must have two columns");
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (!inside_reference(basis.kind, points(i, 0), points(i, 1))) {
      throw std::domain_error("basis: point (" + std::to_string(points(i, 0)) + ", " +
                              std::to_string(points(i, 1)) + ") outside reference element");
    }
  }
}

// Collapsed coordinates of the triangle; a = -1 at the top vertex.
std::pair<double, double> rs_to_ab(double r, double s) {
  const double a = std::abs(1.0 - s) > 1e-14 ? 2.0 * (1.0 + r) / (1.0 - s) - 1.0 : -1.0;
  return {a, s};
}

}  // namespace

bool inside_reference(ElementKind kind, double r, double s, double tol) {
  if (kind == ElementKind::Quadrilateral) {
    return r >= -1 - tol && r <= 1 + tol && s >= -1 - tol && s <= 1 + tol;
  }
  return r >= -1 - tol && s >= -1 - tol && r + s <= tol;
}

Eigen::MatrixXd basis_eval(const Basis& basis, const Eigen::Ref<const Eigen::MatrixXd>& points) {
  check_inside(basis, points);
  const int n = basis.degree;
  Eigen::MatrixXd V(points.rows(), basis.size());
  for (Eigen::Index q = 0; q < points.rows(); ++q) {
    const double r = points(q, 0);
    const double s = points(q, 1);
    int col = 0;
    if (basis.kind == ElementKind::Quadrilateral) {
      for (int i = 0; i <= n; ++i) {
        const double pi = jacobi_p(r, 0.0, 0.0, i);
        for (int j = 0; j <= n; ++j) V(q, col++) = pi * jacobi_p(s, 0.0, 0.0, j);
      }
    } else {
      const auto [a, b] = rs_to_ab(r, s);
      for (int i = 0; i <= n; ++i) {
        const double h1 = jacobi_p(a, 0.0, 0.0, i);
        const double scale = std::sqrt(2.0) * std::pow(1.0 - b, i);
        for (int j = 0; j <= n - i; ++j) {
          V(q, col++) = scale * h1 * jacobi_p(b, 2.0 * i + 1.0, 0.0, j);
        }
      }
    }
  }
  return V;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> basis_grad(
    const Basis& basis, const Eigen::Ref<const Eigen::MatrixXd>& points) {
  check_inside(basis, points);
  const int n = basis.degree;
  Eigen::MatrixXd Vr(points.rows(), basis.size());
  Eigen::MatrixXd Vs(points.rows(), basis.size());
  for (Eigen::Index q = 0; q < points.rows(); ++q) {
    const double r = points(q, 0);
    const double s = points(q, 1);
    int col = 0;
    if (basis.kind == ElementKind::Quadrilateral) {
      for (int i = 0; i <= n; ++i) {
        const double pi = jacobi_p(r, 0.0, 0.0, i);
        const double dpi = grad_jacobi_p(r, 0.0, 0.0, i);
        for (int j = 0; j <= n; ++j) {
          Vr(q, col) = dpi * jacobi_p(s, 0.0, 0.0, j);
          Vs(q, col) = pi * grad_jacobi_p(s, 0.0, 0.0, j);
          ++col;
        }
      }
    } else {
      const auto [a, b] = rs_to_ab(r, s);
      for (int i = 0; i <= n; ++i) {
        const double fa = jacobi_p(a, 0.0, 0.0, i);
        const double dfa = grad_jacobi_p(a, 0.0, 0.0, i);
        const double norm = std::pow(2.0, i + 0.5);
        for (int j = 0; j <= n - i; ++j) {
          const double alpha = 2.0 * i + 1.0;
          const double gb = jacobi_p(b, alpha, 0.0, j);
          const double dgb = grad_jacobi_p(b, alpha, 0.0, j);
          const double half = 0.5 * (1.0 - b);
          const double half_im1 = i > 0 ? std::pow(half, i - 1) : 1.0;

          double dr = dfa * gb;
          if (i > 0) dr *= half_im1;

          double ds = dfa * gb * 0.5 * (1.0 + a);
          if (i > 0) ds *= half_im1;
          double tmp = dgb * std::pow(half, i);
          if (i > 0) tmp -= 0.5 * i * gb * half_im1;
          ds += fa * tmp;

          Vr(q, col) = norm * dr;
          Vs(q, col) = norm * ds;
          ++col;
        }
      }
    }
  }
  return {Vr, Vs};
}

namespace {

// Blending warp that moves equispaced edge points onto GLL points.
Eigen::VectorXd warp_factor(int n, const Eigen::VectorXd& rout) {
  const auto gll = gll_1d(n + 1);
  Eigen::VectorXd req(n + 1);
  for (int i = 0; i <= n; ++i) req[i] = -1.0 + 2.0 * i / n;
  Eigen::MatrixXd Veq(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) Veq(i, j) = jacobi_p(req[i], 0.0, 0.0, j);
  Eigen::MatrixXd Pmat(n + 1, rout.size());
  for (int j = 0; j <= n; ++j)
    for (Eigen::Index k = 0; k < rout.size(); ++k) Pmat(j, k) = jacobi_p(rout[k], 0.0, 0.0, j);
  const Eigen::MatrixXd Lmat = Veq.transpose().partialPivLu().solve(Pmat);
  Eigen::VectorXd warp = Lmat.transpose() * (gll.points.col(0) - req);
  for (Eigen::Index k = 0; k < rout.size(); ++k) {
    const bool interior = std::abs(rout[k]) < 1.0 - 1e-10;
    warp[k] = interior ? warp[k] / (1.0 - rout[k] * rout[k]) : 0.0;
  }
  return warp;
}

Eigen::MatrixXd warp_blend_nodes(int n) {
  if (n == 0) {
    Eigen::MatrixXd x(1, 2);
    x << -1.0 / 3.0, -1.0 / 3.0;
    return x;
  }
  // Optimized blending parameters for degrees 1..15.
  constexpr std::array<double, 15> alpha_opt{0.0000, 0.0000, 1.4152, 0.1001, 0.2751,
                                             0.9800, 1.0999, 1.2832, 1.3648, 1.4773,
                                             1.4959, 1.5743, 1.5770, 1.6223, 1.6258};
  const double alpha = n < 16 ? alpha_opt[n - 1] : 5.0 / 3.0;
  const int np = (n + 1) * (n + 2) / 2;
  Eigen::VectorXd L1(np), L2(np), L3(np);
  int sk = 0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      L1[sk] = double(i) / n;
      L3[sk] = double(j) / n;
      ++sk;
    }
  }
  L2 = Eigen::VectorXd::Ones(np) - L1 - L3;
  const double sqrt3 = std::sqrt(3.0);
  Eigen::VectorXd X = -L2 + L3;
  Eigen::VectorXd Y = (-L2 - L3 + 2.0 * L1) / sqrt3;

  const Eigen::VectorXd blend1 = 4.0 * L2.cwiseProduct(L3);
  const Eigen::VectorXd blend2 = 4.0 * L1.cwiseProduct(L3);
  const Eigen::VectorXd blend3 = 4.0 * L1.cwiseProduct(L2);
  const Eigen::VectorXd warpf1 = warp_factor(n, L3 - L2);
  const Eigen::VectorXd warpf2 = warp_factor(n, L1 - L3);
  const Eigen::VectorXd warpf3 = warp_factor(n, L2 - L1);
  const auto scale = [&](const Eigen::VectorXd& L) {
    return (Eigen::VectorXd::Ones(np).array() + (alpha * L.array()).square()).matrix();
  };
  const Eigen::VectorXd warp1 = blend1.cwiseProduct(warpf1).cwiseProduct(scale(L1));
  const Eigen::VectorXd warp2 = blend2.cwiseProduct(warpf2).cwiseProduct(scale(L2));
  const Eigen::VectorXd warp3 = blend3.cwiseProduct(warpf3).cwiseProduct(scale(L3));
  const double pi = std::numbers::pi;
  X += warp1 + std::cos(2 * pi / 3) * warp2 + std::cos(4 * pi / 3) * warp3;
  Y += std::sin(2 * pi / 3) * warp2 + std::sin(4 * pi / 3) * warp3;

  // Equilateral -> bi-unit right triangle.
  Eigen::MatrixXd rs(np, 2);
  for (int k = 0; k < np; ++k) {
    const double l1 = (sqrt3 * Y[k] + 1.0) / 3.0;
    const double l2 = (-3.0 * X[k] - sqrt3 * Y[k] + 2.0) / 6.0;
    const double l3 = (3.0 * X[k] - sqrt3 * Y[k] + 2.0) / 6.0;
    rs(k, 0) = -l2 + l3 - l1;
    rs(k, 1) = -l2 - l3 + l1;
  }
  return rs;
}

}  // namespace

Eigen::MatrixXd interpolation_nodes(ElementKind kind, int degree) {
  if (degree < 0) throw std::invalid_argument("interpolation_nodes: negative degree");
  if (kind == ElementKind::Triangle) return warp_blend_nodes(degree);
  if (degree == 0) return Eigen::MatrixXd::Zero(1, 2);
  return tensor_rule_2d(gll_1d(degree + 1)).points;
}

}  // namespace esdg
