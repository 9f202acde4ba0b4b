#ifndef ESDG_BASIS_HPP
#define ESDG_BASIS_HPP

#include <Eigen/Core>

#include <utility>

#include "esdg/element.hpp"

namespace esdg {

/// Orthonormal polynomial basis of V^N on a reference element: Dubiner
/// (collapsed-coordinate) polynomials on the triangle, tensor-product
/// Legendre polynomials on the quadrilateral.
struct Basis {
  ElementKind kind = ElementKind::Triangle;
  int degree = 0;

  int size() const { return basis_size(kind, degree); }
};

/// Matrix with entries phi_j(x_i); `points` holds one reference point per row.
/// Throws std::domain_error for points outside the closed reference element.
Eigen::MatrixXd basis_eval(const Basis& basis, const Eigen::Ref<const Eigen::MatrixXd>& points);

/// Reference-coordinate derivatives (d/dr, d/ds) of every basis function.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> basis_grad(
    const Basis& basis, const Eigen::Ref<const Eigen::MatrixXd>& points);

bool inside_reference(ElementKind kind, double r, double s, double tol = 1e-10);

/// Unisolvent interpolation nodes for V^N: tensor GLL points on the
/// quadrilateral, warp-and-blend points on the triangle. Both place N+1
/// GLL points on every edge, so mappings interpolated at these nodes agree
/// on faces shared by any two elements.
Eigen::MatrixXd interpolation_nodes(ElementKind kind, int degree);

}  // namespace esdg

#endif  // ESDG_BASIS_HPP
