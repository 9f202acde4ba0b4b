#ifndef ESDG_REFERENCE_OPERATORS_HPP
#define ESDG_REFERENCE_OPERATORS_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <array>

#include "esdg/basis.hpp"
#include "esdg/element.hpp"
#include "esdg/quadrature.hpp"

namespace esdg {

/// Volume rule plus the 1D rule shared by every face of an element kind.
struct QuadraturePair {
  QuadratureRule<double> volume;
  QuadratureRule<double> surface;
};

/// Quadrature pairings used in the numerical experiments:
///   1: quad GLL(N+1) volume, GLL(N+1) faces
///   2: quad GLL(N+1) volume, Gauss(N+1) faces
///   3: quad Gauss(N+1) volume, Gauss(N+1) faces
/// Triangles use a degree-2N volume rule and the same face rule as quads.
QuadraturePair option_rules(ElementKind kind, int degree, int option);

/// Quadrature-induced matrices for one (element kind, N, quadrature pair).
/// Surface points are stored face by face, `face_size` points per face.
struct ReferenceOperators {
  ElementKind kind = ElementKind::Triangle;
  int degree = 0;
  Basis basis;
  QuadratureRule<double> volume;
  QuadratureRule<double> surface_1d;

  int num_faces = 0;
  int face_size = 0;
  Eigen::MatrixXd face_points;    // Nfq x 2
  Eigen::VectorXd face_weights;   // 1D weights
  Eigen::MatrixXd face_normals;   // n_hat * J_f, Nfq x 2
  Eigen::VectorXd face_jacobian;  // J_f

  Eigen::MatrixXd Vq, Vf;
  std::array<Eigen::MatrixXd, 2> D;  // modal differentiation
  Eigen::MatrixXd M, Pq, E;
  Eigen::LLT<Eigen::MatrixXd> M_llt;
  std::array<Eigen::VectorXd, 2> B;  // diagonal of W_f diag(n_hat_i J_f)
  std::array<Eigen::MatrixXd, 2> Q;
  std::array<Eigen::MatrixXd, 2> QN;
  std::array<Eigen::MatrixXd, 2> QNskew;

  int Np() const { return basis.size(); }
  int Nq() const { return static_cast<int>(volume.size()); }
  int Nfq() const { return num_faces * face_size; }
  int Ntot() const { return Nq() + Nfq(); }

  /// [Vq; Vf]
  Eigen::MatrixXd Vh() const;
  /// diag of BN^i = blockdiag(0, B^i), length Nq + Nfq.
  Eigen::VectorXd BN(int i) const;
};

/// Throws std::runtime_error("insufficient volume quadrature ...") when the
/// volume rule does not give a positive definite mass matrix.
ReferenceOperators build_reference_operators(ElementKind kind, int degree,
                                             const QuadratureRule<double>& volume,
                                             const QuadratureRule<double>& surface_1d);

inline ReferenceOperators build_reference_operators(ElementKind kind, int degree, int option) {
  const auto rules = option_rules(kind, degree, option);
  return build_reference_operators(kind, degree, rules.volume, rules.surface);
}

/// A rule exact for total degree `degree` (triangle) or per-coordinate degree
/// `degree` (quadrilateral), built from Gauss points.
QuadratureRule<double> exact_volume_rule(ElementKind kind, int degree);

}  // namespace esdg

#endif  // ESDG_REFERENCE_OPERATORS_HPP
