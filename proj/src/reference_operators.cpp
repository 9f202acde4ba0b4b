#include "esdg/reference_operators.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

#include "esdg/sbp.hpp"

namespace esdg {

QuadraturePair option_rules(ElementKind kind, int degree, int option) {
  if (degree < 1) throw std::invalid_argument("option_rules: degree must be at least 1");
  if (option < 1 || option > 3) throw std::invalid_argument("quadrature option must be 1, 2 or 3");
  QuadraturePair out;
  out.surface = option == 1 ? gll_1d(degree + 1) : gauss_1d(degree + 1);
  if (kind == ElementKind::Triangle) {
    out.volume = triangle_volume_rule(2 * degree);
  } else {
    out.volume = tensor_rule_2d(option == 3 ? gauss_1d(degree + 1) : gll_1d(degree + 1));
  }
  return out;
}

QuadratureRule<double> exact_volume_rule(ElementKind kind, int degree) {
  if (kind == ElementKind::Triangle) return triangle_volume_rule(degree);
  return tensor_rule_2d(gauss_1d(degree / 2 + 1));
}

Eigen::MatrixXd ReferenceOperators::Vh() const {
  Eigen::MatrixXd out(Ntot(), Np());
  out << Vq, Vf;
  return out;
}

Eigen::VectorXd ReferenceOperators::BN(int i) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Ntot());
  out.tail(Nfq()) = B[i];
  return out;
}

ReferenceOperators build_reference_operators(ElementKind kind, int degree,
                                             const QuadratureRule<double>& volume,
                                             const QuadratureRule<double>& surface_1d) {
  if (degree < 0) throw std::invalid_argument("build_reference_operators: negative degree");
  ReferenceOperators ops;
  ops.kind = kind;
  ops.degree = degree;
  ops.basis = Basis{kind, degree};
  ops.volume = volume;
  ops.surface_1d = surface_1d;
  ops.num_faces = num_faces(kind);
  ops.face_size = static_cast<int>(surface_1d.size());

  const int nfq = ops.Nfq();
  ops.face_points.resize(nfq, 2);
  ops.face_weights.resize(nfq);
  ops.face_normals.resize(nfq, 2);
  ops.face_jacobian.resize(nfq);
  for (int f = 0; f < ops.num_faces; ++f) {
    const auto fr = face_rule(kind, f, surface_1d);
    const int off = f * ops.face_size;
    ops.face_points.middleRows(off, ops.face_size) = fr.points;
    ops.face_weights.segment(off, ops.face_size) = fr.weights;
    ops.face_normals.middleRows(off, ops.face_size) = fr.scaled_normals;
    ops.face_jacobian.segment(off, ops.face_size) = fr.jacobian;
  }

  ops.Vq = basis_eval(ops.basis, volume.points);
  ops.Vf = basis_eval(ops.basis, ops.face_points);

  // Modal differentiation, integrated exactly: D_kj = int phi_k d(phi_j).
  const auto exact = exact_volume_rule(kind, 2 * degree);
  const Eigen::MatrixXd Ve = basis_eval(ops.basis, exact.points);
  const auto [Vr, Vs] = basis_grad(ops.basis, exact.points);
  const Eigen::MatrixXd VeW = Ve.transpose() * exact.weights.asDiagonal();
  ops.D[0] = VeW * Vr;
  ops.D[1] = VeW * Vs;

  const auto W = volume.weights.asDiagonal();
  ops.M = ops.Vq.transpose() * W * ops.Vq;
  ops.M = 0.5 * (ops.M + ops.M.transpose()).eval();
  ops.M_llt.compute(ops.M);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ops.M, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  if (ops.M_llt.info() != Eigen::Success || !(lmin > 1e-10 * lmax)) {
    throw std::runtime_error("insufficient volume quadrature: mass matrix is not positive definite (" +
                             std::string(to_string(kind)) + ", N = " + std::to_string(degree) +
                             ", " + std::to_string(volume.size()) + " points)");
  }
  ops.Pq = ops.M_llt.solve(ops.Vq.transpose() * W);
  ops.E = ops.Vf * ops.Pq;

  for (int i = 0; i < 2; ++i) {
    ops.B[i] = ops.face_weights.cwiseProduct(ops.face_normals.col(i));
    ops.Q[i] = W * ops.Vq * ops.D[i] * ops.Pq;
    ops.QN[i] = assemble_hybridized(ops, i);
    ops.QNskew[i] = assemble_skew_hybridized(ops, i);
  }
  return ops;
}

}  // namespace esdg
