#include "esdg/sbp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace esdg {

Eigen::MatrixXd assemble_hybridized(const ReferenceOperators& ops, int i) {
  const int nq = ops.Nq();
  const int nf = ops.Nfq();
  const auto B = ops.B[i].asDiagonal();
  Eigen::MatrixXd QN(nq + nf, nq + nf);
  QN.topLeftCorner(nq, nq) = ops.Q[i] - 0.5 * ops.E.transpose() * B * ops.E;
  QN.topRightCorner(nq, nf) = 0.5 * ops.E.transpose() * B;
  QN.bottomLeftCorner(nf, nq) = -0.5 * (B * ops.E);
  QN.bottomRightCorner(nf, nf) = 0.5 * Eigen::MatrixXd(B);
  return QN;
}

Eigen::MatrixXd assemble_skew_hybridized(const ReferenceOperators& ops, int i) {
  const int nq = ops.Nq();
  const int nf = ops.Nfq();
  const auto B = ops.B[i].asDiagonal();
  Eigen::MatrixXd S(nq + nf, nq + nf);
  S.topLeftCorner(nq, nq) = 0.5 * (ops.Q[i] - ops.Q[i].transpose());
  S.topRightCorner(nq, nf) = 0.5 * ops.E.transpose() * B;
  S.bottomLeftCorner(nf, nq) = -0.5 * (B * ops.E);
  S.bottomRightCorner(nf, nf) = 0.5 * Eigen::MatrixXd(B);
  return S;
}

Eigen::MatrixXd gsbp_residual(const ReferenceOperators& ops, int i) {
  return ops.Q[i] - ops.E.transpose() * ops.B[i].asDiagonal() * ops.E + ops.Q[i].transpose();
}

Eigen::VectorXd approx_derivative(const ReferenceOperators& ops, int i,
                                  const Eigen::Ref<const Eigen::VectorXd>& u) {
  if (u.size() != ops.Ntot()) {
    throw std::invalid_argument("approx_derivative: expected values at volume and surface points");
  }
  return ops.M_llt.solve(ops.Vh().transpose() * (ops.QNskew[i] * u));
}

CurvedOperators assemble_curved(const ReferenceOperators& ops, const ElementGeometry& geo) {
  const int nq = ops.Nq();
  if (geo.J.size() != nq) throw std::invalid_argument("assemble_curved: J size mismatch");
  if (!(geo.J.minCoeff() > 0)) {
    throw std::runtime_error("inverted element: J = " + std::to_string(geo.J.minCoeff()));
  }
  CurvedOperators out;
  for (int i = 0; i < 2; ++i) {
    out.Qk[i] = Eigen::MatrixXd::Zero(ops.Ntot(), ops.Ntot());
    for (int j = 0; j < 2; ++j) {
      const auto G = geo.G[i][j].asDiagonal();
      out.Qk[i] += 0.5 * (G * ops.QNskew[j] + ops.QNskew[j] * G);
    }
    out.Bk[i] = ops.face_weights.cwiseProduct(geo.nJ[i]);
  }
  const Eigen::VectorXd wJ = ops.volume.weights.cwiseProduct(geo.J);
  out.M = ops.Vq.transpose() * wJ.asDiagonal() * ops.Vq;
  out.M = 0.5 * (out.M + out.M.transpose()).eval();
  out.M_llt.compute(out.M);
  if (out.M_llt.info() != Eigen::Success) {
    throw std::runtime_error("inverted element: curved mass matrix is not positive definite");
  }
  out.Pq = out.M_llt.solve(ops.Vq.transpose() * wJ.asDiagonal());
  return out;
}

Assumption1Report check_assumption1(const ReferenceOperators& ops, int v_degree,
                                    const Eigen::Ref<const Eigen::VectorXd>& v_coeffs,
                                    double tol) {
  const Basis vb{ops.kind, v_degree};
  if (v_coeffs.size() != vb.size()) {
    throw std::invalid_argument("check_assumption1: coefficient count does not match degree");
  }
  const int n = ops.degree;
  Assumption1Report rep;
  rep.mass_ok = ops.M_llt.info() == Eigen::Success;

  // Volume: int d(phi_j)/dx_i v for every basis function and direction.
  const auto ref = exact_volume_rule(ops.kind, 4 * n + v_degree);
  const auto volume_sums = [&](const QuadratureRule<double>& rule) {
    const auto [Vr, Vs] = basis_grad(ops.basis, rule.points);
    const Eigen::VectorXd wv =
        rule.weights.cwiseProduct(basis_eval(vb, rule.points) * v_coeffs);
    Eigen::MatrixXd out(2, ops.Np());
    out.row(0) = wv.transpose() * Vr;
    out.row(1) = wv.transpose() * Vs;
    return out;
  };
  const Eigen::MatrixXd vol_exact = volume_sums(ref);
  const Eigen::MatrixXd vol_quad = volume_sums(ops.volume);
  rep.volume_error = (vol_exact - vol_quad).cwiseAbs().maxCoeff();
  rep.volume_ok =
      rep.volume_error <= tol * std::max(1.0, vol_exact.cwiseAbs().maxCoeff());

  // Surface: int phi_j v n_hat_i on every face, face by face.
  const auto ref_1d = gauss_1d(n + v_degree + 2);
  double scale = 1.0;
  for (int f = 0; f < ops.num_faces; ++f) {
    const auto face_sums = [&](const QuadratureRule<double>& rule_1d) {
      const auto fr = face_rule(ops.kind, f, rule_1d);
      const Eigen::MatrixXd pts = fr.points;
      const Eigen::VectorXd wv = fr.weights.cwiseProduct(basis_eval(vb, pts) * v_coeffs);
      const Eigen::MatrixXd Vf = basis_eval(ops.basis, pts);
      Eigen::MatrixXd out(2, ops.Np());
      for (int i = 0; i < 2; ++i) {
        out.row(i) = wv.cwiseProduct(fr.scaled_normals.col(i)).transpose() * Vf;
      }
      return out;
    };
    const Eigen::MatrixXd exact_f = face_sums(ref_1d);
    const Eigen::MatrixXd quad_f = face_sums(ops.surface_1d);
    scale = std::max(scale, exact_f.cwiseAbs().maxCoeff());
    rep.surface_error = std::max(rep.surface_error, (exact_f - quad_f).cwiseAbs().maxCoeff());
  }
  rep.surface_ok = rep.surface_error <= tol * scale;
  return rep;
}

}  // namespace esdg
