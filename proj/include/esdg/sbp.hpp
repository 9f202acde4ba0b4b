#ifndef ESDG_SBP_HPP
#define ESDG_SBP_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <array>

#include "esdg/reference_operators.hpp"

namespace esdg {

/// [[Q - E^T B E / 2, E^T B / 2], [-B E / 2, B / 2]]
Eigen::MatrixXd assemble_hybridized(const ReferenceOperators& ops, int i);

/// [[Q - Q^T, E^T B], [-B E, B]] / 2, SBP by construction.
Eigen::MatrixXd assemble_skew_hybridized(const ReferenceOperators& ops, int i);

/// Q - E^T B E + Q^T; vanishes iff the generalized SBP property holds.
Eigen::MatrixXd gsbp_residual(const ReferenceOperators& ops, int i);

/// Modal coefficients of M^{-1} [Vq; Vf]^T QNskew^i u for values u at the
/// volume and surface points.
Eigen::VectorXd approx_derivative(const ReferenceOperators& ops, int i,
                                  const Eigen::Ref<const Eigen::VectorXd>& u);

/// Geometric terms of one element at volume then surface points.
struct ElementGeometry {
  std::array<std::array<Eigen::VectorXd, 2>, 2> G;  // G[i][j], length Nq + Nfq
  Eigen::VectorXd J;                                // volume points
  std::array<Eigen::VectorXd, 2> nJ;                // n_i J_f at surface points
};

struct CurvedOperators {
  std::array<Eigen::MatrixXd, 2> Qk;
  std::array<Eigen::VectorXd, 2> Bk;  // W_f diag(n_i J_f)
  Eigen::MatrixXd M;
  Eigen::LLT<Eigen::MatrixXd> M_llt;
  Eigen::MatrixXd Pq;
};

/// Qk^i = 1/2 sum_j (diag(G_ij) QNskew^j + QNskew^j diag(G_ij)).
/// Throws std::runtime_error("inverted element") if J <= 0 anywhere.
CurvedOperators assemble_curved(const ReferenceOperators& ops, const ElementGeometry& geo);

struct Assumption1Report {
  bool volume_ok = false;
  bool surface_ok = false;
  bool mass_ok = false;
  double volume_error = 0;
  double surface_error = 0;

  bool ok() const { return volume_ok && surface_ok && mass_ok; }
};

/// Compares the quadrature sums of int d(u)/dx_j v and int u v n_j (u over
/// the basis of V^N) with a reference rule of degree 4N + v_degree.
/// `v_coeffs` are modal coefficients in the basis of degree `v_degree`.
Assumption1Report check_assumption1(const ReferenceOperators& ops, int v_degree,
                                    const Eigen::Ref<const Eigen::VectorXd>& v_coeffs,
                                    double tol = 1e-12);

}  // namespace esdg

#endif  // ESDG_SBP_HPP
