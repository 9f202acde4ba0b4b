#ifndef ESDG_DIAGNOSTICS_HPP
#define ESDG_DIAGNOSTICS_HPP

#include <Eigen/Core>

#include <vector>

#include "esdg/euler.hpp"
#include "esdg/reference_operators.hpp"
#include "esdg/solver.hpp"

namespace esdg {

struct TimestepConstants {
  double C_I = 0;  // inverse inequality
  double C_T = 0;  // trace inequality
};

/// Largest generalized eigenvalues of the quadrature stiffness and trace
/// matrices against M, using the operators' own volume and surface rules.
/// Face integrals use the 1D weights of each face without the face Jacobian.
TimestepConstants inverse_trace_constants(const ReferenceOperators& ops);

/// Entropy RHS of the current state: -sum_k v~^T (spatial residual).
double entropy_rhs(const Solver& solver, const Solution& u);

struct L2Error {
  Eigen::Vector4d field = Eigen::Vector4d::Zero();
  double total = 0;
};

/// sqrt(sum_k sum_q w_q J_q |u_h - u_exact|^2) with a degree 2N+2 rule.
L2Error l2_error(const Solver& solver, const Solution& u,
                 const std::function<State<double>(double, double)>& exact);

/// Max |du/dt| for a constant state on the configured (possibly warped) mesh.
double free_stream_test(const RunConfig& config, int steps = 0);

struct NormRatio {
  double min = 0, max = 0;
};

/// Range of ||u||^2_GLL / ||u||^2 over `samples` random u in Q^N plus the
/// constant and the top tensor Legendre mode.
NormRatio gll_norm_equivalence_check(int N, int samples = 1000, unsigned seed = 0);

/// Least-squares slope of log(error) against log(h).
double fitted_rate(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace esdg

#endif  // ESDG_DIAGNOSTICS_HPP
