#include "esdg/diagnostics.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

#include "esdg/basis.hpp"
#include "esdg/quadrature.hpp"

namespace esdg {

namespace {

double max_generalized_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("generalized eigensolver failed");
  return es.eigenvalues().maxCoeff();
}

}  // namespace

TimestepConstants inverse_trace_constants(const ReferenceOperators& ops) {
  const auto& w = ops.volume.weights;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(ops.Np(), ops.Np());
  for (int i = 0; i < 2; ++i) {
    const Eigen::MatrixXd VD = ops.Vq * ops.D[i];
    K += VD.transpose() * w.asDiagonal() * VD;
  }
  // Every face is measured in its own [-1, 1] parametrization (no J_f).
  const Eigen::MatrixXd T = ops.Vf.transpose() * ops.face_weights.asDiagonal() * ops.Vf;
  return {max_generalized_eigenvalue(K, ops.M), max_generalized_eigenvalue(T, ops.M)};
}

double entropy_rhs(const Solver& solver, const Solution& u) {
  Solution du;
  RhsInfo info;
  solver.rhs(u, du, &info);
  return info.entropy_rhs;
}

L2Error l2_error(const Solver& solver, const Solution& u,
                 const std::function<State<double>(double, double)>& exact) {
  const int N = solver.config().N;
  const int Ngeo = solver.config().Ngeo;
  const auto maps = warp_mesh(solver.mesh(), solver.config().alpha, Ngeo);
  std::array<QuadratureRule<double>, 2> rules;
  std::array<Eigen::MatrixXd, 2> V, Vg, Vgr, Vgs;
  for (int t = 0; t < 2; ++t) {
    const auto kind = static_cast<ElementKind>(t);
    if (!solver.mesh().has(kind)) continue;
    rules[t] = exact_volume_rule(kind, 2 * N + 2);
    V[t] = basis_eval(Basis{kind, N}, rules[t].points);
    const Basis gb{kind, Ngeo};
    Vg[t] = basis_eval(gb, rules[t].points);
    std::tie(Vgr[t], Vgs[t]) = basis_grad(gb, rules[t].points);
  }
  L2Error err;
  for (int k = 0; k < solver.num_elements(); ++k) {
    const int t = static_cast<int>(solver.mesh().kind[k]);
    const auto& c = maps[k].coeffs;
    const Eigen::VectorXd x = Vg[t] * c.col(0), y = Vg[t] * c.col(1);
    const Eigen::VectorXd J = (Vgr[t] * c.col(0)).cwiseProduct(Vgs[t] * c.col(1)) -
                              (Vgs[t] * c.col(0)).cwiseProduct(Vgr[t] * c.col(1));
    const Eigen::MatrixXd uh = V[t] * u[k];
    for (int q = 0; q < uh.rows(); ++q) {
      const Eigen::Vector4d d = uh.row(q).transpose() - exact(x[q], y[q]);
      err.field += rules[t].weights[q] * J[q] * d.cwiseProduct(d);
    }
  }
  err.total = std::sqrt(err.field.sum());
  err.field = err.field.cwiseSqrt();
  return err;
}

double free_stream_test(const RunConfig& config, int steps) {
  const Solver solver(config);
  const State<double> c = primitive_to_conservative(1.0, 0.3, -0.2, 1.0, config.gamma);
  Solution u = solver.constant(c);
  if (steps > 0) {
    const double dt = solver.estimate_dt(u);
    for (int n = 0; n < steps; ++n) solver.advance(u, dt);
    double dev = 0;
    for (int k = 0; k < solver.num_elements(); ++k) {
      const Eigen::MatrixXd uq = solver.ops_of(k).Vq * u[k];
      dev = std::max(dev, (uq.rowwise() - c.transpose()).cwiseAbs().maxCoeff());
    }
    return dev;
  }
  Solution du;
  solver.rhs(u, du);
  double m = 0;
  for (const auto& d : du) m = std::max(m, d.cwiseAbs().maxCoeff());
  return m;
}

NormRatio gll_norm_equivalence_check(int N, int samples, unsigned seed) {
  const auto gll = gll_1d(N + 1);
  const auto gauss = gauss_1d(N + 1);
  const Basis basis{ElementKind::Quadrilateral, N};
  const auto rule_gll = tensor_rule_2d(gll);
  const auto rule_exact = tensor_rule_2d(gauss);
  const Eigen::MatrixXd Vl = basis_eval(basis, rule_gll.points);
  const Eigen::MatrixXd Ve = basis_eval(basis, rule_exact.points);
  const Eigen::MatrixXd Ml = Vl.transpose() * rule_gll.weights.asDiagonal() * Vl;
  const Eigen::MatrixXd Me = Ve.transpose() * rule_exact.weights.asDiagonal() * Ve;
  const auto ratio = [&](const Eigen::VectorXd& c) { return c.dot(Ml * c) / c.dot(Me * c); };

  NormRatio out{1e300, 0};
  const auto add = [&](const Eigen::VectorXd& c) {
    const double r = ratio(c);
    out.min = std::min(out.min, r);
    out.max = std::max(out.max, r);
  };
  Eigen::VectorXd c = Eigen::VectorXd::Zero(basis.size());
  c[0] = 1;
  add(c);
  c.setZero();
  c[basis.size() - 1] = 1;  // p_N(r) p_N(s)
  add(c);
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < c.size(); ++i) c[i] = dist(gen);
    add(c);
  }
  return out;
}

double fitted_rate(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("fitted_rate: need two or more levels");
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace esdg
