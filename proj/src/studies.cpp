#include "esdg/studies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "esdg/diagnostics.hpp"

namespace esdg {

RunConfig entropy_test_config(ElementKind kind, int N, int M, int Ngeo, int nx, int ny) {
  if ((N + M) % 2 == 0) throw std::invalid_argument("entropy test: N + M must be odd for a GLL face rule");
  RunConfig c;
  c.N = N;
  c.Ngeo = Ngeo;
  c.element_kind = kind == ElementKind::Triangle ? MeshKind::Triangle : MeshKind::Quadrilateral;
  c.nx = nx;
  c.ny = ny;
  c.domain = {0, 15, -0.5, 0.5};
  c.alpha = 1.0 / 8;
  c.cfl = 0.5;
  c.T = 1;
  c.flux = FluxMode::EntropyConservative;
  const auto face = gll_1d((N + M + 3) / 2);
  const auto volume = kind == ElementKind::Triangle ? triangle_volume_rule(2 * N) : tensor_rule_2d(gll_1d(N + 1));
  (kind == ElementKind::Triangle ? c.tri_rules : c.quad_rules) = QuadraturePair{volume, face};
  return c;
}

InitialCondition density_jump(double gamma) {
  return [gamma](double x, double) {
    const double rho = std::abs(x - 7.5) < 2.5 ? 3.0 : 2.0;
    return primitive_to_conservative(rho, 0.0, 0.0, std::pow(rho, gamma), gamma);
  };
}

bool entropy_test_admissible(ElementKind kind, int N, int M, int Ngeo) {
  if (kind == ElementKind::Triangle) return Ngeo <= std::min(N + 1, M + 1);
  // GLL(N+1) volume points are exact to degree 2N - 1 per coordinate.
  return Ngeo <= std::min(N, M + 1) && 2 * N - 1 >= N + M - 1;
}

EntropyCase run_entropy_case(ElementKind kind, int N, int M, int Ngeo, int threads) {
  EntropyCase ec{kind, N, M, Ngeo, false, 0, -1, {}};
  ec.admissible = entropy_test_admissible(kind, N, M, Ngeo);
  double t = 0;
  const auto track = [&](const StepRecord& r) {
    ec.max_abs_entropy_rhs = std::max(ec.max_abs_entropy_rhs, std::abs(r.entropy_rhs));
    t = r.time + r.dt;
  };
  auto cfg = entropy_test_config(kind, N, M, Ngeo);
  cfg.threads = threads;
  const Solver solver(cfg);
  auto u = solver.project(density_jump(cfg.gamma));
  try {
    solver.run(u, nullptr, track);
    ec.max_abs_entropy_rhs = std::max(ec.max_abs_entropy_rhs, std::abs(entropy_rhs(solver, u)));
  } catch (const PhysicsError& e) {
    ec.error = e.what();
    ec.failed_at = t;
  }
  return ec;
}

RunConfig convergence_config(int N, int option, int nx, double T) {
  RunConfig c;
  c.N = N;
  c.option = option;
  c.element_kind = MeshKind::Hybrid;
  c.nx = c.ny = nx;
  c.domain = {0, 10, -5, 5};
  c.cfl = 0.5;
  c.T = T;
  c.flux = FluxMode::EntropyStable;
  return c;
}

ConvergenceResult convergence_study(int N, int option, const std::vector<int>& levels, double T, int threads,
                                    std::ostream* log) {
  Vortex vortex;
  vortex.period_x = 10;
  ConvergenceResult out;
  for (int nx : levels) {
    auto cfg = convergence_config(N, option, nx, T);
    cfg.threads = threads;
    vortex.gamma = cfg.gamma;
    const Solver solver(cfg);
    auto u = solver.project([&](double x, double y) { return vortex(x, y, 0.0); });
    double max_s = -std::numeric_limits<double>::infinity();
    for (const auto& r : solver.run(u)) max_s = std::max(max_s, r.entropy_rhs);
    const double err = l2_error(solver, u, [&](double x, double y) { return vortex(x, y, T); }).total;
    const double h = cfg.domain.width() / nx;
    double rate = std::numeric_limits<double>::quiet_NaN();
    if (!out.rows.empty()) rate = std::log(out.rows.back().error / err) / std::log(out.rows.back().h / h);
    out.rows.push_back({N, option, nx, h, err, rate, max_s});
    if (log) {
      *log << "N=" << N << " option=" << option << " nx=" << nx << " error=" << err;
      if (!std::isnan(rate)) *log << " rate=" << rate;
      *log << std::endl;
    }
  }
  const size_t n = out.rows.size();
  const size_t first = n >= 3 ? n - 3 : 0;
  std::vector<double> hs, es;
  for (size_t i = first; i < n; ++i) {
    hs.push_back(out.rows[i].h);
    es.push_back(out.rows[i].error);
  }
  out.fitted_rate = hs.size() >= 2 ? fitted_rate(hs, es) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace esdg
