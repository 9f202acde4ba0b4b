#include "esdg/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "esdg/diagnostics.hpp"
#include "esdg/sbp.hpp"

namespace esdg {

namespace {

// Carpenter-Kennedy five-stage fourth-order low-storage coefficients.
constexpr double rk4a[5] = {0.0, -567301805773.0 / 1357537059087.0,
                            -2404267990393.0 / 2016746695238.0,
                            -3550918686646.0 / 2091501179385.0,
                            -1275806237668.0 / 842570457699.0};
constexpr double rk4b[5] = {1432997174477.0 / 9575080441755.0, 5161836677717.0 / 13612068292357.0,
                            1720146321549.0 / 2090206949498.0, 3134564353537.0 / 4481467310338.0,
                            2277821191437.0 / 14882151754819.0};

State<double> row(const Eigen::MatrixXd& m, int i) { return m.row(i).transpose(); }

}  // namespace

double dt_from_constants(double cfl, double h, double c_max, double C_I, double C_T) {
  return cfl * h / (c_max * std::max(C_T / 2, C_I));
}

Solver::Solver(const RunConfig& config) : cfg_(config) {
  if (cfg_.N < 1) throw std::invalid_argument("N must be at least 1");
  if (cfg_.Ngeo < 1) throw std::invalid_argument("Ngeo must be at least 1");
  if (cfg_.threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (!(cfg_.gamma > 1)) throw std::invalid_argument("gamma must exceed 1");
  mesh_ = build_uniform_mesh(cfg_.element_kind, cfg_.nx, cfg_.ny, cfg_.domain);

  for (int t = 0; t < 2; ++t) {
    const auto kind = static_cast<ElementKind>(t);
    if (!mesh_.has(kind)) continue;
    const auto& explicit_rules = kind == ElementKind::Triangle ? cfg_.tri_rules : cfg_.quad_rules;
    const QuadraturePair rules = explicit_rules ? *explicit_rules : option_rules(kind, cfg_.N, cfg_.option);
    auto& kd = kinds_[t];
    kd.ops = std::make_unique<ReferenceOperators>(
        build_reference_operators(kind, cfg_.N, rules.volume, rules.surface));
    const auto& ops = *kd.ops;
    const auto c = inverse_trace_constants(ops);
    kd.C_I = c.C_I;
    kd.C_T = c.C_T;

    // Nonzero entries of the skew parts S^j = QNskew^j - BN^j / 2. The
    // surface-surface block of S^j vanishes.
    const Eigen::MatrixXd S0 = ops.QNskew[0] - Eigen::MatrixXd(ops.BN(0).asDiagonal()) / 2;
    const Eigen::MatrixXd S1 = ops.QNskew[1] - Eigen::MatrixXd(ops.BN(1).asDiagonal()) / 2;
    const double drop = 1e-14 * std::max(S0.cwiseAbs().maxCoeff(), S1.cwiseAbs().maxCoeff());
    for (int a = 0; a < ops.Nq(); ++a) {
      for (int b = a + 1; b < ops.Ntot(); ++b) {
        if (std::abs(S0(a, b)) > drop || std::abs(S1(a, b)) > drop) {
          kd.pairs.push_back({a, b, S0(a, b), S1(a, b)});
        }
      }
    }
  }

  const auto maps = warp_mesh(mesh_, cfg_.alpha, cfg_.Ngeo);
  geo_ = geometric_factors(mesh_, maps, kinds_[0].ops.get(), kinds_[1].ops.get());
  h_min_ = min_diameter(mesh_);

  const int K = mesh_.num_elements();
  elem_.resize(K);
  for (int k = 0; k < K; ++k) {
    const auto& ops = ops_of(k);
    const auto& g = geo_[k];
    auto& e = elem_[k];
    e.wJ = ops.volume.weights.cwiseProduct(g.J);
    const Eigen::MatrixXd VqW = ops.Vq.transpose() * e.wJ.asDiagonal();
    e.M_llt.compute(VqW * ops.Vq);
    if (e.M_llt.info() != Eigen::Success) {
      throw std::runtime_error("element " + std::to_string(k) + ": curved mass matrix is not positive definite");
    }
    e.Pq = e.M_llt.solve(VqW);
    const Eigen::MatrixXd Vh = ops.Vh();
    e.VhPq = Vh * e.Pq;
    e.lift = e.M_llt.solve(Vh.transpose());
    e.G.resize(ops.Ntot(), 4);
    e.G << g.G[0][0], g.G[0][1], g.G[1][0], g.G[1][1];
    e.wnJ.resize(ops.Nfq(), 2);
    e.wnJ << ops.face_weights.cwiseProduct(g.nJ[0]), ops.face_weights.cwiseProduct(g.nJ[1]);

    const int nfp = ops.face_size;
    e.nbr_elem.resize(ops.Nfq());
    e.nbr_point.resize(ops.Nfq());
    for (int f = 0; f < ops.num_faces; ++f) {
      const auto nb = mesh_.neighbors[k][f];
      const auto& on = ops_of(nb.element);
      if (on.face_size != nfp) throw std::runtime_error("face rules differ between element kinds");
      for (int i = 0; i < nfp; ++i) {
        const int j = nb.reversed ? nfp - 1 - i : i;
        e.nbr_elem[f * nfp + i] = nb.element;
        e.nbr_point[f * nfp + i] = on.Nq() + nb.face * nfp + j;
      }
    }
  }
}

const ReferenceOperators& Solver::ops(ElementKind kind) const {
  const auto& p = kinds_[static_cast<int>(kind)].ops;
  if (!p) throw std::invalid_argument(std::string("mesh has no ") + std::string(to_string(kind)) + " elements");
  return *p;
}

template <typename F>
void Solver::for_elements(F&& f) const {
  const int K = num_elements();
  const int nt = std::min(cfg_.threads, K);
  if (nt <= 1) {
    for (int k = 0; k < K; ++k) f(k, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int k = t * K / nt; k < (t + 1) * K / nt; ++k) f(k, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Solution Solver::project(const InitialCondition& f) const {
  Solution u(num_elements());
  for (int k = 0; k < num_elements(); ++k) {
    const auto& g = geo_[k];
    const int nq = ops_of(k).Nq();
    Eigen::MatrixXd vals(nq, 4);
    for (int q = 0; q < nq; ++q) vals.row(q) = f(g.x[q], g.y[q]).transpose();
    u[k] = elem_[k].Pq * vals;
  }
  return u;
}

Solution Solver::constant(const State<double>& c) const {
  return project([&](double, double) { return c; });
}

void Solver::entropy_project(const Solution& u, int k, Eigen::MatrixXd& u_tilde,
                             Eigen::MatrixXd* v_tilde) const {
  const auto& ops = ops_of(k);
  const Eigen::MatrixXd uq = ops.Vq * u[k];
  Eigen::MatrixXd vq(uq.rows(), 4);
  try {
    for (int q = 0; q < uq.rows(); ++q) vq.row(q) = entropy_vars(row(uq, q), cfg_.gamma).transpose();
    const Eigen::MatrixXd vh = elem_[k].VhPq * vq;
    u_tilde.resize(vh.rows(), 4);
    for (int p = 0; p < vh.rows(); ++p) u_tilde.row(p) = cons_vars(row(vh, p), cfg_.gamma).transpose();
    if (v_tilde) *v_tilde = vh;
  } catch (const PhysicsError& err) {
    throw PhysicsError("element " + std::to_string(k) + ": " + err.what());
  }
}

void Solver::element_rhs(int k, const std::vector<Eigen::MatrixXd>& ut,
                         const std::vector<std::vector<FluxAux<double>>>& aux, Eigen::MatrixXd& du,
                         Eigen::MatrixXd& r, Eigen::Vector4d* surface) const {
  const auto& ops = ops_of(k);
  const auto& kd = kinds_[static_cast<int>(mesh_.kind[k])];
  const auto& e = elem_[k];
  const int nq = ops.Nq();
  const double gamma = cfg_.gamma;
  const auto& A = aux[k];
  const auto& G = e.G;

  r.setZero(ops.Ntot(), 4);
  State<double> fx, fy;
  for (const auto& p : kd.pairs) {
    const double cx = p.s0 * (G(p.a, 0) + G(p.b, 0)) + p.s1 * (G(p.a, 1) + G(p.b, 1));
    const double cy = p.s0 * (G(p.a, 2) + G(p.b, 2)) + p.s1 * (G(p.a, 3) + G(p.b, 3));
    flux_ec(A[p.a], A[p.b], gamma, fx, fy);
    const State<double> val = cx * fx + cy * fy;
    r.row(p.a) += val.transpose();
    r.row(p.b) -= val.transpose();
  }

  const bool es = cfg_.flux == FluxMode::EntropyStable;
  if (surface) surface->setZero();
  for (int i = 0; i < ops.Nfq(); ++i) {
    const int a = nq + i;
    const int nk = e.nbr_elem[i];
    const int b = e.nbr_point[i];
    flux_ec(A[a], aux[nk][b], gamma, fx, fy);
    const double wx = e.wnJ(i, 0), wy = e.wnJ(i, 1);
    State<double> f = wx * fx + wy * fy;
    if (es) {
      const double len = std::hypot(wx, wy);
      const State<double> uM = row(ut[k], a);
      const State<double> uP = row(ut[nk], b);
      f += len * flux_dissipation(uM, uP, wx / len, wy / len, gamma);
    }
    r.row(a) += f.transpose();
    if (surface) *surface += f;
  }
  du.noalias() = -e.lift * r;
}

void Solver::rhs(const Solution& u, Solution& du, RhsInfo* info) const {
  const int K = num_elements();
  std::vector<Eigen::MatrixXd> ut(K), vt(info ? K : 0);
  std::vector<std::vector<FluxAux<double>>> aux(K);
  for_elements([&](int k, int) {
    entropy_project(u, k, ut[k], info ? &vt[k] : nullptr);
    aux[k].resize(ut[k].rows());
    for (int p = 0; p < ut[k].rows(); ++p) aux[k][p] = flux_aux(row(ut[k], p), cfg_.gamma);
  });

  du.resize(K);
  if (info) {
    info->element_entropy.assign(K, 0.0);
    info->surface_flux.assign(K, Eigen::Vector4d::Zero());
  }
  std::vector<Eigen::MatrixXd> scratch(std::min(cfg_.threads, K));
  for_elements([&](int k, int t) {
    element_rhs(k, ut, aux, du[k], scratch[t], info ? &info->surface_flux[k] : nullptr);
    if (info) info->element_entropy[k] = -(vt[k].array() * scratch[t].array()).sum();
  });
  if (info) {
    info->entropy_rhs = 0;
    for (double s : info->element_entropy) info->entropy_rhs += s;
  }
}

void Solver::rhs_reference(const Solution& u, Solution& du) const {
  const int K = num_elements();
  std::vector<Eigen::MatrixXd> ut(K);
  for (int k = 0; k < K; ++k) entropy_project(u, k, ut[k]);
  du.resize(K);
  for (int k = 0; k < K; ++k) {
    const auto& ops = ops_of(k);
    const auto cur = assemble_curved(ops, geo_[k]);
    const int nt = ops.Ntot();
    const int nq = ops.Nq();
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(nt, 4);
    for (int a = 0; a < nt; ++a) {
      for (int b = 0; b < nt; ++b) {
        const State<double> ua = row(ut[k], a), ub = row(ut[k], b);
        for (int i = 0; i < 2; ++i) {
          r.row(a) += 2 * cur.Qk[i](a, b) * flux_ec(ua, ub, i, cfg_.gamma).transpose();
        }
      }
    }
    const auto& e = elem_[k];
    for (int i = 0; i < ops.Nfq(); ++i) {
      const State<double> uM = row(ut[k], nq + i);
      const State<double> uP = row(ut[e.nbr_elem[i]], e.nbr_point[i]);
      for (int d = 0; d < 2; ++d) {
        r.row(nq + i) += cur.Bk[d][i] * (flux_ec(uM, uP, d, cfg_.gamma) -
                                         physical_flux(uM, d, cfg_.gamma)).transpose();
      }
      if (cfg_.flux == FluxMode::EntropyStable) {
        const double len = std::hypot(cur.Bk[0][i], cur.Bk[1][i]);
        r.row(nq + i) += len * flux_dissipation(uM, uP, cur.Bk[0][i] / len, cur.Bk[1][i] / len,
                                                cfg_.gamma).transpose();
      }
    }
    du[k] = -cur.M_llt.solve(ops.Vh().transpose() * r);
  }
}

double Solver::max_wave_speed(const Solution& u) const {
  double c = 0;
  for (int k = 0; k < num_elements(); ++k) {
    const Eigen::MatrixXd uq = ops_of(k).Vq * u[k];
    for (int q = 0; q < uq.rows(); ++q) {
      const State<double> s = row(uq, q);
      require_physical(s, "max_wave_speed");
      c = std::max(c, std::hypot(s[1], s[2]) / s[0] + sound_speed(s, cfg_.gamma));
    }
  }
  return c;
}

double Solver::estimate_dt(const Solution& u) const {
  double C_I = 0, C_T = 0;
  for (const auto& kd : kinds_) {
    if (!kd.ops) continue;
    C_I = std::max(C_I, kd.C_I);
    C_T = std::max(C_T, kd.C_T);
  }
  return dt_from_constants(cfg_.cfl, h_min_, max_wave_speed(u), C_I, C_T);
}

void Solver::advance(Solution& u, double dt, RhsInfo* info) const {
  Solution du, res(u.size());
  for (size_t k = 0; k < u.size(); ++k) res[k].setZero(u[k].rows(), u[k].cols());
  for (int s = 0; s < 5; ++s) {
    rhs(u, du, s == 0 ? info : nullptr);
    for (size_t k = 0; k < u.size(); ++k) {
      res[k] = rk4a[s] * res[k] + dt * du[k];
      u[k] += rk4b[s] * res[k];
    }
  }
}

std::vector<StepRecord> Solver::run(Solution& u, std::ostream* csv,
                                    const std::function<void(const StepRecord&)>& on_step) const {
  const double dt = estimate_dt(u);
  const int steps = static_cast<int>(std::ceil(cfg_.T / dt - 1e-12));
  std::vector<StepRecord> out;
  out.reserve(steps);
  if (csv) *csv << "step,time,entropy_rhs,total_mass,dt\n" << std::setprecision(16);
  double t = 0;
  for (int n = 0; n < steps; ++n) {
    const double h = n + 1 == steps ? cfg_.T - t : dt;
    RhsInfo info;
    const double mass = totals(u)[0];
    advance(u, h, &info);
    out.push_back({t, info.entropy_rhs, mass, h});
    if (on_step) on_step(out.back());
    if (csv) *csv << n << "," << t << "," << info.entropy_rhs << "," << mass << "," << h << "\n";
    t = n + 1 == steps ? cfg_.T : t + h;
  }
  return out;
}

Eigen::Vector4d Solver::totals(const Solution& u) const {
  Eigen::Vector4d s = Eigen::Vector4d::Zero();
  for (int k = 0; k < num_elements(); ++k) {
    s += ((ops_of(k).Vq * u[k]).transpose() * elem_[k].wJ);
  }
  return s;
}

}  // namespace esdg
