// Command line driver: operator checks, constants, entropy sweeps,
// convergence studies, single runs and mesh dumps.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "esdg/config.hpp"
#include "esdg/diagnostics.hpp"
#include "esdg/sbp.hpp"
#include "esdg/studies.hpp"

using namespace esdg;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kPhysics = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "3", "1..7" or "1,2,3" (ranges may appear in a list).
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      if (const auto dots = tok.find(".."); dots != std::string::npos) {
        const int a = std::stoi(tok.substr(0, dots)), b = std::stoi(tok.substr(dots + 2));
        if (b < a) throw UsageError("empty range '" + tok + "'");
        for (int i = a; i <= b; ++i) out.push_back(i);
      } else {
        size_t pos = 0;
        out.push_back(std::stoi(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      }
    } catch (const std::logic_error&) {
      throw UsageError("cannot parse integer list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

// "Ngeo=1..6,M=1,3,5" -> {Ngeo: [1..6], M: [1,3,5]}
std::map<std::string, std::vector<int>> parse_sweep(const std::string& text) {
  std::map<std::string, std::vector<int>> out;
  std::string key, acc;
  const auto flush = [&] {
    if (!key.empty()) out[key] = parse_int_list(acc);
  };
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (const auto eq = tok.find('='); eq != std::string::npos) {
      flush();
      key = tok.substr(0, eq);
      acc = tok.substr(eq + 1);
    } else {
      if (key.empty()) throw UsageError("sweep must start with key=values");
      acc += "," + tok;
    }
  }
  flush();
  for (const auto& [k, v] : out) {
    if (k != "Ngeo" && k != "M") throw UsageError("unknown sweep key '" + k + "'");
  }
  return out;
}

std::vector<ElementKind> parse_kinds(const std::string& s) {
  if (s == "all") return {ElementKind::Triangle, ElementKind::Quadrilateral};
  if (s == "tri") return {ElementKind::Triangle};
  if (s == "quad") return {ElementKind::Quadrilateral};
  throw UsageError("kind must be tri, quad or all");
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(fs::path(dir) / name);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
  os << std::setprecision(16);
  return os;
}

// Config keys mirrored as --key overrides.
const char* const kConfigKeys[] = {"N",    "Ngeo", "option", "element_kind", "nx",      "ny",      "domain", "alpha",
                                   "cfl",  "T",    "flux",   "gamma",        "out_dir", "threads", "seed"};

struct RunOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_run_options(CLI::App* cmd, RunOptions& ro) {
  cmd->add_option("--config", ro.config_path, "key = value configuration file");
  for (const char* key : kConfigKeys) {
    cmd->add_option_function<std::string>(std::string("--") + key,
                                          [&ro, key](const std::string& v) { ro.overrides[key] = v; },
                                          "override config key " + std::string(key));
  }
}

RunConfig resolve(const RunOptions& ro) {
  RunConfig cfg;
  if (!ro.config_path.empty()) cfg = load_config(ro.config_path);
  for (const auto& [k, v] : ro.overrides) {
    try {
      apply_config_key(cfg, k, v);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--" + k + ": " + e.what());
    }
  }
  return cfg;
}

int check_operators(const std::string& kinds, const std::string& Ns, const std::string& options,
                    const std::string& out_dir, unsigned seed) {
  auto csv = open_output(out_dir, "check_operators.csv");
  csv << "kind,N,option,sbp_residual,skew_row_sum,gsbp_residual,skew_minus_hybrid,pass\n";
  std::printf("%-5s %2s %6s %12s %12s %12s %12s  %s\n", "kind", "N", "option", "sbp", "Q1", "gsbp", "|QNs-QN|",
              "result");
  bool ok = true;
  for (auto kind : parse_kinds(kinds)) {
    for (int N : parse_int_list(Ns)) {
      for (int option : parse_int_list(options)) {
        const auto ops = build_reference_operators(kind, N, option);
        double sbp = 0, row = 0, gsbp = 0, diff = 0;
        for (int i = 0; i < 2; ++i) {
          const Eigen::MatrixXd& S = ops.QNskew[i];
          sbp = std::max(sbp, (S + S.transpose() - Eigen::MatrixXd(ops.BN(i).asDiagonal())).cwiseAbs().maxCoeff());
          row = std::max(row, (S * Eigen::VectorXd::Ones(S.cols())).cwiseAbs().maxCoeff());
          gsbp = std::max(gsbp, gsbp_residual(ops, i).cwiseAbs().maxCoeff());
          diff = std::max(diff, (S - ops.QN[i]).cwiseAbs().maxCoeff());
        }
        const bool pass = sbp <= 1e-13 && row <= 1e-12;
        ok = ok && pass;
        std::printf("%-5s %2d %6d %12.3e %12.3e %12.3e %12.3e  %s\n", to_string(kind).data(), N, option, sbp, row,
                    gsbp, diff, pass ? "PASS" : "FAIL");
        csv << to_string(kind) << "," << N << "," << option << "," << sbp << "," << row << "," << gsbp << ","
            << diff << "," << (pass ? "pass" : "fail") << "\n";
      }
    }
  }
  for (int N : parse_int_list(Ns)) {
    const auto r = gll_norm_equivalence_check(N, 1000, seed);
    const double bound = std::pow(2 + 1.0 / N, 2);
    const bool pass = r.min >= 1 - 1e-12 && r.max <= bound * (1 + 1e-12);
    ok = ok && pass;
    std::printf("GLL norm ratio N=%d: [%.6f, %.6f], bound %.6f  %s\n", N, r.min, r.max, bound, pass ? "PASS" : "FAIL");
  }
  return ok ? kOk : kCheckFailed;
}

int constants(const std::string& Ns, const std::string& out_dir) {
  auto csv = open_output(out_dir, "constants.csv");
  csv << std::fixed << std::setprecision(6);
  csv << "N,quad_CI_gll,quad_CI_gauss,quad_CT_gll_gll,quad_CT_gll_gauss,quad_CT_gauss_gauss,tri_CI,tri_CT_gll,"
         "tri_CT_gauss\n";
  std::printf("%2s | %9s %9s | %9s %9s %9s | %9s | %9s %9s\n", "N", "qCI GLL", "qCI Gauss", "qCT GLL", "GLL/Gauss",
              "Gauss", "tCI", "tCT GLL", "tCT Gauss");
  for (int N : parse_int_list(Ns)) {
    const auto c = [&](ElementKind k, int option) { return inverse_trace_constants(build_reference_operators(k, N, option)); };
    const auto q1 = c(ElementKind::Quadrilateral, 1), q2 = c(ElementKind::Quadrilateral, 2),
               q3 = c(ElementKind::Quadrilateral, 3);
    const auto t1 = c(ElementKind::Triangle, 1), t3 = c(ElementKind::Triangle, 3);
    std::printf("%2d | %9.2f %9.2f | %9.2f %9.2f %9.2f | %9.2f | %9.2f %9.2f\n", N, q1.C_I, q3.C_I, q1.C_T, q2.C_T,
                q3.C_T, t1.C_I, t1.C_T, t3.C_T);
    csv << N << "," << q1.C_I << "," << q3.C_I << "," << q1.C_T << "," << q2.C_T << "," << q3.C_T << "," << t1.C_I
        << "," << t1.C_T << "," << t3.C_T << "\n";
  }
  return kOk;
}

int entropy_test(int N, const std::string& sweep, const std::string& kinds, const std::string& out_dir, int threads) {
  auto s = parse_sweep(sweep.empty() ? "Ngeo=1.." + std::to_string(N) + ",M=1,3,5" : sweep);
  if (!s.count("Ngeo")) s["Ngeo"] = parse_int_list("1.." + std::to_string(N));
  if (!s.count("M")) s["M"] = {1, 3, 5};
  auto csv = open_output(out_dir, "entropy_test.csv");
  csv << "kind,N,M,Ngeo,admissible,max_abs_entropy_rhs,failed_at\n";
  bool ok = true;
  for (auto kind : parse_kinds(kinds)) {
    std::printf("%s mesh, N = %d: max |entropy RHS| over t in [0, 1]\n%6s", to_string(kind).data(), N, "");
    for (int g : s["Ngeo"]) std::printf(" %11s", ("Ngeo=" + std::to_string(g)).c_str());
    std::printf("\n");
    for (int M : s["M"]) {
      if ((N + M) % 2 == 0) {
        std::fprintf(stderr, "skipping M = %d: N + M must be odd for a GLL face rule\n", M);
        continue;
      }
      std::printf("M = %-3d", M);
      for (int g : s["Ngeo"]) {
        const auto ec = run_entropy_case(kind, N, M, g, threads);
        const bool pass = !ec.admissible || (ec.error.empty() && ec.max_abs_entropy_rhs <= 1e-10);
        ok = ok && pass;
        std::printf(" %10.3e%s", ec.max_abs_entropy_rhs, ec.error.empty() ? (ec.admissible ? " " : "*") : "!");
        std::fflush(stdout);
        csv << to_string(kind) << "," << N << "," << M << "," << g << "," << ec.admissible << ","
            << ec.max_abs_entropy_rhs << "," << ec.failed_at << "\n";
      }
      std::printf("\n");
    }
  }
  std::printf("* outside the entropy conservation conditions, ! lost positivity before T\n");
  return ok ? kOk : kCheckFailed;
}

int convergence(const std::string& Ns, const std::string& options, int levels, int nx0, double T,
                const std::string& out_dir, int threads) {
  auto csv = open_output(out_dir, "convergence.csv");
  auto rates = open_output(out_dir, "convergence_rates.csv");
  csv << "N,option,nx,h,error,rate\n";
  rates << "N,option,fitted_rate,finest_error\n";
  std::vector<int> nx;
  for (int l = 0; l < levels; ++l) nx.push_back(nx0 << l);
  bool ok = true;
  for (int N : parse_int_list(Ns)) {
    for (int option : parse_int_list(options)) {
      const auto r = convergence_study(N, option, nx, T, threads, &std::cout);
      for (const auto& row : r.rows) {
        csv << row.N << "," << row.option << "," << row.nx << "," << row.h << "," << row.error << ",";
        if (!std::isnan(row.rate)) csv << row.rate;
        csv << "\n";
        ok = ok && row.max_entropy_rhs <= 1e-12;
      }
      rates << N << "," << option << "," << r.fitted_rate << "," << r.rows.back().error << "\n";
      std::printf("N = %d option %d: fitted rate %.3f\n", N, option, r.fitted_rate);
    }
  }
  return ok ? kOk : kCheckFailed;
}

int simulate(const RunConfig& cfg, const std::string& ic) {
  const Solver solver(cfg);
  Vortex vortex;
  vortex.period_x = cfg.domain.width();
  vortex.c1 = cfg.domain.x0 + cfg.domain.width() / 2;
  vortex.c2 = cfg.domain.y0 + cfg.domain.height() / 2;
  vortex.gamma = cfg.gamma;
  Solution u;
  if (ic == "vortex") {
    u = solver.project([&](double x, double y) { return vortex(x, y, 0.0); });
  } else if (ic == "density-jump") {
    u = solver.project(density_jump(cfg.gamma));
  } else if (ic == "constant") {
    u = solver.constant(primitive_to_conservative(1.0, 0.3, -0.2, 1.0, cfg.gamma));
  } else {
    throw UsageError("unknown initial condition '" + ic + "'");
  }
  const Eigen::Vector4d before = solver.totals(u);
  auto csv = open_output(cfg.out_dir, "diagnostics.csv");
  const auto rec = solver.run(u, &csv);
  const Eigen::Vector4d after = solver.totals(u);
  auto summary = open_output(cfg.out_dir, "summary.txt");
  summary << format_config(cfg) << "ic = " << ic << "\nsteps = " << rec.size() << "\n";
  double max_s = -INFINITY;
  for (const auto& r : rec) max_s = std::max(max_s, r.entropy_rhs);
  summary << "max_entropy_rhs = " << max_s << "\n";
  for (int c = 0; c < 4; ++c) summary << "total_" << c << " = " << before[c] << " -> " << after[c] << "\n";
  if (ic == "vortex") {
    summary << "l2_error = " << l2_error(solver, u, [&](double x, double y) { return vortex(x, y, cfg.T); }).total
            << "\n";
  }
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "diagnostics.csv").string() << " (" << rec.size()
            << " steps)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew-hybridized entropy stable DG solver for 2D compressible Euler"};
  app.require_subcommand(1);

  std::string kinds = "all", Ns = "1..7", options = "1,2,3", out_dir = "out";
  unsigned seed = 0;
  auto* chk = app.add_subcommand("check-operators", "SBP and GSBP invariants of the reference operators");
  chk->add_option("--kind", kinds, "tri, quad or all");
  chk->add_option("--N", Ns, "degrees, e.g. 1..7");
  chk->add_option("--option", options, "quadrature options, e.g. 1,2,3");
  chk->add_option("--out_dir", out_dir);
  chk->add_option("--seed", seed);

  std::string cN = "1..7";
  auto* cst = app.add_subcommand("constants", "inverse and trace constants");
  cst->add_option("--N", cN, "degrees, e.g. 1..7");
  cst->add_option("--out_dir", out_dir);

  int eN = 4, threads = 1;
  std::string sweep;
  auto* ent = app.add_subcommand("entropy-test", "max entropy RHS over (M, Ngeo) on the warped channel");
  ent->add_option("--N", eN);
  ent->add_option("--sweep", sweep, "e.g. Ngeo=1..6,M=1,3,5");
  ent->add_option("--kind", kinds, "tri, quad or all");
  ent->add_option("--out_dir", out_dir);
  ent->add_option("--threads", threads);

  std::string vN = "2,3", vopt = "1,2,3";
  int levels = 4, nx0 = 4;
  double T = 5;
  auto* conv = app.add_subcommand("convergence", "isentropic vortex convergence on hybrid meshes");
  conv->add_option("--N", vN);
  conv->add_option("--options", vopt);
  conv->add_option("--levels", levels);
  conv->add_option("--nx0", nx0, "cells per direction on the coarsest level");
  conv->add_option("--T", T);
  conv->add_option("--out_dir", out_dir);
  conv->add_option("--threads", threads);

  RunOptions sim_opts, mesh_opts;
  std::string ic = "vortex";
  auto* sim = app.add_subcommand("simulate", "single run from a configuration file");
  add_run_options(sim, sim_opts);
  sim->add_option("--ic", ic, "vortex, density-jump or constant");

  auto* dump = app.add_subcommand("mesh-dump", "print vertices, elements and face adjacency");
  add_run_options(dump, mesh_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*chk) return check_operators(kinds, Ns, options, out_dir, seed);
    if (*cst) return constants(cN, out_dir);
    if (*ent) return entropy_test(eN, sweep, kinds, out_dir, threads);
    if (*conv) return convergence(vN, vopt, levels, nx0, T, out_dir, threads);
    if (*sim) return simulate(resolve(sim_opts), ic);
    if (*dump) {
      const auto cfg = resolve(mesh_opts);
      write_mesh_dump(std::cout, build_uniform_mesh(cfg.element_kind, cfg.nx, cfg.ny, cfg.domain));
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return kPhysics;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kOk;
}
