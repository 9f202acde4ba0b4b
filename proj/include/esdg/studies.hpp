#ifndef ESDG_STUDIES_HPP
#define ESDG_STUDIES_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "esdg/solver.hpp"

namespace esdg {

// Entropy conservation sweep over (surface exactness M, geometry degree).

/// Warped channel [0,15] x [-0.5,0.5], alpha = 1/8, EC flux, CFL 0.5, T = 1.
/// Surface rule: GLL exact for degree N + M (N + M must be odd). Volume rule:
/// GLL(N+1) for quads, degree 2N for triangles.
RunConfig entropy_test_config(ElementKind kind, int N, int M, int Ngeo, int nx = 15, int ny = 4);

/// rho = 3 for |x - 7.5| < 2.5 and 2 elsewhere, at rest, p = rho^gamma.
InitialCondition density_jump(double gamma);

/// Whether the (kind, N, M, Ngeo) combination satisfies the conditions under
/// which the curved scheme is entropy conservative.
bool entropy_test_admissible(ElementKind kind, int N, int M, int Ngeo);

struct EntropyCase {
  ElementKind kind;
  int N, M, Ngeo;
  bool admissible = false;
  double max_abs_entropy_rhs = 0;  // over all completed steps and the final state
  double failed_at = -1;           // start time of the failing step, or -1
  std::string error;               // non-empty if the run failed
};

EntropyCase run_entropy_case(ElementKind kind, int N, int M, int Ngeo, int threads = 1);

// Isentropic vortex convergence on the hybrid mesh.

/// [0,10] x [-5,5], nx = ny, periodic vortex, LF flux.
RunConfig convergence_config(int N, int option, int nx, double T = 5);

struct ConvergenceRow {
  int N, option, nx;
  double h, error, rate;  // rate against the previous level, NaN on the first
  double max_entropy_rhs;  // largest (signed) entropy RHS seen during the run
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double fitted_rate = 0;  // least squares over the three finest levels
};

ConvergenceResult convergence_study(int N, int option, const std::vector<int>& levels, double T = 5,
                                    int threads = 1, std::ostream* log = nullptr);

}  // namespace esdg

#endif  // ESDG_STUDIES_HPP
