#ifndef ESDG_SOLVER_HPP
#define ESDG_SOLVER_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "esdg/euler.hpp"
#include "esdg/mesh.hpp"
#include "esdg/reference_operators.hpp"

namespace esdg {

enum class FluxMode { EntropyConservative, EntropyStable };

struct RunConfig {
  int N = 3;
  int Ngeo = 1;
  int option = 1;
  MeshKind element_kind = MeshKind::Hybrid;
  int nx = 8, ny = 8;
  Domain domain{0, 10, -5, 5};
  double alpha = 0;
  double cfl = 0.5;
  double T = 1;
  FluxMode flux = FluxMode::EntropyStable;
  double gamma = 1.4;
  std::string out_dir = "out";
  int threads = 1;
  unsigned seed = 0;
  // Explicit rules override `option` for one element kind.
  std::optional<QuadraturePair> tri_rules, quad_rules;
};

/// Modal coefficients, one N_p x 4 block per element.
using Solution = std::vector<Eigen::MatrixXd>;

/// Values of a state at one physical point.
using InitialCondition = std::function<State<double>(double x, double y)>;

struct RhsInfo {
  double entropy_rhs = 0;             // -sum_k v~^T r over all elements
  std::vector<double> element_entropy;
  std::vector<Eigen::Vector4d> surface_flux;  // per element: sum over faces of B f*
};

struct StepRecord {
  double time, entropy_rhs, total_mass, dt;
};

/// Skew-hybridized entropy stable DG discretization on a periodic mesh.
class Solver {
 public:
  explicit Solver(const RunConfig& config);

  const RunConfig& config() const { return cfg_; }
  const MeshTopology& mesh() const { return mesh_; }
  int num_elements() const { return mesh_.num_elements(); }
  const ReferenceOperators& ops(ElementKind kind) const;
  const ReferenceOperators& ops_of(int k) const { return ops(mesh_.kind[k]); }
  const GeometricFactors& geometry(int k) const { return geo_[k]; }
  const Eigen::MatrixXd& projection(int k) const { return elem_[k].Pq; }
  const Eigen::LLT<Eigen::MatrixXd>& mass(int k) const { return elem_[k].M_llt; }

  /// L2 projection (with the curved projection P_q^k) of point values.
  Solution project(const InitialCondition& f) const;
  Solution constant(const State<double>& u) const;

  /// u~ = u(V_h P_q^k v(V_q u)) at volume then surface points (N_tot x 4).
  /// Throws PhysicsError naming the element if any state is nonphysical.
  void entropy_project(const Solution& u, int k, Eigen::MatrixXd& u_tilde,
                       Eigen::MatrixXd* v_tilde = nullptr) const;

  /// du/dt. When `info` is given, also the entropy RHS and surface fluxes.
  void rhs(const Solution& u, Solution& du, RhsInfo* info = nullptr) const;

  /// Straightforward dense evaluation of the same right-hand side, used to
  /// check the sparse kernel.
  void rhs_reference(const Solution& u, Solution& du) const;

  /// dt = C h / (c_max max(C_T / 2, C_I)).
  double estimate_dt(const Solution& u) const;
  double max_wave_speed(const Solution& u) const;
  double min_h() const { return h_min_; }

  /// One step of the five-stage low-storage fourth-order Runge-Kutta scheme.
  /// `info` receives the diagnostics of the first stage, i.e. of the input state.
  void advance(Solution& u, double dt, RhsInfo* info = nullptr) const;

  /// Integrates to cfg.T with a fixed dt (last step shortened to land on T).
  /// Records one row per step, evaluated at the start of the step; `on_step`
  /// sees each row as soon as the step completes.
  std::vector<StepRecord> run(Solution& u, std::ostream* csv = nullptr,
                              const std::function<void(const StepRecord&)>& on_step = {}) const;

  /// sum_k 1^T W J (V_q u) for every field.
  Eigen::Vector4d totals(const Solution& u) const;

 private:
  struct Pair {
    int a, b;
    double s0, s1;
  };
  struct KindData {
    std::unique_ptr<ReferenceOperators> ops;
    std::vector<Pair> pairs;
    double C_I = 0, C_T = 0;
  };
  struct ElementData {
    Eigen::LLT<Eigen::MatrixXd> M_llt;
    Eigen::MatrixXd Pq;       // N_p x N_q curved projection
    Eigen::MatrixXd VhPq;     // N_tot x N_q
    Eigen::MatrixXd lift;     // M_k^{-1} V_h^T, N_p x N_tot
    Eigen::MatrixXd G;        // N_tot x 4, columns G11 G12 G21 G22
    Eigen::MatrixXd wnJ;      // N_fq x 2, w_f n_i J_f
    Eigen::VectorXd wJ;       // volume weights times J
    std::vector<int> nbr_elem, nbr_point;
  };

  template <typename F>
  void for_elements(F&& f) const;

  void element_rhs(int k, const std::vector<Eigen::MatrixXd>& ut,
                   const std::vector<std::vector<FluxAux<double>>>& aux, Eigen::MatrixXd& du,
                   Eigen::MatrixXd& r, Eigen::Vector4d* surface = nullptr) const;

  RunConfig cfg_;
  MeshTopology mesh_;
  std::array<KindData, 2> kinds_;
  std::vector<GeometricFactors> geo_;
  std::vector<ElementData> elem_;
  double h_min_ = 0;
};

/// Chooses C_I and C_T over the element kinds present.
double dt_from_constants(double cfl, double h, double c_max, double C_I, double C_T);

}  // namespace esdg

#endif  // ESDG_SOLVER_HPP
