#ifndef ESDG_EULER_HPP
#define ESDG_EULER_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace esdg {

/// Conservative (rho, rho u, rho v, E) or entropy variables at one point.
template <typename Scalar>
using State = Eigen::Matrix<Scalar, 4, 1>;

/// Nonphysical state (rho <= 0, internal energy <= 0, or v4 >= 0).
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
Scalar internal_energy(const State<Scalar>& u) {
  return u[3] - (u[1] * u[1] + u[2] * u[2]) / (2 * u[0]);
}

template <typename Scalar>
Scalar pressure(const State<Scalar>& u, Scalar gamma) {
  return (gamma - 1) * internal_energy(u);
}

template <typename Scalar>
bool is_physical(const State<Scalar>& u) {
  return u[0] > 0 && internal_energy(u) > 0 && std::isfinite(u[3]);
}

template <typename Scalar>
void require_physical(const State<Scalar>& u, const char* where) {
  if (!is_physical(u)) {
    throw PhysicsError(std::string(where) + ": nonphysical state (rho = " +
                       std::to_string(double(u[0])) + ", rho e = " +
                       std::to_string(double(internal_energy(u))) + ")");
  }
}

template <typename Scalar>
State<Scalar> primitive_to_conservative(Scalar rho, Scalar u, Scalar v, Scalar p, Scalar gamma) {
  return {rho, rho * u, rho * v, p / (gamma - 1) + rho * (u * u + v * v) / 2};
}

/// v1 = (rho e (gamma + 1 - s) - E) / rho e, v2,3 = rho u,v / rho e,
/// v4 = -rho / rho e, with s = log(p / rho^gamma).
template <typename Scalar>
State<Scalar> entropy_vars(const State<Scalar>& u, Scalar gamma) {
  require_physical(u, "entropy_vars");
  using std::log;
  const Scalar rho_e = internal_energy(u);
  const Scalar s = log((gamma - 1) * rho_e) - gamma * log(u[0]);
  return {(rho_e * (gamma + 1 - s) - u[3]) / rho_e, u[1] / rho_e, u[2] / rho_e, -u[0] / rho_e};
}

template <typename Scalar>
State<Scalar> cons_vars(const State<Scalar>& v, Scalar gamma) {
  if (!(v[3] < 0)) throw PhysicsError("cons_vars: v4 must be negative");
  using std::exp;
  using std::pow;
  const Scalar q = (v[1] * v[1] + v[2] * v[2]) / (2 * v[3]);
  const Scalar s = gamma - v[0] + q;
  const Scalar rho_e = pow((gamma - 1) / pow(-v[3], gamma), 1 / (gamma - 1)) * exp(-s / (gamma - 1));
  if (!(rho_e > 0) || !std::isfinite(double(rho_e))) {
    throw PhysicsError("cons_vars: entropy variables do not map to a physical state");
  }
  return {-rho_e * v[3], rho_e * v[1], rho_e * v[2], rho_e * (1 - q)};
}

/// Entropy U = -rho s, the function whose gradient is entropy_vars.
template <typename Scalar>
Scalar entropy(const State<Scalar>& u, Scalar gamma) {
  require_physical(u, "entropy");
  using std::log;
  return -u[0] * (log(pressure(u, gamma)) - gamma * log(u[0]));
}

/// Entropy potential psi_i = v^T f_i - F_i = (gamma - 1) rho u_i.
template <typename Scalar>
Scalar entropy_potential(const State<Scalar>& u, int dir, Scalar gamma) {
  return (gamma - 1) * u[1 + dir];
}

template <typename Scalar>
State<Scalar> physical_flux(const State<Scalar>& u, int dir, Scalar gamma) {
  const Scalar p = pressure(u, gamma);
  const Scalar un = u[1 + dir] / u[0];
  State<Scalar> f = un * u;
  f[1 + dir] += p;
  f[3] += p * un;
  return f;
}

/// (a - b) / (log a - log b), with the even series in ((a-b)/(a+b))^2 near a = b.
template <typename Scalar>
Scalar log_mean(Scalar a, Scalar b, Scalar log_a, Scalar log_b) {
  const Scalar z = (a - b) / (a + b);
  const Scalar u = z * z;
  if (u < Scalar(1e-4)) {
    const Scalar F = 1 + u * (Scalar(1) / 3 + u * (Scalar(1) / 5 + u * (Scalar(1) / 7)));
    return (a + b) / (2 * F);
  }
  return (a - b) / (log_a - log_b);
}

template <typename Scalar>
Scalar log_mean(Scalar a, Scalar b) {
  if (!(a > 0) || !(b > 0)) throw std::domain_error("log_mean: arguments must be positive");
  using std::log;
  return log_mean(a, b, log(a), log(b));
}

/// Pointwise quantities reused by every flux evaluation touching a point.
template <typename Scalar>
struct FluxAux {
  Scalar rho, u, v, beta, log_rho, log_beta;
};

template <typename Scalar>
FluxAux<Scalar> flux_aux(const State<Scalar>& q, Scalar gamma) {
  using std::log;
  const Scalar rho = q[0];
  const Scalar p = pressure(q, gamma);
  const Scalar beta = rho / (2 * p);
  return {rho, q[1] / rho, q[2] / rho, beta, log(rho), log(beta)};
}

/// Chandrashekar's entropy conservative fluxes in both directions.
template <typename Scalar>
void flux_ec(const FluxAux<Scalar>& L, const FluxAux<Scalar>& R, Scalar gamma, State<Scalar>& fx,
             State<Scalar>& fy) {
  const Scalar rho_log = log_mean(L.rho, R.rho, L.log_rho, R.log_rho);
  const Scalar beta_log = log_mean(L.beta, R.beta, L.log_beta, R.log_beta);
  const Scalar u_avg = (L.u + R.u) / 2;
  const Scalar v_avg = (L.v + R.v) / 2;
  const Scalar p_avg = (L.rho + R.rho) / (2 * (L.beta + R.beta));
  // Grouped per side so that swapping L and R is bitwise symmetric.
  const Scalar u2_avg = 2 * (u_avg * u_avg + v_avg * v_avg) -
                        ((L.u * L.u + L.v * L.v) + (R.u * R.u + R.v * R.v)) / 2;
  const Scalar E_avg = rho_log / (2 * beta_log * (gamma - 1)) + rho_log * u2_avg / 2;
  const Scalar fu = rho_log * u_avg;
  const Scalar fv = rho_log * v_avg;
  fx = {fu, fu * u_avg + p_avg, fu * v_avg, (E_avg + p_avg) * u_avg};
  fy = {fv, fu * v_avg, fv * v_avg + p_avg, (E_avg + p_avg) * v_avg};
}

template <typename Scalar>
State<Scalar> flux_ec(const State<Scalar>& uL, const State<Scalar>& uR, int dir, Scalar gamma) {
  require_physical(uL, "flux_ec");
  require_physical(uR, "flux_ec");
  State<Scalar> fx, fy;
  flux_ec(flux_aux(uL, gamma), flux_aux(uR, gamma), gamma, fx, fy);
  return dir == 0 ? fx : fy;
}

template <typename Scalar>
Scalar sound_speed(const State<Scalar>& u, Scalar gamma) {
  using std::sqrt;
  return sqrt(gamma * pressure(u, gamma) / u[0]);
}

/// Largest wave speed |u . n| + c over both states, for a unit normal n.
template <typename Scalar>
Scalar max_wave_speed(const State<Scalar>& uL, const State<Scalar>& uR, Scalar nx, Scalar ny,
                      Scalar gamma) {
  using std::abs;
  const auto speed = [&](const State<Scalar>& q) {
    return abs((q[1] * nx + q[2] * ny) / q[0]) + sound_speed(q, gamma);
  };
  return std::max(speed(uL), speed(uR));
}

/// Local Lax-Friedrichs penalty -lambda/2 (u_R - u_L) for a unit normal.
template <typename Scalar>
State<Scalar> flux_dissipation(const State<Scalar>& uL, const State<Scalar>& uR, Scalar nx, Scalar ny,
                               Scalar gamma) {
  return -max_wave_speed(uL, uR, nx, ny, gamma) / 2 * (uR - uL);
}

/// Isentropic vortex advected with unit speed in x. With `period_x` > 0 the
/// vortex center is wrapped into the periodic image closest to x.
struct Vortex {
  double c1 = 5, c2 = 0, beta = 5;
  double period_x = 0;
  double gamma = 1.4;

  template <typename Scalar>
  State<Scalar> operator()(Scalar x, Scalar y, Scalar t) const {
    using std::exp;
    using std::pow;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    Scalar dx = x - c1 - t;
    if (period_x > 0) dx -= period_x * std::round(double(dx) / period_x);
    const Scalar dy = y - c2;
    const Scalar r2 = dx * dx + dy * dy;
    const Scalar g = Scalar(gamma);
    const Scalar ex = exp(1 - r2);
    const Scalar rho = pow(1 - (g - 1) * beta * beta * ex * ex / (16 * g * pi * pi), 1 / (g - 1));
    const Scalar u = 1 - beta / (2 * pi) * ex * dy;
    const Scalar v = beta / (2 * pi) * ex * dx;
    return primitive_to_conservative<Scalar>(rho, u, v, pow(rho, g), g);
  }
};

}  // namespace esdg

#endif  // ESDG_EULER_HPP
