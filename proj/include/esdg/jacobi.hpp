#ifndef ESDG_JACOBI_HPP
#define ESDG_JACOBI_HPP

#include <cmath>

namespace esdg {

/// Orthonormal Jacobi polynomial P_n^{(alpha,beta)} on [-1,1], normalized so
/// that the integral of P_n^2 (1-x)^alpha (1+x)^beta equals one. Evaluated by
/// the three-term recurrence.
template <typename Scalar>
Scalar jacobi_p(Scalar x, Scalar alpha, Scalar beta, int n) {
  using std::sqrt;
  using std::pow;
  using std::tgamma;
  const Scalar ab = alpha + beta;
  const Scalar gamma0 = pow(Scalar(2), ab + 1) / (ab + 1) * tgamma(alpha + 1) *
                        tgamma(beta + 1) / tgamma(ab + 1);
  Scalar p_prev = 1 / sqrt(gamma0);
  if (n == 0) return p_prev;
  const Scalar gamma1 = (alpha + 1) * (beta + 1) / (ab + 3) * gamma0;
  Scalar p = ((ab + 2) * x / 2 + (alpha - beta) / 2) / sqrt(gamma1);
  if (n == 1) return p;

  Scalar a_old = 2 / (2 + ab) * sqrt((alpha + 1) * (beta + 1) / (ab + 3));
  for (int i = 1; i < n; ++i) {
    const Scalar h1 = 2 * i + ab;
    const Scalar a_new = 2 / (h1 + 2) *
                         sqrt((i + 1) * (i + 1 + ab) * (i + 1 + alpha) * (i + 1 + beta) /
                              (h1 + 1) / (h1 + 3));
    const Scalar b_new = -(alpha * alpha - beta * beta) / h1 / (h1 + 2);
    const Scalar p_next = (-a_old * p_prev + (x - b_new) * p) / a_new;
    p_prev = p;
    p = p_next;
    a_old = a_new;
  }
  return p;
}

template <typename Scalar>
Scalar grad_jacobi_p(Scalar x, Scalar alpha, Scalar beta, int n) {
  if (n == 0) return Scalar(0);
  using std::sqrt;
  return sqrt(n * (n + alpha + beta + 1)) * jacobi_p(x, alpha + 1, beta + 1, n - 1);
}

/// Classical (unnormalized) Legendre polynomial, P_n(1) = 1.
template <typename Scalar>
Scalar legendre_p(Scalar x, int n) {
  if (n == 0) return Scalar(1);
  Scalar p_prev = 1;
  Scalar p = x;
  for (int k = 1; k < n; ++k) {
    const Scalar next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1);
    p_prev = p;
    p = next;
  }
  return p;
}

}  // namespace esdg

#endif  // ESDG_JACOBI_HPP
