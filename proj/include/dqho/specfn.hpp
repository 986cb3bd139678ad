#ifndef DQHO_SPECFN_HPP
#define DQHO_SPECFN_HPP

// Special functions used as independent oracles: terminating 2F1, Kravchuk
// polynomials and functions at p = 1/2, Wigner little-d at pi/2, Hermite
// functions and the double factorial.

#include <cmath>
#include <numbers>
#include <string>

#include "dqho/errors.hpp"
#include "dqho/rational.hpp"

namespace dqho::specfn {

// Threshold below which the Kravchuk prefactor is evaluated exactly.
inline constexpr int kExactResolutionLimit = 60;

// k!! = k (k-2) (k-4) ... ; 0!! = 1.
inline Integer double_factorial(int k) {
  if (k < 0) throw domain_error("double_factorial: negative argument");
  Integer r = 1;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

// sum_{k=0}^{n} (-n)_k (-x)_k / (-N)_k  z^k / k!
inline Rational hyp2f1_terminating(int n, int x, int N, const Rational& z) {
  if (n < 0 || x < 0 || N < 0) throw domain_error("hyp2f1_terminating: parameters must be non-negative");
  if (n > N) throw pole_error("hyp2f1_terminating: (-N)_k vanishes before the series terminates (n > N)");
  Rational sum = 1;
  Rational term = 1;
  for (int k = 0; k < n && k < x; ++k) {
    // term_{k+1} = term_k (k-n)(k-x) / ((k-N)(k+1)) z
    term *= Rational((k - n) * static_cast<long>(k - x));
    term /= Rational((k - N) * static_cast<long>(k + 1));
    term *= z;
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

// k_n(x; p, N) = (-1)^n C(N,n) p^n 2F1(-n, -x; -N; 1/p)
inline Rational kravchuk_polynomial(int n, int x, const Rational& p, int N) {
  if (N < 0 || n < 0 || n > N) throw domain_error("kravchuk_polynomial: need 0 <= n <= N");
  if (x < 0) throw domain_error("kravchuk_polynomial: x must be non-negative");
  if (!(p > 0 && p < 1)) throw domain_error("kravchuk_polynomial: need 0 < p < 1");
  Rational pn = 1;
  for (int k = 0; k < n; ++k) pn *= p;
  Rational out = Rational(binomial(N, n)) * pn * hyp2f1_terminating(n, x, N, 1 / p);
  if (n % 2) out = -out;
  out.canonicalize();
  return out;
}

// (-1)^n 2^{-s/2} sqrt(C(s,n) C(s,n1)) 2F1(-n, -n1; -s; 2)
inline double kravchuk_wavefunction(int n, int n1, int s) {
  if (s < 0 || n < 0 || n > s || n1 < 0 || n1 > s)
    throw domain_error("kravchuk_wavefunction: need 0 <= n, n1 <= s");
  const Rational f = hyp2f1_terminating(n, n1, s, Rational(2));
  const double sign = (n % 2) ? -1.0 : 1.0;
  if (s <= kExactResolutionLimit) {
    // sign(F) * sqrt(F^2 C(s,n) C(s,n1) / 2^s), rounded once.
    Rational w = f * f * Rational(binomial(s, n) * binomial(s, n1));
    w /= Rational(Integer(1) << s);
    const double mag = std::sqrt(to_double(w));
    return f < 0 ? -sign * mag : sign * mag;
  }
  auto lbinom = [](int a, int b) { return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0); };
  const double log_pref = 0.5 * (lbinom(s, n) + lbinom(s, n1)) - 0.5 * s * std::log(2.0);
  return sign * std::exp(log_pref) * to_double(f);
}

// d^{j}_{m,m'}(pi/2) with j = j2/2, m = m2/2, m' = mp2/2 (all passed doubled),
// through s = j2, n = j - m, n1 = m' + j.
inline double wigner_little_d_halfpi(int j2, int m2, int mp2) {
  if (j2 < 0 || std::abs(m2) > j2 || std::abs(mp2) > j2 || (j2 - m2) % 2 != 0 || (j2 - mp2) % 2 != 0)
    throw domain_error("wigner_little_d_halfpi: inconsistent spin projections");
  return kravchuk_wavefunction((j2 - m2) / 2, (j2 + mp2) / 2, j2);
}

inline constexpr int kHermiteMaxOrder = 20;

// pi^{-1/4} (2^n n!)^{-1/2} H_n(xi) exp(-xi^2/2), by the normalized recurrence.
inline double hermite_function(int n, double xi) {
  if (n < 0 || n > kHermiteMaxOrder)
    throw domain_error("hermite_function: order must lie in [0, " + std::to_string(kHermiteMaxOrder) + "]");
  double prev = 0.0;
  double cur = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Grid point and spacing relating position index n1 at resolution s to xi.
inline double hermite_grid_xi(int n1, int s) { return (2.0 * n1 - s) / std::sqrt(2.0 * s); }
inline double hermite_grid_step(int s) { return std::sqrt(2.0 / s); }

}  // namespace dqho::specfn

#endif  // DQHO_SPECFN_HPP
