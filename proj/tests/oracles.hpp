// Independent reference implementations used to check the library.
// Everything here is deliberately naive: trial division, exhaustive search,
// adaptive quadrature. Nothing includes library internals beyond the public
// headers needed for the shared integer types.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "carmsq/arith.hpp"

namespace oracle {

using carmsq::u64;

inline bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::map<u64, unsigned> factorize_trial(u64 n) {
  std::map<u64, unsigned> f;
  for (u64 d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1) ++f[n];
  return f;
}

// Scans every b, collects all representations n = a^2 + b^2 with a >= b,
// and returns the one with minimal a (the canonical witness), or nothing.
inline std::optional<std::pair<u64, u64>> two_squares_search(u64 n) {
  std::optional<std::pair<u64, u64>> best;
  for (u64 b = 0; 2 * b * b <= n; ++b) {
    u64 rest = n - b * b;
    u64 a = static_cast<u64>(std::sqrt(static_cast<double>(rest)));
    while (a * a > rest) --a;
    while ((a + 1) * (a + 1) <= rest) ++a;
    if (a * a == rest && a >= b && (!best || a < best->first))
      best = std::make_pair(a, b);
  }
  return best;
}

// Membership in the multiplicative semigroup generated by primes === 1 (mod 4),
// with 1 included: every prime factor must be === 1 (mod 4).
inline bool in_B_trial(u64 m) {
  if (m == 0) return false;
  for (auto& [p, e] : factorize_trial(m))
    if (p % 4 != 1) return false;
  return true;  // m == 1 has no factors and passes
}

// Carmichael via the Fermat characterization: n composite and
// a^n === a (mod n) for every a in [0, n).
inline bool is_carmichael_fermat(u64 n) {
  if (n < 4 || is_prime_trial(n)) return false;
  for (u64 a = 0; a < n; ++a)
    if (carmsq::mod_pow(a, n, n) != a % n) return false;
  return true;
}

// Adaptive Simpson quadrature, good to ~eps on smooth integrands.
template <class F>
long double simpson_rec(F&& fn, long double a, long double b, long double fa,
                        long double fm, long double fb, long double whole,
                        long double eps, int depth) {
  long double m = (a + b) / 2;
  long double lm = (a + m) / 2, rm = (m + b) / 2;
  long double flm = fn(lm), frm = fn(rm);
  long double left = (m - a) / 6 * (fa + 4 * flm + fm);
  long double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15;
  return simpson_rec(fn, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson_rec(fn, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

template <class F>
long double integrate(F&& fn, long double a, long double b,
                      long double eps = 1e-13L) {
  long double fa = fn(a), fb = fn(b), fm = fn((a + b) / 2);
  long double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(fn, a, b, fa, fm, fb, whole, eps, 40);
}

// int_1^s dt / sqrt(t (t - 1)) evaluated by quadrature after t = 1 + u^2,
// which removes the endpoint singularity: the integrand becomes
// 2 / sqrt(1 + u^2) on [0, sqrt(s - 1)].
inline long double sqrt_hyperbola_integral(long double s) {
  if (s <= 1) return 0;
  long double ub = std::sqrt(s - 1);
  return integrate([](long double u) { return 2 / std::sqrt(1 + u * u); },
                   0.0L, ub);
}

}  // namespace oracle
