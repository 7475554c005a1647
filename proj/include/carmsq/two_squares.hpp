#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "carmsq/arith.hpp"
#include "carmsq/errors.hpp"

namespace carmsq {

// Witness pair for n = a^2 + b^2, normalized to a >= b >= 0. Among all
// such pairs for a given n, the canonical one has minimal a.
struct TwoSquaresWitness {
  BigInt a;
  BigInt b;

  friend bool operator==(const TwoSquaresWitness&, const TwoSquaresWitness&) = default;
};

struct TwoSquaresResult {
  bool representable = false;
  std::optional<TwoSquaresWitness> witness;
};

inline constexpr u64 kTwoSquaresBruteThreshold = 1'000'000;

namespace detail {

inline BigInt isqrt_big(const BigInt& n) { return boost::multiprecision::sqrt(n); }

// Direct scan: the canonical witness has a in [ceil(sqrt(n/2)), sqrt(n)],
// and the first a in that range with n - a^2 a perfect square is minimal.
inline TwoSquaresResult two_squares_brute(u64 n) {
  if (n == 0) return {true, TwoSquaresWitness{0, 0}};
  u64 a = isqrt_u64(n / 2);
  while (2 * a * a < n) ++a;
  for (; a * a <= n; ++a) {
    u64 b2 = n - a * a;
    u64 b = isqrt_u64(b2);
    if (b * b == b2) return {true, TwoSquaresWitness{a, b}};
  }
  return {false, std::nullopt};
}

struct Gaussian {
  BigInt re;
  BigInt im;
};

inline Gaussian gauss_mul(const Gaussian& x, const Gaussian& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

// Root of x^2 = -1 mod p for prime p === 1 (mod 4): take the smallest
// quadratic nonresidue q, then q^((p-1)/4).
inline BigInt sqrt_minus_one(const BigInt& p) {
  BigInt e = (p - 1) / 2;
  for (BigInt q = 2;; ++q) {
    if (powm(q, e, p) == p - 1) return powm(q, (p - 1) / 4, p);
  }
}

// Cornacchia descent: Euclid on (p, r) with r^2 === -1 (mod p) until the
// remainder drops below sqrt(p); that remainder and sqrt(p - b^2) split p.
inline Gaussian split_prime(const BigInt& p) {
  if (p == 2) return {1, 1};
  BigInt a = p;
  BigInt b = sqrt_minus_one(p);
  while (b * b > p) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  BigInt c = isqrt_big(p - b * b);
  return {b, c};
}

inline TwoSquaresWitness normalize_witness(const Gaussian& z) {
  BigInt a = abs(z.re);
  BigInt b = abs(z.im);
  if (a < b) swap(a, b);
  return {a, b};
}

// Composition route: build every representation from the Gaussian
// factorizations of the prime powers, taking all conjugation choices for
// primes === 1 (mod 4), and keep the canonical (minimal-a) witness.
inline TwoSquaresResult two_squares_composed(const FactoredInteger& fi) {
  BigInt real_part = 1;  // contribution of 2-free even powers of p === 3 (mod 4)
  std::vector<std::pair<Gaussian, unsigned>> split;  // (prime splitting, exponent)
  unsigned two_exp = 0;

  for (const auto& f : fi.factors) {
    if (f.prime == 2) {
      two_exp = f.exponent;
    } else if (f.prime % 4 == 3) {
      if (f.exponent % 2 != 0) return {false, std::nullopt};
      for (unsigned i = 0; i < f.exponent / 2; ++i) real_part *= f.prime;
    } else {
      split.emplace_back(split_prime(f.prime), f.exponent);
    }
  }

  u64 combos = 1;
  for (const auto& [z, e] : split) {
    combos *= e + 1;
    if (combos > (u64(1) << 20))
      throw WorkExceeded("two_squares: too many conjugation combinations");
  }

  Gaussian base{real_part, 0};
  for (unsigned i = 0; i < two_exp; ++i) base = gauss_mul(base, {1, 1});

  std::optional<TwoSquaresWitness> best;
  auto consider = [&](const Gaussian& z) {
    TwoSquaresWitness w = normalize_witness(z);
    if (!best || w.a < best->a) best = w;
  };

  // DFS over the conjugation choice j in 0..e for each split prime.
  std::vector<Gaussian> stack{base};
  std::function<void(std::size_t, const Gaussian&)> rec =
      [&](std::size_t idx, const Gaussian& acc) {
        if (idx == split.size()) {
          consider(acc);
          return;
        }
        const auto& [z, e] = split[idx];
        Gaussian conj{z.re, -z.im};
        Gaussian left = acc;
        for (unsigned j = 0; j <= e; ++j) {
          // left = acc * z^j so far; multiply the rest by conj^(e-j)
          Gaussian full = left;
          for (unsigned t = j; t < e; ++t) full = gauss_mul(full, conj);
          rec(idx + 1, full);
          if (j < e) left = gauss_mul(left, z);
        }
      };
  rec(0, base);

  return {true, best};
}

}  // namespace detail

// Decides whether n is a sum of two squares and, if so, produces the
// canonical witness. Small n go through the direct scan; larger n through
// factorization and Gaussian composition. The two routes agree (tested).
inline TwoSquaresResult classify_two_squares(const BigInt& n,
                                             const FactorizeOptions& opt = {}) {
  if (n < 0) throw DomainError("classify_two_squares: argument must be >= 0");
  if (n == 0) return {true, TwoSquaresWitness{0, 0}};
  if (n <= kTwoSquaresBruteThreshold)
    return detail::two_squares_brute(static_cast<u64>(n));
  return detail::two_squares_composed(factorize(n, opt));
}

inline TwoSquaresResult classify_two_squares(u64 n) {
  return classify_two_squares(BigInt(n));
}

// Membership in the multiplicative semigroup generated by the primes
// === 1 (mod 4), together with 1. Equivalently: every prime factor of m
// is === 1 (mod 4).
inline bool in_B(const BigInt& m, const FactorizeOptions& opt = {}) {
  if (m < 1) throw DomainError("in_B: argument must be >= 1");
  if (m == 1) return true;
  if (m % 2 == 0) return false;
  if (m % 4 == 3) return false;  // some prime factor is === 3 (mod 4)
  BigInt rest = m;
  for (u32 p : detail::trial_primes()) {
    if (BigInt(p) * p > rest) break;
    if (rest % p == 0) {
      if (p % 4 != 1) return false;
      while (rest % p == 0) rest /= p;
      if (rest % 4 == 3) return false;
    }
  }
  if (rest == 1) return true;
  if (is_prime(rest)) return rest % 4 == 1;
  FactoredInteger fi = factorize(rest, opt);
  for (const auto& f : fi.factors)
    if (f.prime % 4 != 1) return false;
  return true;
}

inline bool in_B(u64 m) { return in_B(BigInt(m)); }

// Classification of a prime p by the shape of p - 1:
//   special: p - 1 is a sum of two squares;
//   strict:  p odd and (p - 1) / 2 lies in the semigroup B.
// Every strict prime is special and satisfies p === 3 (mod 8) (tested).
struct PrimeClassification {
  BigInt p;
  bool special = false;
  std::optional<TwoSquaresWitness> witness;  // for p - 1 when special
  bool strict = false;
};

inline PrimeClassification classify_prime(const BigInt& p,
                                          const FactorizeOptions& opt = {}) {
  if (p < 2 || !is_prime(p)) throw NotPrime("classify_prime: argument is not prime");
  PrimeClassification out;
  out.p = p;
  TwoSquaresResult ts = classify_two_squares(p - 1, opt);
  out.special = ts.representable;
  out.witness = ts.witness;
  out.strict = (p > 2) && in_B((p - 1) / 2, opt);
  return out;
}

inline PrimeClassification classify_prime(u64 p) { return classify_prime(BigInt(p)); }

}  // namespace carmsq
