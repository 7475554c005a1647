#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/integer/mod_inverse.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "carmsq/errors.hpp"
#include "carmsq/primes.hpp"

namespace carmsq {

using BigInt = boost::multiprecision::cpp_int;
using u128 = unsigned __int128;

inline constexpr u64 kDefaultSeed = 0x9e3779b97f4a7c15ULL;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 mod) {
  if (mod == 1) return 0;
  u64 r = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

namespace detail {

inline bool strong_probable_prime(u64 n, u64 a) {
  // n odd >= 3, 2 <= a < n
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// The first twelve primes witness every composite below 3.18e23, which
// covers the whole 64-bit range, so this test is deterministic.
inline constexpr std::array<u64, 12> kMrWitnesses = {2,  3,  5,  7,  11, 13,
                                                     17, 19, 23, 29, 31, 37};

}  // namespace detail

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (u64 a : detail::kMrWitnesses)
    if (!detail::strong_probable_prime(n, a)) return false;
  return true;
}

struct PrimalityResult {
  bool probably_prime = false;
  bool proven = false;  // deterministic below 2^64, Miller-Rabin rounds above
};

namespace detail {

inline bool strong_probable_prime_big(const BigInt& n, const BigInt& a) {
  BigInt d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigInt x = powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

inline PrimalityResult is_prime_ex(const BigInt& n, u64 seed = kDefaultSeed) {
  if (n < 2) return {false, true};
  if (n <= std::numeric_limits<u64>::max())
    return {is_prime(static_cast<u64>(n)), true};
  // Above 2^64: trial division by small primes, then 64 Miller-Rabin rounds
  // with bases drawn from the given seed.
  static const std::vector<u32>& small = [] {
    static std::vector<u32> t = sieve_primes(10'000);
    return t;
  }();
  for (u32 p : small)
    if (n % p == 0) return {false, true};
  std::mt19937_64 rng(seed);
  for (int round = 0; round < 64; ++round) {
    BigInt a = 2 + BigInt(rng()) % (n - 3);
    if (!detail::strong_probable_prime_big(n, a)) return {false, true};
  }
  return {true, false};
}

inline bool is_prime(const BigInt& n) { return is_prime_ex(n).probably_prime; }

struct FactorPower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

// A positive integer together with its full prime factorization,
// factors ascending. The derived queries below are what the rest of the
// library consumes.
struct FactoredInteger {
  BigInt value = 1;
  std::vector<FactorPower> factors;

  unsigned omega() const { return static_cast<unsigned>(factors.size()); }

  bool squarefree() const {
    for (const auto& f : factors)
      if (f.exponent > 1) return false;
    return true;
  }

  int mu() const {
    if (!squarefree()) return 0;
    return (factors.size() % 2 == 0) ? 1 : -1;
  }

  BigInt phi() const {
    BigInt r = 1;
    for (const auto& f : factors) {
      r *= f.prime - 1;
      for (unsigned i = 1; i < f.exponent; ++i) r *= f.prime;
    }
    return r;
  }

  // Greatest prime factor; 1 for value == 1.
  BigInt p_plus() const { return factors.empty() ? BigInt(1) : factors.back().prime; }

  bool check() const {
    BigInt prod = 1;
    BigInt prev = 1;
    for (const auto& f : factors) {
      if (f.exponent == 0 || f.prime <= prev) return false;
      prev = f.prime;
      for (unsigned i = 0; i < f.exponent; ++i) prod *= f.prime;
    }
    return prod == value && value >= 1;
  }
};

struct FactorizeOptions {
  BigInt work_bound = BigInt(1) << 80;  // refuse inputs above this
  u64 rho_budget = 400'000'000;         // total Brent iterations allowed
  u64 seed = kDefaultSeed;
};

namespace detail {

inline const std::vector<u32>& trial_primes() {
  static const std::vector<u32> table = sieve_primes(1'000'000);
  return table;
}

// Brent's cycle variant of the rho method for 64-bit n (odd, composite,
// no factor below the trial bound). Returns a nontrivial factor or 0 when
// the budget runs out.
inline u64 pollard_brent(u64 n, u64& budget, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  while (budget > 0) {
    u64 y = rng() % (n - 2) + 1;
    u64 c = rng() % (n - 1) + 1;
    u64 m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1 && budget > 0) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        u64 lim = std::min(m, r - k);
        if (lim > budget) lim = budget;
        for (u64 i = 0; i < lim; ++i) {
          y = (mul_mod(y, y, n) + c) % n;
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        budget -= lim;
        g = std::gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (mul_mod(ys, ys, n) + c) % n;
        u64 d = x > ys ? x - ys : ys - x;
        g = std::gcd(d, n);
      }
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

inline BigInt pollard_brent_big(const BigInt& n, u64& budget, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  while (budget > 0) {
    BigInt y = BigInt(rng()) % (n - 2) + 1;
    BigInt c = BigInt(rng()) % (n - 1) + 1;
    BigInt g = 1, q = 1, x = 0, ys = 0;
    u64 m = 64, r = 1;
    while (g == 1 && budget > 0) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (y * y + c) % n;
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        u64 lim = std::min(m, r - k);
        if (lim > budget) lim = budget;
        for (u64 i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        budget -= lim;
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

inline void factor_u64_into(u64 n, std::vector<std::pair<u64, unsigned>>& out,
                            u64& budget, std::mt19937_64& rng) {
  for (u32 p : trial_primes()) {
    if (static_cast<u64>(p) * p > n) break;
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  // composite cofactor, all prime factors above the trial bound
  std::vector<u64> stack{n};
  while (!stack.empty()) {
    u64 m = stack.back();
    stack.pop_back();
    if (is_prime(m)) {
      unsigned e = 1;  // merge below
      bool merged = false;
      for (auto& f : out)
        if (f.first == m) {
          ++f.second;
          merged = true;
          break;
        }
      if (!merged) out.emplace_back(m, e);
      continue;
    }
    u64 d = pollard_brent(m, budget, rng);
    if (d == 0) throw WorkExceeded("factorize: rho budget exhausted");
    stack.push_back(d);
    stack.push_back(m / d);
  }
}

}  // namespace detail

inline FactoredInteger factorize(const BigInt& n, const FactorizeOptions& opt = {}) {
  if (n < 1) throw DomainError("factorize: argument must be >= 1");
  if (n > opt.work_bound) throw WorkExceeded("factorize: argument above work bound");

  FactoredInteger out;
  out.value = n;
  u64 budget = opt.rho_budget;
  std::mt19937_64 rng(opt.seed);

  std::vector<std::pair<u64, unsigned>> small;
  if (n <= std::numeric_limits<u64>::max()) {
    detail::factor_u64_into(static_cast<u64>(n), small, budget, rng);
    std::sort(small.begin(), small.end());
    for (auto& [p, e] : small) out.factors.push_back({BigInt(p), e});
    return out;
  }

  BigInt m = n;
  for (u32 p : detail::trial_primes()) {
    if (m % p == 0) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      small.emplace_back(p, e);
    }
  }
  std::sort(small.begin(), small.end());
  for (auto& [p, e] : small) out.factors.push_back({BigInt(p), e});

  std::vector<BigInt> stack;
  if (m > 1) stack.push_back(m);
  std::vector<std::pair<BigInt, unsigned>> large;
  while (!stack.empty()) {
    BigInt t = stack.back();
    stack.pop_back();
    if (t <= std::numeric_limits<u64>::max()) {
      std::vector<std::pair<u64, unsigned>> part;
      detail::factor_u64_into(static_cast<u64>(t), part, budget, rng);
      for (auto& [p, e] : part) large.emplace_back(BigInt(p), e);
      continue;
    }
    if (is_prime_ex(t, opt.seed).probably_prime) {
      large.emplace_back(t, 1);
      continue;
    }
    BigInt d = detail::pollard_brent_big(t, budget, rng);
    if (d == 0) throw WorkExceeded("factorize: rho budget exhausted");
    stack.push_back(d);
    stack.push_back(t / d);
  }
  // merge repeated primes from independent splits
  std::sort(large.begin(), large.end());
  for (auto& [p, e] : large) {
    if (!out.factors.empty() && out.factors.back().prime == p)
      out.factors.back().exponent += e;
    else
      out.factors.push_back({p, e});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorPower& a, const FactorPower& b) { return a.prime < b.prime; });
  return out;
}

inline FactoredInteger factorize(u64 n) { return factorize(BigInt(n)); }

inline BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& modulus) {
  if (modulus < 1) throw DomainError("mod_pow: modulus must be >= 1");
  if (exp < 0) throw DomainError("mod_pow: exponent must be >= 0");
  if (modulus == 1) return 0;
  BigInt b = base % modulus;
  if (b < 0) b += modulus;
  return powm(b, exp, modulus);
}

inline u64 mod_pow(u64 base, u64 exp, u64 modulus) {
  if (modulus < 1) throw DomainError("mod_pow: modulus must be >= 1");
  return pow_mod(base, exp, modulus);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm_list(std::span<const BigInt> values) {
  BigInt r = 1;
  for (const BigInt& v : values) {
    if (v < 1) throw DomainError("lcm_list: values must be positive");
    r = boost::multiprecision::lcm(r, v);
  }
  return r;
}

inline BigInt lcm_list(std::initializer_list<BigInt> values) {
  return lcm_list(std::span<const BigInt>(values.begin(), values.size()));
}

// Inverse of a mod m for gcd(a, m) == 1; throws otherwise.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r = boost::integer::mod_inverse(a, m);
  if (r == 0) throw DomainError("mod_inverse: arguments not coprime");
  return r;
}

}  // namespace carmsq
