#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "carmsq/arith.hpp"
#include "carmsq/parallel.hpp"
#include "carmsq/primes.hpp"
#include "carmsq/two_squares.hpp"

namespace carmsq {

// Korselt's criterion on a known factorization: composite, squarefree, and
// p - 1 divides n - 1 for every prime factor p.
inline bool korselt(const FactoredInteger& fi) {
  if (fi.value < 4) return false;
  bool composite = fi.factors.size() >= 2 ||
                   (fi.factors.size() == 1 && fi.factors[0].exponent >= 2);
  if (!composite || !fi.squarefree()) return false;
  for (const auto& f : fi.factors)
    if ((fi.value - 1) % (f.prime - 1) != 0) return false;
  return true;
}

inline bool is_carmichael(const BigInt& n, const FactorizeOptions& opt = {}) {
  if (n < 1) throw DomainError("is_carmichael: argument must be >= 1");
  if (n < 561) return false;  // smallest Carmichael number
  if (n % 2 == 0) return false;
  return korselt(factorize(n, opt));
}

inline bool is_carmichael(u64 n) { return is_carmichael(BigInt(n)); }

// A Carmichael number with the classification of each prime factor:
// special means p - 1 is a sum of two squares, strict means (p-1)/2 lies in
// the semigroup B generated by the primes === 1 (mod 4).
struct CarmichaelRecord {
  BigInt n;
  std::vector<PrimeClassification> factors;  // ascending by prime
  bool all_special = false;
  bool all_strict = false;
};

inline CarmichaelRecord make_record(const FactoredInteger& fi,
                                    const FactorizeOptions& opt = {}) {
  CarmichaelRecord rec;
  rec.n = fi.value;
  rec.all_special = true;
  rec.all_strict = true;
  for (const auto& f : fi.factors) {
    PrimeClassification pc = classify_prime(f.prime, opt);
    rec.all_special = rec.all_special && pc.special;
    rec.all_strict = rec.all_strict && pc.strict;
    rec.factors.push_back(std::move(pc));
  }
  return rec;
}

enum class CarmichaelFilter { kAll, kSpecial, kStrict };

inline constexpr u64 kEnumerateCeiling = 1'000'000'000;

namespace detail {

// One window of the segmented enumeration: finds all Carmichael n in
// [lo, hi), n odd. Korselt divisibility is checked incrementally while the
// window is factored, so dead candidates drop out early.
inline void carmichael_window(u64 lo, u64 hi, std::span<const u32> primes,
                              std::vector<u64>& scratch, std::vector<u8>& state,
                              std::vector<u64>& hits) {
  constexpr u8 kDead = 0x80;
  u64 count = (hi - lo + 1) / 2;
  state.assign(static_cast<std::size_t>(count), 0);
  factor_range(
      lo, hi, 2, primes, scratch,
      [&](u64 i, u32 p, unsigned e) {
        u8& st = state[static_cast<std::size_t>(i)];
        if (st & kDead) return;
        u64 n = lo + 2 * i;
        if (e >= 2 || (n - 1) % (p - 1) != 0)
          st = kDead;
        else
          ++st;
      },
      [&](u64 i, u64 rem) {
        u8 st = state[static_cast<std::size_t>(i)];
        if (st & kDead) return;
        u64 n = lo + 2 * i;
        if (rem == n) return;  // prime
        unsigned parts = st;
        if (rem > 1) {
          if ((n - 1) % (rem - 1) != 0) return;
          ++parts;
        }
        if (parts >= 3) hits.push_back(n);
      });
}

}  // namespace detail

// All Carmichael numbers n <= x_max, ascending, with per-factor
// classifications; filter narrows to those whose factors are all special
// or all strict. Windows are processed by a worker pool and merged in
// window order, so the result is independent of the thread count.
inline std::vector<CarmichaelRecord> enumerate_carmichael(
    u64 x_max, CarmichaelFilter filter = CarmichaelFilter::kAll,
    unsigned threads = 0, u64 ceiling = kEnumerateCeiling) {
  if (x_max > ceiling)
    throw CeilingExceeded("enumerate: x_max above configured ceiling");

  std::vector<CarmichaelRecord> out;
  if (x_max < 561) return out;

  std::vector<u32> primes = sieve_primes(static_cast<u32>(isqrt_u64(x_max)));
  constexpr u64 kWindowSpan = u64(1) << 22;  // 2^21 odd values per window
  u64 first = 561;
  u64 n_windows = (x_max - first) / kWindowSpan + 1;

  std::vector<std::vector<u64>> hits(static_cast<std::size_t>(n_windows));
  parallel_blocks(n_windows, threads, [&](u64 w) {
    u64 lo = first + w * kWindowSpan;
    u64 hi = std::min(x_max + 1, lo + kWindowSpan);
    thread_local std::vector<u64> scratch;
    thread_local std::vector<u8> state;
    detail::carmichael_window(lo, hi, primes, scratch, state,
                              hits[static_cast<std::size_t>(w)]);
  });

  for (const auto& window_hits : hits) {
    for (u64 n : window_hits) {
      CarmichaelRecord rec = make_record(factorize(n));
      if (filter == CarmichaelFilter::kSpecial && !rec.all_special) continue;
      if (filter == CarmichaelFilter::kStrict && !rec.all_strict) continue;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

// Chernick's parametric family: for k with 6k+1, 12k+1, 18k+1 all prime,
// the product is a Carmichael number with three factors.
struct ChernickHit {
  u64 k = 0;
  CarmichaelRecord record;
};

inline std::vector<ChernickHit> chernick_scan(u64 k_max) {
  if (k_max < 1) throw DomainError("chernick_scan: k_max must be >= 1");
  if (k_max > (u64(1) << 40))
    throw CeilingExceeded("chernick_scan: k_max above supported range");
  std::vector<ChernickHit> out;
  for (u64 k = 1; k <= k_max; ++k) {
    u64 p = 6 * k + 1, q = 12 * k + 1, r = 18 * k + 1;
    if (!is_prime(p) || !is_prime(q) || !is_prime(r)) continue;
    FactoredInteger fi;
    fi.value = BigInt(p) * q * r;
    fi.factors = {{BigInt(p), 1}, {BigInt(q), 1}, {BigInt(r), 1}};
    out.push_back({k, make_record(fi)});
  }
  return out;
}

}  // namespace carmsq
