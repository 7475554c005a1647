#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "carmsq/parallel.hpp"

namespace carmsq {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

// All primes <= limit, ascending. Odd-only bit sieve; fine up to ~10^8.
inline std::vector<u32> sieve_primes(u32 limit) {
  std::vector<u32> out;
  if (limit < 2) return out;
  out.push_back(2);
  if (limit < 3) return out;
  u64 half = (static_cast<u64>(limit) - 1) / 2;  // odds 3,5,... <= limit
  std::vector<u64> bits((half + 63) / 64, 0);
  for (u64 i = 0;; ++i) {
    u64 p = 2 * i + 3;
    if (p * p > limit) break;
    if (bits[i >> 6] >> (i & 63) & 1) continue;
    for (u64 j = (p * p - 3) / 2; j < half; j += p)
      bits[j >> 6] |= u64(1) << (j & 63);
  }
  for (u64 i = 0; i < half; ++i)
    if (!(bits[i >> 6] >> (i & 63) & 1)) out.push_back(static_cast<u32>(2 * i + 3));
  return out;
}

// Calls fn(p) for every prime p in [lo, hi), ascending. Segmented, so the
// range may reach 10^9 and beyond without a big allocation.
template <class Fn>
inline void for_each_prime(u64 lo, u64 hi, Fn&& fn) {
  if (hi <= lo) return;
  u64 last = hi - 1;
  if (last < 2) return;
  if (lo <= 2) fn(u64(2));
  if (last < 3) return;
  u64 start = std::max<u64>(lo, 3) | 1;
  std::vector<u32> base = sieve_primes(static_cast<u32>(isqrt_u64(last)));

  constexpr u64 kSegOdds = u64(1) << 20;
  std::vector<u64> bits(kSegOdds / 64);
  for (u64 seg_lo = start; seg_lo <= last; seg_lo += 2 * kSegOdds) {
    u64 seg_last = std::min(last, seg_lo + 2 * (kSegOdds - 1));
    u64 n_odds = (seg_last - seg_lo) / 2 + 1;
    std::fill(bits.begin(), bits.begin() + static_cast<long>((n_odds + 63) / 64), 0);
    for (u32 p : base) {
      if (p == 2) continue;
      u64 p2 = static_cast<u64>(p) * p;
      if (p2 > seg_last) break;
      u64 first = std::max(p2, (seg_lo + p - 1) / p * p);
      if ((first & 1) == 0) first += p;
      for (u64 m = first; m <= seg_last; m += 2 * static_cast<u64>(p)) {
        u64 idx = (m - seg_lo) / 2;
        bits[idx >> 6] |= u64(1) << (idx & 63);
      }
    }
    for (u64 i = 0; i < n_odds; ++i)
      if (!(bits[i >> 6] >> (i & 63) & 1)) fn(seg_lo + 2 * i);
  }
}

// Deterministic parallel reduction over the primes in [lo, hi). The range is
// cut into fixed spans, each span reduced independently via per_prime, and
// the partials combined in span order, so the result does not depend on the
// thread count.
template <class T, class PerPrime, class Combine>
inline T reduce_over_primes(u64 lo, u64 hi, T init, unsigned threads,
                            PerPrime per_prime, Combine combine,
                            u64 span = u64(1) << 24) {
  if (hi <= lo) return init;
  u64 n_blocks = (hi - lo + span - 1) / span;
  std::vector<T> partial(static_cast<std::size_t>(n_blocks), init);
  parallel_blocks(n_blocks, threads, [&](u64 b) {
    u64 blo = lo + b * span;
    u64 bhi = std::min(hi, blo + span);
    T acc = init;
    for_each_prime(blo, bhi, [&](u64 p) { per_prime(acc, p); });
    partial[static_cast<std::size_t>(b)] = acc;
  });
  T total = init;
  for (const T& part : partial) combine(total, part);
  return total;
}

namespace detail {

// Solves stride * i === x (mod p) for stride in {1, 2, 4}, p odd prime or
// p not dividing stride. Repeated halving: x/2 mod p.
inline u64 solve_stride_index(u64 x, u32 stride, u32 p) {
  u64 i = x % p;
  u32 s = stride;
  while (s % 2 == 0 && p % 2 == 1) {
    i = (i % 2 == 0) ? i / 2 : (i + p) / 2;
    s /= 2;
  }
  return i;
}

}  // namespace detail

// Fully factors every n = lo + i*stride in [lo, hi) over the given prime
// table. For each such n, on_factor(i, p, e) fires once per table prime
// p^e || n (e >= 1), and on_tail(i, rem) fires once at the end with the
// cofactor after all table primes are removed. If the table covers every
// prime <= sqrt(hi-1), rem is either 1, a prime, or n itself (n prime).
// stride must be 1, 2, or 4. scratch is reused storage.
template <class OnFactor, class OnTail>
inline void factor_range(u64 lo, u64 hi, u32 stride,
                         std::span<const u32> primes,
                         std::vector<u64>& scratch,
                         OnFactor&& on_factor, OnTail&& on_tail) {
  if (hi <= lo) return;
  u64 count = (hi - lo + stride - 1) / stride;
  scratch.resize(static_cast<std::size_t>(count));
  for (u64 i = 0; i < count; ++i) scratch[static_cast<std::size_t>(i)] = lo + i * stride;

  for (u32 p : primes) {
    u64 first;
    if (stride % p == 0) {
      if (lo % p != 0) continue;  // progression misses p entirely
      first = 0;                  // every element divisible
    } else {
      u64 x = (p - lo % p) % p;
      first = detail::solve_stride_index(x, stride, p);
    }
    if (first >= count) continue;
    u64 skip_idx = std::numeric_limits<u64>::max();
    if (p >= lo && p < hi && (p - lo) % stride == 0) skip_idx = (p - lo) / stride;
    u64 step = (stride % p == 0) ? 1 : p;
    for (u64 i = first; i < count; i += step) {
      if (i == skip_idx) continue;  // leave n == p intact so primes keep rem == n
      u64& r = scratch[static_cast<std::size_t>(i)];
      unsigned e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      if (e > 0) on_factor(i, p, e);
    }
  }
  for (u64 i = 0; i < count; ++i) on_tail(i, scratch[static_cast<std::size_t>(i)]);
}

}  // namespace carmsq
