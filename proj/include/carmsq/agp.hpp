#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/functional/hash.hpp>

#include "carmsq/arith.hpp"
#include "carmsq/carmichael.hpp"
#include "carmsq/parallel.hpp"
#include "carmsq/primes.hpp"
#include "carmsq/two_squares.hpp"

namespace carmsq {

// ---------------------------------------------------------------------------
// Counting pi(x, y) = #{p <= x : p === 1 (mod 4), P+(p-1) <= y}.

namespace detail {

// One window of the smooth-shifted-prime count. The factoring span starts
// one below the value span so p - 1 is always inside it. Bit 31 of each
// slot flags "value is prime", low bits hold the largest table factor.
inline u64 pi_xy_window(u64 lo, u64 hi, u64 y, std::span<const u32> primes,
                        std::vector<u64>& scratch, std::vector<u32>& maxf) {
  u64 flo = lo - 1;  // lo >= 5
  u64 count = hi - flo;
  maxf.assign(static_cast<std::size_t>(count), 1);
  factor_range(
      flo, hi, 1, primes, scratch,
      [&](u64 i, u32 p, unsigned) {
        u32& m = maxf[static_cast<std::size_t>(i)];
        if (p > (m & 0x7fffffffu)) m = p;
      },
      [&](u64 i, u64 rem) {
        u32& m = maxf[static_cast<std::size_t>(i)];
        if (rem > (m & 0x7fffffffu) && rem != flo + i) m = static_cast<u32>(rem);
        if (rem == flo + i) m |= 0x80000000u;  // prime
      });
  u64 c = 0;
  for (u64 n = lo; n < hi; ++n) {
    std::size_t i = static_cast<std::size_t>(n - flo);
    if ((maxf[i] & 0x80000000u) && n % 4 == 1 &&
        (maxf[i - 1] & 0x7fffffffu) <= y)
      ++c;
  }
  return c;
}

}  // namespace detail

inline constexpr u64 kPiXyCeiling = 1'000'000'000;

inline u64 pi_xy(u64 x, u64 y, unsigned threads = 0) {
  if (x > kPiXyCeiling) throw WorkExceeded("pi_xy: x above supported range");
  if (x < 5) return 0;
  std::vector<u32> primes = sieve_primes(static_cast<u32>(isqrt_u64(x)));
  constexpr u64 kSpan = u64(1) << 22;
  u64 n_windows = (x - 5) / kSpan + 1;
  std::vector<u64> counts(static_cast<std::size_t>(n_windows), 0);
  parallel_blocks(n_windows, threads, [&](u64 w) {
    u64 lo = 5 + w * kSpan;
    u64 hi = std::min(x + 1, lo + kSpan);
    thread_local std::vector<u64> scratch;
    thread_local std::vector<u32> maxf;
    counts[static_cast<std::size_t>(w)] =
        detail::pi_xy_window(lo, hi, y, primes, scratch, maxf);
  });
  u64 total = 0;
  for (u64 c : counts) total += c;
  return total;
}

inline u64 prime_count(u64 x, unsigned threads = 0) {
  if (x < 2) return 0;
  return reduce_over_primes<u64>(
      2, x + 1, u64(0), threads, [](u64& acc, u64) { ++acc; },
      [](u64& acc, u64 part) { acc += part; });
}

struct DensityReport {
  u64 x = 0;
  long double E = 0;
  u64 y = 0;  // floor(x^{1-E})
  u64 smooth_count = 0;
  u64 prime_total = 0;
  long double ratio = 0;
};

inline DensityReport density_check(u64 x, long double E, unsigned threads = 0) {
  if (!(E > 0.0L) || !(E < 1.0L))
    throw DomainError("density_check: E must lie in (0, 1)");
  if (x > kPiXyCeiling) throw WorkExceeded("density_check: x above supported range");
  DensityReport r;
  r.x = x;
  r.E = E;
  long double yr = std::pow(static_cast<long double>(x), 1.0L - E);
  r.y = yr >= static_cast<long double>(x) ? x : static_cast<u64>(yr);
  r.smooth_count = pi_xy(x, r.y, threads);
  r.prime_total = prime_count(x, threads);
  r.ratio = r.prime_total == 0
                ? 0.0L
                : static_cast<long double>(r.smooth_count) /
                      static_cast<long double>(r.prime_total);
  return r;
}

// ---------------------------------------------------------------------------
// Pipeline configuration and run state.

struct AgpConfig {
  long double E = 0.45L;
  long double B_param = 0.1L;
  long double epsilon = 0.04L;  // must stay below E * B_param
  u64 y = 20;
  long double A_const = 50.0L;
  long double A_prime_const = 1.0L;
  u64 seed = kDefaultSeed;
  unsigned threads = 0;

  long double theta() const { return 1.0L / (1.0L - E); }
  long double delta() const { return epsilon * theta() / (4.0L * B_param); }
  // x = exp(y^{1+delta}) overflows every native type well before the
  // shipped presets, so x is carried in log space throughout.
  long double log_x() const {
    return std::pow(static_cast<long double>(y), 1.0L + delta());
  }
  long double loglog_x() const {
    return (1.0L + delta()) * std::log(static_cast<long double>(y));
  }
};

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  long double lhs = 0;
  long double rhs = 0;
  long double margin = 0;  // rhs - lhs
  std::string note;
};

struct AgpDiagnostics {
  u64 q_count = 0;
  u64 divisor_pool = 0;        // divisors of L eligible for the k-search
  u64 candidates_scanned = 0;  // k values passing the membership filters
  u64 subset_nodes = 0;
  bool node_cap_hit = false;
  bool assemble_skipped = false;
  long double lemma_lhs = 0;  // 4A (log x)^{3/2} * |prime_set|
  long double lemma_rhs = 0;  // #{d | L : d <= x^B}
  std::vector<std::string> notes;
};

struct AgpRun {
  AgpConfig config;
  std::vector<u64> Q;
  FactoredInteger L;
  std::vector<HypothesisCheck> hypotheses;
  bool k_found = false;
  u64 k = 0;
  std::vector<std::pair<u64, u64>> prime_set;  // (d, p = 2dk + 1)
  std::vector<CarmichaelRecord> assembled;
  AgpDiagnostics diag;
};

namespace detail {

// floor(e^v) clamped into u64; "no bound" once e^v exceeds the type.
inline u64 saturating_exp_u64(long double v) {
  if (v >= 43.6L) return std::numeric_limits<u64>::max();
  return static_cast<u64>(std::exp(v));
}

inline u64 largest_prime_factor_u64(u64 n) {
  u64 best = 1;
  for (u64 p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      best = std::max(best, p);
      n /= p;
    }
  return std::max(best, n > 1 ? n : 1);
}

// Divisors d of L (squarefree, prime list qs ascending) with d <= bound,
// ascending. DFS; the bound keeps the pool desk-sized.
inline std::vector<u64> divisors_up_to(const std::vector<u64>& qs, u64 bound) {
  std::vector<u64> out{1};
  std::function<void(std::size_t, u64)> rec = [&](std::size_t i, u64 cur) {
    for (std::size_t j = i; j < qs.size(); ++j) {
      if (qs[j] > bound / cur) break;  // ascending, later ones only larger
      u64 next = cur * qs[j];
      out.push_back(next);
      rec(j + 1, next);
    }
  };
  rec(0, 1);
  std::sort(out.begin(), out.end());
  return out;
}

// Count of divisors of L up to a log-space bound (sum of log q <= log_bound).
inline u64 count_divisors_log_bound(const std::vector<long double>& logqs,
                                    long double log_bound) {
  u64 count = 0;
  std::function<void(std::size_t, long double)> rec = [&](std::size_t i,
                                                          long double left) {
    ++count;
    for (std::size_t j = i; j < logqs.size(); ++j) {
      if (logqs[j] > left) break;
      rec(j + 1, left - logqs[j]);
    }
  };
  rec(0, log_bound);
  return count;
}

// Maximum of sum_{q | d} 1/q over divisors d of L with log d <= log_bound.
inline long double worst_divisor_reciprocal_sum(const std::vector<u64>& qs,
                                                long double log_bound) {
  std::vector<long double> logqs;
  logqs.reserve(qs.size());
  for (u64 q : qs) logqs.push_back(std::log(static_cast<long double>(q)));
  long double best = 0;
  std::function<void(std::size_t, long double, long double)> rec =
      [&](std::size_t i, long double left, long double sum) {
        best = std::max(best, sum);
        for (std::size_t j = i; j < qs.size(); ++j) {
          if (logqs[j] > left) break;
          rec(j + 1, left - logqs[j], sum + 1.0L / static_cast<long double>(qs[j]));
        }
      };
  rec(0, log_bound, 0.0L);
  return best;
}

}  // namespace detail

// Builds Q, L and evaluates the five hypotheses with numerical margins.
// ell := 1 throughout (no exceptional modulus is known), which makes H3
// hold vacuously; the note field records this. The |Q| <= 64 guidance is
// the caller's: larger runs work but the subset stage will be skipped.
inline AgpRun build_run(const AgpConfig& cfg) {
  if (!(cfg.E > 0.0L) || !(cfg.E < 1.0L))
    throw DomainError("build_run: E must lie in (0, 1)");
  if (!(cfg.B_param > 0.0L) || !(cfg.B_param < 1.0L))
    throw DomainError("build_run: B_param must lie in (0, 1)");
  if (!(cfg.epsilon > 0.0L) || !(cfg.epsilon < cfg.E * cfg.B_param))
    throw DomainError("build_run: epsilon must lie in (0, E*B_param)");
  if (cfg.y < 2) throw DomainError("build_run: y must be >= 2");
  if (!(cfg.A_const > 0.0L) || !(cfg.A_prime_const > 0.0L))
    throw DomainError("build_run: A and A' must be positive");

  AgpRun run;
  run.config = cfg;

  long double theta = cfg.theta();
  long double y_theta = std::pow(static_cast<long double>(cfg.y), theta);
  if (y_theta > 1e8L) throw WorkExceeded("build_run: y^theta above desk range");
  long double q_lo = y_theta / std::log(static_cast<long double>(cfg.y));

  u64 q_hi_int = static_cast<u64>(y_theta);
  for (u32 q : sieve_primes(static_cast<u32>(q_hi_int))) {
    if (static_cast<long double>(q) <= q_lo || q > q_hi_int) continue;
    if (q % 4 != 1) continue;
    if (detail::largest_prime_factor_u64(q - 1) > cfg.y) continue;
    run.Q.push_back(q);
  }
  if (run.Q.empty()) throw ConfigInfeasible("build_run: Q is empty");
  run.diag.q_count = run.Q.size();

  run.L.value = 1;
  for (u64 q : run.Q) {
    run.L.value *= q;
    run.L.factors.push_back({BigInt(q), 1});
  }

  long double log_x = cfg.log_x();
  long double loglog_x = cfg.loglog_x();
  long double log_xB = cfg.B_param * log_x;

  // H1: L in B and squarefree.
  {
    bool in_b = true;
    for (const auto& f : run.L.factors)
      if (f.prime % 4 != 1) in_b = false;
    bool pass = in_b && run.L.squarefree();
    run.hypotheses.push_back({"H1", pass, pass ? 1.0L : 0.0L, 1.0L, 0.0L,
                              "L in B and |mu(L)| = 1"});
  }
  // H2: P+(L) <= x^{B / loglog x}, compared in log space.
  {
    long double lhs = std::log(static_cast<long double>(run.Q.back()));
    long double rhs = cfg.B_param * log_x / loglog_x;
    run.hypotheses.push_back({"H2", lhs <= rhs, lhs, rhs, rhs - lhs,
                              "log P+(L) vs (B log x)/loglog x"});
  }
  // H3: gcd(L, ell(x^B)) = 1 with ell := 1.
  {
    run.hypotheses.push_back(
        {"H3", true, 1.0L, 1.0L, 0.0L, "ell := 1, so the gcd condition is vacuous"});
  }
  // H4: 16 A sqrt(log x) sum_{q|d} 1/q <= 1 - B for the worst d | L, d <= x^B.
  {
    long double worst = detail::worst_divisor_reciprocal_sum(run.Q, log_xB);
    long double lhs = 16.0L * cfg.A_const * std::sqrt(log_x) * worst;
    long double rhs = 1.0L - cfg.B_param;
    run.hypotheses.push_back({"H4", lhs <= rhs, lhs, rhs, rhs - lhs,
                              "worst divisor reciprocal sum over d <= x^B"});
  }
  // H5: 24 A A' sum_{q|L} 1/q <= 5(1 - B).
  {
    long double sum = 0;
    for (u64 q : run.Q) sum += 1.0L / static_cast<long double>(q);
    long double lhs = 24.0L * cfg.A_const * cfg.A_prime_const * sum;
    long double rhs = 5.0L * (1.0L - cfg.B_param);
    run.hypotheses.push_back(
        {"H5", lhs <= rhs, lhs, rhs, rhs - lhs, "reciprocal sum over all q | L"});
  }
  return run;
}

// The k-search: smallest k <= k_max with k in B and (k, L) = 1 maximizing
// the number of divisors d of L (d <= d_bound and d <= x^B) for which
// 2dk + 1 is prime. The winning k's (d, p) pairs populate prime_set.
inline void find_k(AgpRun& run, u64 k_max, u64 d_bound) {
  if (run.Q.empty()) throw ConfigInfeasible("find_k: run has empty Q");
  if (k_max < 1) throw DomainError("find_k: k_max must be >= 1");

  long double log_x = run.config.log_x();
  u64 xB = detail::saturating_exp_u64(run.config.B_param * log_x);
  u64 x_cap = detail::saturating_exp_u64(log_x);
  u64 k_cap = detail::saturating_exp_u64((1.0L - run.config.B_param) * log_x);
  u64 k_limit = std::min(k_max, k_cap);

  std::vector<u64> pool = detail::divisors_up_to(run.Q, std::min(d_bound, xB));
  run.diag.divisor_pool = pool.size();

  auto yield_of = [&](u64 k) -> u64 {
    u64 c = 0;
    for (u64 d : pool) {
      if (d > (x_cap - 1) / (2 * k)) break;  // keep 2dk + 1 <= x
      if (is_prime(2 * d * k + 1)) ++c;
    }
    return c;
  };

  struct Best {
    u64 yield = 0;
    u64 k = 0;  // 0 = none in block
    u64 scanned = 0;
  };
  constexpr u64 kBlock = 512;
  u64 n_blocks = (k_limit + kBlock - 1) / kBlock;
  std::vector<Best> partial(static_cast<std::size_t>(n_blocks));
  parallel_blocks(n_blocks, run.config.threads, [&](u64 b) {
    Best best;
    u64 klo = b * kBlock + 1;
    u64 khi = std::min(k_limit, klo + kBlock - 1);
    for (u64 k = klo; k <= khi; ++k) {
      if (!in_B(k)) continue;
      if (gcd(BigInt(k), run.L.value) != 1) continue;
      ++best.scanned;
      u64 c = yield_of(k);
      if (best.k == 0 || c > best.yield) {
        best.yield = c;
        best.k = k;
      }
    }
    partial[static_cast<std::size_t>(b)] = best;
  });

  Best global;
  for (const Best& b : partial) {
    global.scanned += b.scanned;
    if (b.k != 0 && (global.k == 0 || b.yield > global.yield)) {
      global.yield = b.yield;
      global.k = b.k;  // blocks ascending, so ties keep the smaller k
    }
  }
  run.diag.candidates_scanned = global.scanned;
  if (global.k == 0) throw NoCandidate("find_k: no admissible k below k_max");

  run.k = global.k;
  run.k_found = true;
  run.prime_set.clear();
  for (u64 d : pool) {
    if (d > (x_cap - 1) / (2 * run.k)) break;
    u64 p = 2 * d * run.k + 1;
    if (is_prime(p)) run.prime_set.emplace_back(d, p);
  }

  std::vector<long double> logqs;
  for (u64 q : run.Q) logqs.push_back(std::log(static_cast<long double>(q)));
  run.diag.lemma_lhs = 4.0L * run.config.A_const * std::pow(log_x, 1.5L) *
                       static_cast<long double>(run.prime_set.size());
  run.diag.lemma_rhs = static_cast<long double>(
      detail::count_divisors_log_bound(logqs, run.config.B_param * log_x));
}

// ---------------------------------------------------------------------------
// Subset products: all subsets of `primes` of size in [min_size, max_size]
// whose product is === 1 (mod M). Exposed separately so the brute-force
// route can be compared against the meet-in-the-middle route directly.

struct SubsetSearchResult {
  std::vector<u64> masks;  // bit i set = primes[i] in the subset
  u64 nodes = 0;
  bool node_cap_hit = false;
};

inline SubsetSearchResult subset_products_one_mod(std::span<const BigInt> primes,
                                                  const BigInt& M,
                                                  unsigned min_size,
                                                  unsigned max_size, u64 node_cap,
                                                  bool use_mitm) {
  if (primes.size() > 40)
    throw DomainError("subset_products_one_mod: more than 40 primes");
  if (M < 2) throw DomainError("subset_products_one_mod: modulus must be >= 2");
  SubsetSearchResult res;

  // A prime sharing a factor with M can never be in a qualifying subset
  // (the product would share that factor and could not be 1 mod M).
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (gcd(primes[i], M) == 1) idx.push_back(i);

  auto over_cap = [&]() {
    if (res.nodes >= node_cap) {
      res.node_cap_hit = true;
      return true;
    }
    return false;
  };

  if (!use_mitm) {
    // Exhaustive DFS over the usable primes in index order; each subset is
    // recorded exactly once, at the leaf where every choice has been made.
    std::function<void(std::size_t, BigInt, u64, unsigned)> rec =
        [&](std::size_t i, BigInt residue, u64 mask, unsigned size) {
          ++res.nodes;
          if (over_cap()) return;
          if (i == idx.size()) {
            if (size >= min_size && size <= max_size && residue == 1 && mask != 0)
              res.masks.push_back(mask);
            return;
          }
          rec(i + 1, residue, mask, size);
          if (size < max_size)
            rec(i + 1, residue * primes[idx[i]] % M, mask | (u64(1) << idx[i]),
                size + 1);
        };
    rec(0, BigInt(1), 0, 0);
    std::sort(res.masks.begin(), res.masks.end());
    return res;
  }

  // Meet in the middle: residues of the first half are hashed; each
  // second-half residue r matches the bucket of r^{-1} mod M.
  std::size_t half = idx.size() / 2;
  struct Entry {
    u64 mask;
    unsigned size;
  };
  std::unordered_map<BigInt, std::vector<Entry>, boost::hash<BigInt>> table;

  std::function<void(std::size_t, BigInt, u64, unsigned)> fill =
      [&](std::size_t i, BigInt residue, u64 mask, unsigned size) {
        ++res.nodes;
        if (over_cap()) return;
        if (i == half) {
          table[residue].push_back({mask, size});
          return;
        }
        fill(i + 1, residue, mask, size);
        if (size < max_size)
          fill(i + 1, residue * primes[idx[i]] % M, mask | (u64(1) << idx[i]),
               size + 1);
      };
  fill(0, BigInt(1), 0, 0);

  std::function<void(std::size_t, BigInt, u64, unsigned)> probe =
      [&](std::size_t i, BigInt residue, u64 mask, unsigned size) {
        ++res.nodes;
        if (over_cap()) return;
        if (i == idx.size()) {
          BigInt want = mod_inverse(residue, M);
          auto it = table.find(want);
          if (it != table.end()) {
            for (const Entry& e : it->second) {
              unsigned total = e.size + size;
              u64 m = e.mask | mask;
              if (total >= min_size && total <= max_size && m != 0) {
                // residues multiply to 1 by construction of the lookup
                res.masks.push_back(m);
              }
            }
          }
          return;
        }
        probe(i + 1, residue, mask, size);
        if (size < max_size)
          probe(i + 1, residue * primes[idx[i]] % M, mask | (u64(1) << idx[i]),
                size + 1);
      };
  probe(half, BigInt(1), 0, 0);

  std::sort(res.masks.begin(), res.masks.end());
  return res;
}

// Completes the construction: subsets S of prime_set with
// 3 <= |S| <= subset_size_cap and prod(S) === 1 (mod 2kL). Every hit is a
// Carmichael number: each p - 1 = 2dk divides 2kL, which divides n - 1.
inline std::vector<CarmichaelRecord> assemble_carmichael(AgpRun& run,
                                                         unsigned subset_size_cap,
                                                         u64 node_cap) {
  if (!run.k_found) throw DomainError("assemble_carmichael: run has no k yet");
  if (run.prime_set.size() > 40)
    throw DomainError("assemble_carmichael: prime_set exceeds 40 primes");

  BigInt M = BigInt(2) * run.k * run.L.value;
  std::vector<BigInt> primes;
  primes.reserve(run.prime_set.size());
  for (auto& [d, p] : run.prime_set) primes.emplace_back(p);

  bool mitm = primes.size() > 20;
  SubsetSearchResult sr = subset_products_one_mod(
      primes, M, 3, std::max(3u, subset_size_cap), node_cap, mitm);
  run.diag.subset_nodes += sr.nodes;
  run.diag.node_cap_hit = run.diag.node_cap_hit || sr.node_cap_hit;

  std::vector<CarmichaelRecord> out;
  for (u64 mask : sr.masks) {
    FactoredInteger fi;
    fi.value = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask >> i & 1) {
        fi.value *= primes[i];
        fi.factors.push_back({primes[i], 1});
      }
    FactorizeOptions wide;  // products of many primes can top the default bound
    wide.work_bound = fi.value < wide.work_bound ? wide.work_bound : fi.value;
    if (!korselt(fi) || !is_carmichael(fi.value, wide))
      throw Error("assemble_carmichael: subset product failed verification");
    out.push_back(make_record(fi, wide));
  }
  std::sort(out.begin(), out.end(),
            [](const CarmichaelRecord& a, const CarmichaelRecord& b) {
              return a.n < b.n;
            });
  run.assembled = out;
  return out;
}

// ---------------------------------------------------------------------------
// Empirical check of the sieve lemma's order of magnitude:
// S(x) = #{m <= x : m in B, 2km + 1 prime}, reported with the normalization
// r(x) = S(x) phi(k) (log x)^{3/2} / (k x), which the lemma bounds between
// positive constants.

struct SievelemRow {
  u64 x = 0;
  u64 count = 0;
  long double ratio = 0;
};

inline std::vector<SievelemRow> sievelem_empirical(u64 k,
                                                   std::vector<u64> x_values,
                                                   unsigned threads = 0) {
  if (k < 1) throw DomainError("sievelem_empirical: k must be >= 1");
  FactoredInteger kf = factorize(k);
  if (!kf.squarefree()) throw DomainError("sievelem_empirical: k must be squarefree");
  for (const auto& f : kf.factors)
    if (f.prime % 4 != 1) throw DomainError("sievelem_empirical: k must lie in B");
  if (x_values.empty()) return {};
  std::vector<u64> xs = x_values;
  std::sort(xs.begin(), xs.end());
  u64 x_max = xs.back();
  if (x_max > 100'000'000ULL)
    throw WorkExceeded("sievelem_empirical: x above supported range");
  if (x_max < 1) throw DomainError("sievelem_empirical: x must be >= 1");
  if (k > ((u64(1) << 62) / x_max))
    throw WorkExceeded("sievelem_empirical: 2kx overflows the prime test range");

  std::vector<u32> primes = sieve_primes(static_cast<u32>(isqrt_u64(x_max)));
  constexpr u64 kSpan = u64(1) << 22;
  u64 n_windows = (x_max - 1) / kSpan + 1;
  std::vector<std::vector<u64>> bucket(static_cast<std::size_t>(n_windows),
                                       std::vector<u64>(xs.size(), 0));

  parallel_blocks(n_windows, threads, [&](u64 w) {
    u64 lo = 1 + w * kSpan;  // m === 1 (mod 4)
    u64 hi = std::min(x_max + 1, lo + kSpan);
    thread_local std::vector<u64> scratch;
    thread_local std::vector<u8> dead;
    u64 count = (hi - lo + 3) / 4;
    dead.assign(static_cast<std::size_t>(count), 0);
    auto& counts = bucket[static_cast<std::size_t>(w)];
    factor_range(
        lo, hi, 4, primes, scratch,
        [&](u64 i, u32 p, unsigned) {
          if (p % 4 == 3) dead[static_cast<std::size_t>(i)] = 1;
        },
        [&](u64 i, u64 rem) {
          if (dead[static_cast<std::size_t>(i)]) return;
          if (rem > 1 && rem % 4 == 3) return;
          u64 m = lo + 4 * i;
          if (!is_prime(2 * k * m + 1)) return;
          auto it = std::lower_bound(xs.begin(), xs.end(), m);
          if (it != xs.end()) ++counts[static_cast<std::size_t>(it - xs.begin())];
        });
  });

  std::vector<u64> totals(xs.size(), 0);
  for (const auto& counts : bucket)
    for (std::size_t j = 0; j < xs.size(); ++j) totals[j] += counts[j];
  for (std::size_t j = 1; j < xs.size(); ++j) totals[j] += totals[j - 1];

  long double phi_over = static_cast<long double>(kf.phi().convert_to<u64>()) /
                         static_cast<long double>(k);
  std::vector<SievelemRow> out;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    SievelemRow row;
    row.x = xs[j];
    row.count = totals[j];
    long double lx = std::log(static_cast<long double>(xs[j]));
    row.ratio = static_cast<long double>(totals[j]) * phi_over *
                std::pow(lx, 1.5L) / static_cast<long double>(xs[j]);
    out.push_back(row);
  }
  return out;
}

// Shipped desk-scale presets; starting points, not canonical values.
inline std::vector<std::pair<std::string, AgpConfig>> agp_presets() {
  std::vector<std::pair<std::string, AgpConfig>> out;
  for (u64 y : {20, 50, 100}) {
    AgpConfig cfg;
    cfg.y = y;
    out.emplace_back("y" + std::to_string(y), cfg);
  }
  return out;
}

}  // namespace carmsq
