#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "carmsq/errors.hpp"
#include "carmsq/primes.hpp"

namespace carmsq {

inline constexpr long double kEulerGamma = std::numbers::egamma_v<long double>;
inline constexpr long double kPi = std::numbers::pi_v<long double>;

// ---------------------------------------------------------------------------
// Euler products over primes in residue classes mod 4.

enum class EulerProduct {
  kA1,                  // prod_{p===1(4)} (1 + 1/(p(p-1)))
  kA3,                  // prod_{p===3(4)} (1 + 1/(p(p-2)))
  kLandauRamanujan,     // (1/sqrt(2)) prod_{p===3(4)} (1 - p^-2)^{-1/2}
  kLandauRamanujanAlt,  // (pi/4) prod_{p===1(4)} (1 - p^-2)^{1/2}, same limit
  kMurata,              // prod_p (1 + (p-1)^-2)
};

struct EulerProductValue {
  long double value = 0;
  long double tail_bound = 0;  // |finite - infinite| <= tail_bound
  u64 cutoff = 0;
};

// Product over the primes p <= cutoff, in log space, blocks combined in a
// fixed order. tail_bound comes from comparing the omitted log terms with
// sum_{n > cutoff} of an elementary majorant.
inline EulerProductValue euler_product(EulerProduct which, u64 cutoff,
                                       unsigned threads = 0) {
  if (cutoff < 1000) throw DomainError("euler_product: cutoff must be >= 10^3");
  if (cutoff > 2'000'000'000ULL)
    throw WorkExceeded("euler_product: cutoff above supported range");

  auto term = [which](u64 p) -> long double {
    long double pl = static_cast<long double>(p);
    switch (which) {
      case EulerProduct::kA1:
        return (p % 4 == 1) ? std::log1p(1.0L / (pl * (pl - 1))) : 0.0L;
      case EulerProduct::kA3:
        return (p % 4 == 3) ? std::log1p(1.0L / (pl * (pl - 2))) : 0.0L;
      case EulerProduct::kLandauRamanujan:
        return (p % 4 == 3) ? -0.5L * std::log1p(-1.0L / (pl * pl)) : 0.0L;
      case EulerProduct::kLandauRamanujanAlt:
        return (p % 4 == 1) ? 0.5L * std::log1p(-1.0L / (pl * pl)) : 0.0L;
      case EulerProduct::kMurata:
        return std::log1p(1.0L / ((pl - 1) * (pl - 1)));
    }
    return 0.0L;
  };

  long double log_sum = reduce_over_primes<long double>(
      2, cutoff + 1, 0.0L, threads,
      [&](long double& acc, u64 p) { acc += term(p); },
      [](long double& acc, long double part) { acc += part; });

  long double x = static_cast<long double>(cutoff);
  long double value = 0, tail_log = 0;
  switch (which) {
    case EulerProduct::kA1:
      value = std::exp(log_sum);
      tail_log = 1.0L / x;  // sum_{n>x} 1/(n(n-1)) = 1/x
      break;
    case EulerProduct::kA3:
      value = std::exp(log_sum);
      tail_log = 0.5L * (1.0L / (x - 1) + 1.0L / x);  // telescoping 1/(n(n-2))
      break;
    case EulerProduct::kLandauRamanujan:
      value = std::exp(log_sum) / std::sqrt(2.0L);
      tail_log = 0.5L * (1.0L + 2.0L / (x * x)) / x;  // -log(1-t) <= t(1+2t)
      break;
    case EulerProduct::kLandauRamanujanAlt:
      value = (kPi / 4) * std::exp(log_sum);
      tail_log = 0.5L * (1.0L + 2.0L / (x * x)) / x;
      break;
    case EulerProduct::kMurata:
      value = std::exp(log_sum);
      tail_log = 1.0L / (x - 1);  // sum_{n>x} 1/(n-1)^2 < 1/(x-1)
      break;
  }
  return {value, value * std::expm1(tail_log), cutoff};
}

// ---------------------------------------------------------------------------
// Partial products V(x), W(x) over primes p < x.
//   V: prod_{p===3(4)} (1 - 1/(p-1))      (decreasing, -> 0 like 1/sqrt(log x))
//   W: prod_{p===1(4)} (1-1/p)^{-1} (1 + 1/(p(p-1)))   (growing like sqrt(log x))

struct PartialProducts {
  long double V = 1;
  long double W = 1;
  u64 x = 0;
};

inline PartialProducts partial_products(u64 x, unsigned threads = 0) {
  if (x < 2) throw DomainError("partial_products: x must be >= 2");
  if (x > 2'000'000'000ULL)
    throw WorkExceeded("partial_products: x above supported range");

  struct VW {
    long double v = 1, w = 1;
  };
  VW r = reduce_over_primes<VW>(
      2, x, VW{}, threads,
      [](VW& acc, u64 p) {
        long double pl = static_cast<long double>(p);
        if (p % 4 == 3)
          acc.v *= 1.0L - 1.0L / (pl - 1);
        else if (p % 4 == 1)
          acc.w *= (pl * pl - pl + 1) / ((pl - 1) * (pl - 1));
      },
      [](VW& acc, VW part) {
        acc.v *= part.v;
        acc.w *= part.w;
      });
  return {r.v, r.w, x};
}

// Sum of 1/p over primes p in [x, y) with p === j (mod 4), j in {1, 3}.
inline long double mertens_quarter_sum(u64 x, u64 y, unsigned j,
                                       unsigned threads = 0) {
  if (j != 1 && j != 3) throw DomainError("mertens_quarter_sum: class must be 1 or 3");
  if (x < 2 || y <= x) throw DomainError("mertens_quarter_sum: need 2 <= x < y");
  if (y > 2'000'000'000ULL)
    throw WorkExceeded("mertens_quarter_sum: range above supported limit");
  return reduce_over_primes<long double>(
      x, y, 0.0L, threads,
      [j](long double& acc, u64 p) {
        if (p % 4 == j) acc += 1.0L / static_cast<long double>(p);
      },
      [](long double& acc, long double part) { acc += part; });
}

// ---------------------------------------------------------------------------
// The semi-linear sieve pair (f, F): difference-differential system
//   (sqrt(s) F(s))' = f(s-1) / (2 sqrt(s)),   (sqrt(s) f(s))' = F(s-1) / (2 sqrt(s)),
// with sqrt(s) F(s) = 2 sqrt(e^gamma / pi) on (0, 2] and f(1) = 0. On [1, 3]
// f has the closed form below; past the closed-form ranges the system is
// continued by cumulative trapezoid integration with Richardson control.

inline long double semilinear_front() {
  static const long double c = std::sqrt(std::exp(kEulerGamma) / kPi);
  return c;  // sqrt(e^gamma / pi)
}

// f on [1, 3]: sqrt(s) f(s) = sqrt(e^gamma/pi) log(1 + 2(s-1) + 2 sqrt(s(s-1))),
// which equals sqrt(e^gamma/pi) * Integral_1^s dt / sqrt(t(t-1)).
inline long double semilinear_closed_f(long double s) {
  if (s < 1.0L - 1e-12L || s > 3.0L + 1e-12L)
    throw DomainError("semilinear_closed_f: s must lie in [1, 3]");
  s = std::clamp(s, 1.0L, 3.0L);  // absorb endpoint roundoff from callers
  long double inner = 1.0L + 2.0L * (s - 1.0L) + 2.0L * std::sqrt(s * (s - 1.0L));
  return semilinear_front() * std::log(inner) / std::sqrt(s);
}

struct SieveFunctionTable {
  std::vector<long double> s;
  std::vector<long double> f;
  std::vector<long double> F;
  long double max_step_error = 0;
};

class SieveFunctions {
 public:
  explicit SieveFunctions(long double step = 1e-5L) : step_(step) {
    if (!(step > 0) || step > 0.01L)
      throw DomainError("SieveFunctions: step must lie in (0, 0.01]");
    build();
  }

  // F on (0, 4]; constant sqrt(s) F(s) on (0, 2], integrated beyond.
  long double F(long double s) const {
    if (!(s > 0.0L) || s > 4.0L + 1e-12L)
      throw DomainError("F_semilinear: s must lie in (0, 4]");
    if (s <= 2.0L) return 2.0L * semilinear_front() / std::sqrt(s);
    return interpolate(sqrtF_, 2.0L, s) / std::sqrt(s);
  }

  // f on [0, 4]; zero below 1, closed form on [1, 3], integrated beyond.
  long double f(long double s) const {
    if (s < -1e-12L || s > 4.0L + 1e-12L)
      throw DomainError("f_semilinear: s must lie in [0, 4]");
    if (s < 1.0L) return 0.0L;
    if (s <= 3.0L) return semilinear_closed_f(s);
    return interpolate(sqrtf_, 3.0L, s) / std::sqrt(s);
  }

  long double max_step_error() const { return err_; }

  SieveFunctionTable table(long double grid_step) const {
    if (!(grid_step > 0) || grid_step > 1.0L)
      throw DomainError("table: grid step must lie in (0, 1]");
    SieveFunctionTable t;
    for (long double s = grid_step; s <= 4.0L + 1e-12L; s += grid_step) {
      if (s > 4.0L) s = 4.0L;
      t.s.push_back(s);
      t.f.push_back(f(s));
      t.F.push_back(F(s));
    }
    t.max_step_error = err_;
    return t;
  }

 private:
  void build() {
    // sqrt(s) F(s) on [2, 4]: starts from the constant 2 sqrt(e^gamma/pi),
    // integrand f(t-1)/(2 sqrt(t)) available in closed form throughout.
    auto gF = [&](long double t) {
      return semilinear_closed_f(t - 1.0L) / (2.0L * std::sqrt(t));
    };
    std::size_t nF = static_cast<std::size_t>(std::llround(2.0L / step_));
    sqrtF_ = cumulative_trapezoid(2.0L, nF, 2.0L * semilinear_front(), gF);
    long double errF = richardson_error(2.0L, nF, 2.0L * semilinear_front(), gF, sqrtF_);

    // sqrt(s) f(s) on [3, 4]: integrand F(t-1)/(2 sqrt(t)) uses the table
    // above, whose grid lines up exactly (t - 1 = 2 + i*step).
    auto gf = [&](long double t) {
      return interpolate(sqrtF_, 2.0L, t - 1.0L) / std::sqrt(t - 1.0L) /
             (2.0L * std::sqrt(t));
    };
    std::size_t nf = static_cast<std::size_t>(std::llround(1.0L / step_));
    long double f3 = std::sqrt(3.0L) * semilinear_closed_f(3.0L);
    sqrtf_ = cumulative_trapezoid(3.0L, nf, f3, gf);
    long double errf = richardson_error(3.0L, nf, f3, gf, sqrtf_);

    err_ = errF + errf + 1e-15L;
  }

  template <class G>
  std::vector<long double> cumulative_trapezoid(long double t0, std::size_t n,
                                                long double init, G&& g) const {
    std::vector<long double> out(n + 1);
    out[0] = init;
    long double prev = g(t0);
    for (std::size_t i = 1; i <= n; ++i) {
      long double t = t0 + static_cast<long double>(i) * step_;
      long double cur = g(t);
      out[i] = out[i - 1] + step_ * 0.5L * (prev + cur);
      prev = cur;
    }
    return out;
  }

  // Same integral at double the step; the running maximum of
  // |fine - coarse| / 3 estimates the trapezoid error.
  template <class G>
  long double richardson_error(long double t0, std::size_t n, long double init,
                               G&& g, const std::vector<long double>& fine) const {
    long double coarse = init, err = 0;
    long double h2 = 2.0L * step_;
    long double prev = g(t0);
    for (std::size_t i = 2; i <= n; i += 2) {
      long double t = t0 + static_cast<long double>(i) * step_;
      long double cur = g(t);
      coarse += h2 * 0.5L * (prev + cur);
      prev = cur;
      err = std::max(err, std::abs(fine[i] - coarse) / 3.0L);
    }
    return err;
  }

  long double interpolate(const std::vector<long double>& tab, long double t0,
                          long double s) const {
    long double pos = (s - t0) / step_;
    if (pos <= 0.0L) return tab.front();
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= tab.size() - 1) return tab.back();
    long double frac = pos - static_cast<long double>(i);
    return tab[i] * (1.0L - frac) + tab[i + 1] * frac;
  }

  long double step_;
  std::vector<long double> sqrtF_;
  std::vector<long double> sqrtf_;
  long double err_ = 0;
};

inline const SieveFunctions& default_sieve_functions() {
  static const SieveFunctions sf;
  return sf;
}

inline long double f_semilinear(long double s) { return default_sieve_functions().f(s); }
inline long double F_semilinear(long double s) { return default_sieve_functions().F(s); }

// ---------------------------------------------------------------------------
// Endgame bookkeeping for the sieve lemma: given delta = num/den in (0, 1/8),
// form s = (1 - 2 delta) / (1 - 4 delta) as an exact rational, evaluate f(s),
// and compare the main-term coefficient 60 pi^2 e^gamma delta^{3/2} against
// f(s)/2, plus the elementary bound on the secondary coefficient.

struct EndgameReport {
  long long delta_num = 0, delta_den = 0;
  long long s_num = 0, s_den = 0;     // reduced
  long double f_s = 0;
  long double t_coeff = 0;            // 60 pi^2 e^gamma delta^{3/2}
  long double coeff_lhs = 0;          // (4d)^{3/2} (1/4 - 2d)^{-2} (1/2 - 2d)^{1/2}
  long double coeff_rhs = 0;          // 240 delta^{3/2}
  bool coeff_ok = false;
  bool margin_ok = false;             // t_coeff < f_s / 2
};

inline EndgameReport endgame_margin(long long num, long long den) {
  if (num < 1 || den < 1 || 8 * num >= den)
    throw DomainError("endgame_margin: delta must lie in (0, 1/8)");
  EndgameReport r;
  r.delta_num = num;
  r.delta_den = den;
  long long sn = den - 2 * num, sd = den - 4 * num;
  long long g = std::gcd(sn, sd);
  r.s_num = sn / g;
  r.s_den = sd / g;

  long double d = static_cast<long double>(num) / static_cast<long double>(den);
  long double s = static_cast<long double>(r.s_num) / static_cast<long double>(r.s_den);
  // s < 3/2 for every delta in (0, 1/8), so the closed form applies
  r.f_s = semilinear_closed_f(s);
  r.t_coeff = 60.0L * kPi * kPi * std::exp(kEulerGamma) * std::pow(d, 1.5L);
  r.coeff_lhs = std::pow(4.0L * d, 1.5L) / ((0.25L - 2.0L * d) * (0.25L - 2.0L * d)) *
                std::sqrt(0.5L - 2.0L * d);
  r.coeff_rhs = 240.0L * std::pow(d, 1.5L);
  r.coeff_ok = r.coeff_lhs < r.coeff_rhs;
  r.margin_ok = r.t_coeff < 0.5L * r.f_s;
  return r;
}

}  // namespace carmsq
