#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "carmsq/sieve_numerics.hpp"
#include "oracles.hpp"

using namespace carmsq;

namespace {

// Direct product over an explicit prime list, no log-space detour.
template <class Term>
long double direct_product(u64 cutoff, Term&& term) {
  long double prod = 1.0L;
  for (u32 p : sieve_primes(static_cast<u32>(cutoff))) prod *= term(p);
  return prod;
}

}  // namespace

TEST_CASE("euler products match direct multiplication at small cutoffs",
          "[sieve-numerics]") {
  u64 cutoff = 100'000;
  auto a1 = euler_product(EulerProduct::kA1, cutoff);
  long double d1 = direct_product(cutoff, [](u64 p) {
    long double pl = p;
    return p % 4 == 1 ? 1.0L + 1.0L / (pl * (pl - 1)) : 1.0L;
  });
  REQUIRE(std::abs(a1.value - d1) < 1e-12L);

  auto a3 = euler_product(EulerProduct::kA3, cutoff);
  long double d3 = direct_product(cutoff, [](u64 p) {
    long double pl = p;
    return p % 4 == 3 ? 1.0L + 1.0L / (pl * (pl - 2)) : 1.0L;
  });
  REQUIRE(std::abs(a3.value - d3) < 1e-12L);

  auto mu = euler_product(EulerProduct::kMurata, cutoff);
  long double dm = direct_product(cutoff, [](u64 p) {
    long double pl = p;
    return 1.0L + 1.0L / ((pl - 1) * (pl - 1));
  });
  REQUIRE(std::abs(mu.value - dm) < 1e-12L);
}

TEST_CASE("the two quadratic-form density expressions converge together",
          "[sieve-numerics]") {
  // One runs over p === 3 (mod 4), the other over p === 1 (mod 4); they have
  // the same limit, so the finite values must agree within the tail bounds.
  auto lr = euler_product(EulerProduct::kLandauRamanujan, 1'000'000);
  auto alt = euler_product(EulerProduct::kLandauRamanujanAlt, 1'000'000);
  REQUIRE(std::abs(lr.value - alt.value) <= lr.tail_bound + alt.tail_bound);
  // frozen reference value, solid to ~4e-7 at this cutoff
  REQUIRE(std::abs(lr.value - 0.7642236535L) < 1e-6L);
}

TEST_CASE("tail bounds dominate the observed cutoff drift", "[sieve-numerics]") {
  for (EulerProduct which :
       {EulerProduct::kA1, EulerProduct::kA3, EulerProduct::kLandauRamanujan,
        EulerProduct::kLandauRamanujanAlt, EulerProduct::kMurata}) {
    auto lo = euler_product(which, 10'000);
    auto hi = euler_product(which, 1'000'000);
    // value(10^6) is much closer to the limit than value(10^4), so the
    // difference is a lower bound for the true 10^4 truncation error.
    REQUIRE(std::abs(hi.value - lo.value) <= lo.tail_bound);
    REQUIRE(hi.tail_bound < lo.tail_bound);
  }
  REQUIRE_THROWS_AS(euler_product(EulerProduct::kA1, 100), DomainError);
  REQUIRE_THROWS_AS(euler_product(EulerProduct::kA1, 3'000'000'000ULL),
                    WorkExceeded);
}

TEST_CASE("partial products match direct loops and frozen small values",
          "[sieve-numerics]") {
  PartialProducts pp = partial_products(10);
  // p < 10: V over {3, 7} = (1 - 1/2)(1 - 1/6) = 5/12; W over {5} = 21/16
  REQUIRE(std::abs(pp.V - 5.0L / 12.0L) < 1e-15L);
  REQUIRE(std::abs(pp.W - 21.0L / 16.0L) < 1e-15L);

  PartialProducts big = partial_products(100'000);
  long double v = direct_product(99'999, [](u64 p) {
    return p % 4 == 3 ? 1.0L - 1.0L / (static_cast<long double>(p) - 1) : 1.0L;
  });
  long double w = direct_product(99'999, [](u64 p) {
    long double pl = p;
    return p % 4 == 1 ? (pl * pl - pl + 1) / ((pl - 1) * (pl - 1)) : 1.0L;
  });
  REQUIRE(std::abs(big.V - v) < 1e-12L);
  REQUIRE(std::abs(big.W - w) < 1e-12L);

  // V decreasing, W increasing
  REQUIRE(partial_products(1'000).V > partial_products(100'000).V);
  REQUIRE(partial_products(1'000).W < partial_products(100'000).W);
  REQUIRE_THROWS_AS(partial_products(1), DomainError);
}

TEST_CASE("quarter sums of prime reciprocals", "[sieve-numerics]") {
  // primes === 1 (mod 4) below 100: 5 13 17 29 37 41 53 61 73 89 97
  long double direct = 0;
  for (u64 p : {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97})
    direct += 1.0L / static_cast<long double>(p);
  REQUIRE(std::abs(mertens_quarter_sum(2, 100, 1) - direct) < 1e-15L);

  long double d3 = 0;
  for (u32 p : sieve_primes(9'999))
    if (p % 4 == 3 && p >= 50) d3 += 1.0L / static_cast<long double>(p);
  REQUIRE(std::abs(mertens_quarter_sum(50, 10'000, 3) - d3) < 1e-13L);

  // the two classes partition the odd primes
  long double all = 0;
  for (u32 p : sieve_primes(999))
    if (p > 2) all += 1.0L / static_cast<long double>(p);
  REQUIRE(std::abs(mertens_quarter_sum(3, 1'000, 1) +
                   mertens_quarter_sum(3, 1'000, 3) - all) < 1e-14L);

  REQUIRE_THROWS_AS(mertens_quarter_sum(2, 100, 2), DomainError);
  REQUIRE_THROWS_AS(mertens_quarter_sum(100, 100, 1), DomainError);
}

TEST_CASE("closed-form f equals its defining integral", "[sieve-numerics]") {
  // sqrt(s) f(s) = sqrt(e^gamma/pi) * Integral_1^s dt / sqrt(t(t-1)):
  // quadrature on the right (singularity removed by t = 1 + u^2) against
  // the logarithmic closed form on the left.
  for (int i = 0; i <= 20; ++i) {
    long double s = 1.0L + 2.0L * i / 20.0L;
    long double closed = semilinear_closed_f(s) * std::sqrt(s);
    long double quad = semilinear_front() * oracle::sqrt_hyperbola_integral(s);
    REQUIRE(std::abs(closed - quad) < 1e-9L);
  }
  REQUIRE(semilinear_closed_f(1.0L) == 0.0L);
  REQUIRE_THROWS_AS(semilinear_closed_f(0.5L), DomainError);
  REQUIRE_THROWS_AS(semilinear_closed_f(3.5L), DomainError);
}

TEST_CASE("sieve function pair: boundary values and continuation",
          "[sieve-numerics]") {
  const SieveFunctions& sf = default_sieve_functions();

  // sqrt(s) F(s) is the constant 2 sqrt(e^gamma/pi) on (0, 2]
  long double c = 2.0L * semilinear_front();
  for (long double s : {0.1L, 0.5L, 1.0L, 1.7L, 2.0L})
    REQUIRE(std::abs(std::sqrt(s) * sf.F(s) - c) < 1e-10L);

  // f vanishes below 1 and rises continuously
  REQUIRE(sf.f(0.0L) == 0.0L);
  REQUIRE(sf.f(0.99L) == 0.0L);
  REQUIRE(sf.f(1.0L) == 0.0L);
  REQUIRE(sf.f(1.5L) > 0.0L);

  // continuity across the closed-form/continuation seams
  REQUIRE(std::abs(sf.f(3.0L) - sf.f(3.0L + 1e-7L)) < 1e-5L);
  REQUIRE(std::abs(sf.F(2.0L) - sf.F(2.0L + 1e-7L)) < 1e-5L);

  // monotonicity: F decreasing, f increasing
  REQUIRE(sf.F(1.0L) > sf.F(2.0L));
  REQUIRE(sf.F(2.0L) > sf.F(3.0L));
  REQUIRE(sf.F(3.0L) > sf.F(4.0L));
  REQUIRE(sf.f(1.5L) < sf.f(2.5L));
  REQUIRE(sf.f(2.5L) < sf.f(3.5L));
  REQUIRE(sf.f(3.5L) <= sf.f(4.0L));

  // the pair brackets 1 at s = 4 and the gap is already tiny
  REQUIRE(sf.F(4.0L) > 1.0L);
  REQUIRE(sf.f(4.0L) < 1.0L);
  REQUIRE(sf.F(4.0L) - 1.0L < 2e-4L);
  REQUIRE(1.0L - sf.f(4.0L) < 2e-4L);

  REQUIRE(sf.max_step_error() < 1e-8L);
  REQUIRE_THROWS_AS(sf.F(0.0L), DomainError);
  REQUIRE_THROWS_AS(sf.F(4.5L), DomainError);
  REQUIRE_THROWS_AS(sf.f(4.5L), DomainError);
}

TEST_CASE("halving the continuation step moves values less than the estimate",
          "[sieve-numerics]") {
  SieveFunctions fine(1e-5L);
  SieveFunctions coarse(2e-5L);
  for (long double s : {3.2L, 3.6L, 4.0L}) {
    REQUIRE(std::abs(fine.F(s) - coarse.F(s)) <
            fine.max_step_error() + coarse.max_step_error() + 1e-12L);
    REQUIRE(std::abs(fine.f(s) - coarse.f(s)) <
            fine.max_step_error() + coarse.max_step_error() + 1e-12L);
  }
  REQUIRE_THROWS_AS(SieveFunctions(0.5L), DomainError);
}

TEST_CASE("tabulation covers the grid", "[sieve-numerics]") {
  SieveFunctionTable t = default_sieve_functions().table(0.5L);
  REQUIRE(t.s.size() == 8);
  REQUIRE(t.s.front() == 0.5L);
  REQUIRE(std::abs(t.s.back() - 4.0L) < 1e-12L);
  REQUIRE(t.f[0] == 0.0L);
  REQUIRE(t.F[0] > 1.0L);
  REQUIRE(t.max_step_error == default_sieve_functions().max_step_error());
}

TEST_CASE("endgame report at the reference delta", "[sieve-numerics]") {
  EndgameReport r = endgame_margin(1, 3890);
  REQUIRE(r.s_num == 1944);
  REQUIRE(r.s_den == 1943);
  REQUIRE(r.f_s >= 0.0341L);
  REQUIRE(r.f_s < 0.0342L);
  REQUIRE(r.t_coeff >= 0.0043L);
  REQUIRE(r.t_coeff < 0.0044L);
  REQUIRE(r.coeff_lhs < r.coeff_rhs);
  REQUIRE(r.coeff_ok);
  REQUIRE(r.margin_ok);
  REQUIRE(r.t_coeff < 0.5L * r.f_s);
}

TEST_CASE("endgame rational reduction and domain", "[sieve-numerics]") {
  // delta = 2/7780 reduces to the same s
  EndgameReport r = endgame_margin(2, 7780);
  REQUIRE(r.s_num == 1944);
  REQUIRE(r.s_den == 1943);

  // s = (1 - 2d)/(1 - 4d) for d = 1/10 is 8/6 = 4/3
  EndgameReport t = endgame_margin(1, 10);
  REQUIRE(t.s_num == 4);
  REQUIRE(t.s_den == 3);
  REQUIRE(std::abs(t.f_s - semilinear_closed_f(4.0L / 3.0L)) < 1e-15L);

  REQUIRE_THROWS_AS(endgame_margin(1, 8), DomainError);    // delta = 1/8 excluded
  REQUIRE_THROWS_AS(endgame_margin(0, 100), DomainError);
  REQUIRE_THROWS_AS(endgame_margin(1, 0), DomainError);
  REQUIRE_THROWS_AS(endgame_margin(3, 20), DomainError);   // 3/20 > 1/8
}

TEST_CASE("margin flips once delta grows enough", "[sieve-numerics]") {
  // at delta = 1/3890 the coefficient sits below f(s)/2 with room; pushing
  // delta up two orders of magnitude breaks the inequality
  REQUIRE(endgame_margin(1, 3890).margin_ok);
  REQUIRE_FALSE(endgame_margin(1, 12).margin_ok);
}
