#include <catch2/catch_amalgamated.hpp>

#include "carmsq/carmichael.hpp"
#include "carmsq/serialize.hpp"
#include "oracles.hpp"

using namespace carmsq;

TEST_CASE("Korselt agrees with the Fermat characterization", "[carmichael]") {
  // a^n === a (mod n) for every a is the defining property; check that the
  // factorization route reproduces it exhaustively.
  for (u64 n = 1; n <= 10'000; ++n)
    REQUIRE(is_carmichael(n) == oracle::is_carmichael_fermat(n));
}

TEST_CASE("the classical small Carmichael numbers", "[carmichael]") {
  std::vector<u64> known{561,   1105,  1729,  2465,  2821,
                         6601,  8911,  10585, 15841, 29341};
  for (u64 n : known) REQUIRE(is_carmichael(n));
  REQUIRE_FALSE(is_carmichael(u64(560)));
  REQUIRE_FALSE(is_carmichael(u64(562)));
  REQUIRE_FALSE(is_carmichael(u64(1)));
  REQUIRE_FALSE(is_carmichael(u64(6)));       // squarefree but not Korselt
  REQUIRE_FALSE(is_carmichael(u64(7)));       // prime
  REQUIRE_FALSE(is_carmichael(u64(561 * 3)));  // not squarefree
  REQUIRE_THROWS_AS(is_carmichael(u64(0)), DomainError);
}

TEST_CASE("korselt on assembled factorizations", "[carmichael]") {
  REQUIRE(korselt(factorize(u64(561))));
  REQUIRE_FALSE(korselt(factorize(u64(9))));
  REQUIRE_FALSE(korselt(factorize(u64(15))));
  // korselt on a prime must fail (not composite)
  REQUIRE_FALSE(korselt(factorize(u64(17))));
}

TEST_CASE("record classification for 561", "[carmichael]") {
  CarmichaelRecord rec = make_record(factorize(u64(561)));
  REQUIRE(rec.n == 561);
  REQUIRE(rec.factors.size() == 3);
  REQUIRE(rec.factors[0].p == 3);
  REQUIRE(rec.factors[1].p == 11);
  REQUIRE(rec.factors[2].p == 17);
  // 2 = 1+1, 10 = 9+1, 16 = 16+0: all special
  REQUIRE(rec.all_special);
  REQUIRE(rec.factors[0].witness == TwoSquaresWitness{1, 1});
  REQUIRE(rec.factors[1].witness == TwoSquaresWitness{3, 1});
  REQUIRE(rec.factors[2].witness == TwoSquaresWitness{4, 0});
  // 17 is not strict: (17-1)/2 = 8 has the factor 2
  REQUIRE(rec.factors[0].strict);
  REQUIRE_FALSE(rec.factors[2].strict);
  REQUIRE_FALSE(rec.all_strict);
}

TEST_CASE("enumeration to 10^5 matches the direct filter", "[carmichael]") {
  std::vector<u64> direct;
  for (u64 n = 1; n <= 100'000; ++n)
    if (n % 2 == 1 && korselt(factorize(n))) direct.push_back(n);

  auto records = enumerate_carmichael(100'000);
  REQUIRE(records.size() == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i)
    REQUIRE(records[i].n == direct[i]);
  REQUIRE(records.size() == 16);  // the count below 10^5
}

TEST_CASE("enumeration filters are restrictions of the full list", "[carmichael]") {
  auto all = enumerate_carmichael(1'000'000);
  auto special = enumerate_carmichael(1'000'000, CarmichaelFilter::kSpecial);
  auto strict = enumerate_carmichael(1'000'000, CarmichaelFilter::kStrict);

  std::vector<u64> expect_special;
  for (const auto& rec : all)
    if (rec.all_special) expect_special.push_back(rec.n.convert_to<u64>());
  REQUIRE(special.size() == expect_special.size());
  for (std::size_t i = 0; i < special.size(); ++i)
    REQUIRE(special[i].n == expect_special[i]);

  // every strict record is a special record
  for (const auto& rec : strict) REQUIRE(rec.all_special);
  REQUIRE(strict.size() <= special.size());

  // the first five with every factor special
  std::vector<u64> expect{561, 162401, 410041, 488881, 656601};
  REQUIRE(special.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    REQUIRE(special[i].n == expect[i]);
}

TEST_CASE("enumeration is independent of the thread count", "[carmichael]") {
  auto one = enumerate_carmichael(3'000'000, CarmichaelFilter::kAll, 1);
  auto four = enumerate_carmichael(3'000'000, CarmichaelFilter::kAll, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].n == four[i].n);
    REQUIRE(to_json(one[i]) == to_json(four[i]));
  }
}

TEST_CASE("enumeration ceiling guards the entry point", "[carmichael]") {
  REQUIRE_THROWS_AS(enumerate_carmichael(kEnumerateCeiling + 1), CeilingExceeded);
  REQUIRE(enumerate_carmichael(560).empty());
  auto first = enumerate_carmichael(561);
  REQUIRE(first.size() == 1);
  REQUIRE(first[0].n == 561);
}

TEST_CASE("parametric 6k+1 family scan", "[carmichael]") {
  auto hits = chernick_scan(1'000);
  REQUIRE(!hits.empty());
  REQUIRE(hits[0].k == 1);  // 7 * 13 * 19 = 1729
  REQUIRE(hits[0].record.n == 1729);
  for (const auto& hit : hits) {
    u64 k = hit.k;
    REQUIRE(is_prime(u64(6 * k + 1)));
    REQUIRE(is_prime(u64(12 * k + 1)));
    REQUIRE(is_prime(u64(18 * k + 1)));
    REQUIRE(hit.record.n == BigInt(6 * k + 1) * (12 * k + 1) * (18 * k + 1));
    REQUIRE(is_carmichael(hit.record.n));
    // 6k and 18k carry 3-exponents 1 + v3(k) and 2 + v3(k); one of the two
    // is odd, so 6k+1 and 18k+1 are never both special.
    REQUIRE_FALSE(hit.record.all_special);
  }
  REQUIRE_THROWS_AS(chernick_scan(0), DomainError);
}

TEST_CASE("record serialization shapes", "[carmichael]") {
  CarmichaelRecord rec = make_record(factorize(u64(561)));
  Json j = to_json(rec);
  REQUIRE(j.dump() ==
          "{\"n\":561,\"factors\":[3,11,17],\"special\":true,\"strict\":false,"
          "\"witnesses\":[[1,1],[3,1],[4,0]]}");
  REQUIRE(to_csv(rec) == "561,3;11;17,true,false,1:1;3:1;4:0");

  // a factor that is not special serializes a null witness
  CarmichaelRecord ch = make_record(factorize(u64(1729)));
  Json jc = to_json(ch);
  REQUIRE(jc["witnesses"][0].is_null());  // 6 = p - 1 for p = 7 is not a sum
  std::string csv = to_csv(ch);
  REQUIRE(csv.find("-") != std::string::npos);
}

TEST_CASE("big integers serialize as strings past 64 bits", "[carmichael]") {
  BigInt big = (BigInt(1) << 70) + 1;
  Json j = json_int(big);
  REQUIRE(j.is_string());
  REQUIRE(j.get<std::string>() == big.str());
  REQUIRE(json_int(BigInt(561)).is_number());
}
