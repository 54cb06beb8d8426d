#include <cstdlib>

#include "doctest.h"
#include "pellclass/charsums.hpp"
#include "pellclass/errors.hpp"

using namespace pellclass;

TEST_CASE("polynomial and brute-force examples") {
  const CharSumCase c = make_case(3, 3, 1);
  CHECK(poly_eval(c, 0) == 5);
  CHECK(poly_eval(c, 1) == 45);
  CHECK(poly_eval(c, 2) == 117);
  CHECK(charsum_bruteforce(c) == -1);
  CHECK(charsum_closed(c) == Rational(-1, 3));
  CHECK(charsum_bruteforce(make_case(1, 3, 1)) == 1);
  CHECK(charsum_bruteforce(make_case(2, 3, 1)) == -2);
  CHECK(charsum_closed(make_case(2, 3, 1)) == Rational(-1));
  CHECK(charsum_closed(make_case(9, 3, 1)) == Rational(1, 3));
  CHECK_THROWS_AS(make_case(3, 7, 1), DomainError);  // a > 4u^2 + 2
  CHECK_THROWS_AS(make_case(3, 5, 2), DomainError);  // 4 does not divide 21
  CHECK_THROWS_AS(make_case(0, 3, 1), DomainError);
  CHECK_THROWS_AS(charsum_bruteforce(make_case(1'000'003, 3, 1)), GuardError);
}

TEST_CASE("closed form equals brute force on the full grid") {
  const CharsumVerification v = charsum_verify(120, 20, 2);
  CHECK(v.mismatches == 0);
  CHECK(v.rows.size() > 10'000);
  for (const auto& r : v.rows) {
    REQUIRE(std::llabs(r.brute) <= static_cast<long long>(r.m));
  }
}

TEST_CASE("residue counts") {
  for (u64 u = 1; u <= 300; ++u) {
    const NiCounts f = ni_formula(u);
    REQUIRE(f == ni_bruteforce(u));
    REQUIRE(f.N0 + f.N1 + f.N2 <= 4 * u * u);
    REQUIRE(f.eta == factor_trial(f.u0).omega());
  }
  const NiCounts n1 = ni_bruteforce(1);
  CHECK(n1.N0 == 2);
  CHECK(n1.N1 == 0);
  CHECK(n1.N2 == 2);
}

TEST_CASE("F_m is multiplicative in u and bounded by m d(u)") {
  for (u64 m = 1; m <= 60; ++m) {
    for (u64 u1 = 1; u1 <= 50; ++u1) {
      const Rational F1 = bf_factors(m, u1).F;
      const Rational bound(static_cast<i64>(m * divisor_count(factor_trial(u1))));
      REQUIRE(-bound <= F1);
      REQUIRE(F1 <= bound);
      for (u64 u2 = 1; u1 * u2 <= 50; ++u2) {
        if (gcd(u1, u2) != 1) continue;
        REQUIRE(bf_factors(m, u1 * u2).F == F1 * bf_factors(m, u2).F);
      }
    }
  }
}
