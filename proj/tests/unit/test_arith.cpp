#include <cmath>

#include "doctest.h"
#include "pellclass/arith.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/oracle.hpp"

using namespace pellclass;

TEST_CASE("kronecker small values") {
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(5, 3) == -1);
  CHECK(kronecker(5, 11) == 1);
  CHECK(kronecker(8, 7) == 1);
  CHECK(kronecker(12, 2) == 0);
  CHECK(kronecker(1, 0) == 1);
  CHECK(kronecker(-1, 0) == 1);
  CHECK(kronecker(4, 0) == 0);
  CHECK(kronecker(-3, 2) == -1);
}

TEST_CASE("kronecker agrees with Euler's criterion") {
  for (i64 d = -200; d <= 200; ++d) {
    for (u64 n = 0; n <= 200; ++n) {
      REQUIRE_MESSAGE(kronecker(d, n) == oracle::kronecker_euler(d, n), "d=" << d << " n=" << n);
    }
  }
}

TEST_CASE("kronecker is completely multiplicative in n") {
  for (i64 d = -1000; d <= 1000; d += 37) {
    for (u64 m = 1; m <= 1000; m += 13) {
      for (u64 n = 1; n <= 1000; n += 29) {
        REQUIRE(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
      }
    }
  }
}

TEST_CASE("kronecker(d, .) has period dividing d for discriminants") {
  for (u64 d = 5; d <= 500; ++d) {
    if (d % 4 > 1 || is_square(d)) continue;
    for (u64 n = 0; n < 2 * d; ++n) REQUIRE(kronecker(static_cast<i64>(d), n) == kronecker(static_cast<i64>(d), n + d));
  }
}

TEST_CASE("jacobi32 matches jacobi") {
  for (u32 n = 1; n < 400; n += 2) {
    for (u32 a = 0; a < n; ++a) REQUIRE(jacobi32(a, n) == jacobi(a, n));
  }
}

TEST_CASE("isqrt and is_square") {
  CHECK(isqrt(u64{0}) == 0);
  CHECK(isqrt(u64{15}) == 3);
  CHECK(isqrt(u64{16}) == 4);
  CHECK(isqrt(~u64{0}) == 4294967295ull);
  CHECK(is_square(u64{1'000'000'000'000}));
  CHECK_FALSE(is_square(u64{999'999'999'999}));
  const u128 big = static_cast<u128>(3'000'000'000'000ull) * 3'000'000'000'000ull;
  CHECK(isqrt(big) == 3'000'000'000'000ull);
  CHECK(is_square(big));
  CHECK_FALSE(is_square(big + 1));
}

TEST_CASE("SpfTable factors") {
  const SpfTable t(1000);
  CHECK(t.factor(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(t.factor(2).factors == std::vector<PrimePower>{{2, 1}});
  CHECK(t.factor(45).factors == std::vector<PrimePower>{{3, 2}, {5, 1}});
  CHECK(t.factor(1).factors.empty());
  CHECK_THROWS_AS(t.factor(1001), std::out_of_range);
  CHECK_THROWS_AS(SpfTable(100, 50), GuardError);
  CHECK(t.factor_any(997 * 991).factors == std::vector<PrimePower>{{991, 1}, {997, 1}});
}

TEST_CASE("SpfTable invariants") {
  const SpfTable t(20000);
  for (u32 p : t.primes()) REQUIRE(t.spf(p) == p);
  for (u64 n = 2; n <= 20000; ++n) {
    const u64 p = t.spf(n);
    REQUIRE(n % p == 0);
    for (u64 q = 2; q < p && q * q <= n; ++q) REQUIRE(n % q != 0);
    const Factorization f = t.factor(n);
    u64 prod = 1;
    u64 last = 0;
    for (const auto& pp : f.factors) {
      REQUIRE(pp.prime > last);
      REQUIRE(pp.exponent >= 1);
      last = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    REQUIRE(prod == n);
    REQUIRE(f == factor_trial(n));
  }
}

TEST_CASE("squarefree part times a square is n") {
  for (u64 n = 1; n <= 100'000; ++n) {
    const u64 s = squarefree_part(n);
    REQUIRE(n % s == 0);
    REQUIRE(is_square(n / s));
  }
  CHECK(squarefree_part(72) == 2);
  CHECK(squarefree_part(1) == 1);
}

TEST_CASE("d_k at integer k counts ordered factorizations") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (u64 n = 1; n <= 100; ++n) {
      REQUIRE(divisor_dk(k, factor_trial(n)) == doctest::Approx(static_cast<double>(oracle::ordered_factorizations(k, n))).epsilon(1e-12));
    }
  }
  CHECK(divisor_dk(2.0, factor_trial(12)) == doctest::Approx(6));
}

TEST_CASE("|d_k(n)| <= d_ceil(k)(n)") {
  const SpfTable t(10'000);
  for (const double k : {0.5, 1.3, 2.7}) {
    const double l = std::ceil(k);
    for (u64 n = 1; n <= 10'000; ++n) {
      REQUIRE(std::fabs(divisor_dk(k, n, t)) <= divisor_dk(l, n, t) * (1 + 1e-12));
    }
  }
}

TEST_CASE("divisor_count") {
  CHECK(divisor_count(factor_trial(1)) == 1);
  CHECK(divisor_count(factor_trial(12)) == 6);
  CHECK(divisor_count(factor_trial(720)) == 30);
}
