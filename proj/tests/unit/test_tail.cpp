#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/forms.hpp"
#include "pellclass/numeric.hpp"
#include "pellclass/tail.hpp"

using namespace pellclass;

namespace {

EnumerationRun exact_run(u64 x) {
  EnumerationRun run = enumerate(x);
  HybridOptions e;
  e.mode = HybridMode::exact;
  assign_class_numbers(run, e);
  return run;
}

}  // namespace

TEST_CASE("predicted tail") {
  const double a0 = A0_value().value;
  CHECK(predicted_tail(a0) == doctest::Approx(std::exp(-1.0 / a0)).epsilon(1e-14));
  CHECK(std::fabs(predicted_tail(a0) - 0.2949) < 1e-3);
  CHECK(std::fabs(predicted_tail(3.0) - 0.05221) < 1e-4);
  CHECK(predicted_tail(40.0) < 1e-100);
  // e^{t - A0}/t is minimal at t = 1, so the prediction decreases only from there on.
  for (double t = 1.0; t < 5; t += 0.1) REQUIRE(predicted_tail(t + 0.1) < predicted_tail(t));
  CHECK(predicted_tail(0.5) < predicted_tail(1.0));
}

TEST_CASE("empirical tail") {
  const EnumerationRun run = exact_run(3000);
  double prev = 1.0;
  for (const double tau : {0.5, 0.8, 1.0, 1.3, 1.6, 2.0}) {
    const auto rep = empirical_tail(run, tau);
    REQUIRE(rep.threshold > 0);
    REQUIRE(rep.empirical_proportion >= 0);
    REQUIRE(rep.empirical_proportion <= prev);
    prev = rep.empirical_proportion;
  }
  const auto half = empirical_tail(run, 0.5);
  CHECK(half.empirical_proportion > 0);
  CHECK(half.empirical_proportion < 1);
  CHECK_THROWS_AS(empirical_tail(run, 0.4), DomainError);
  CHECK_THROWS_AS(empirical_tail(enumerate(100), 1.0), ContractError);
  CHECK(tail_threshold(1'000'000, 1.0) == doctest::Approx(std::exp(kEulerGamma) / 3 * 1e6 / std::log(1e6)));
}

TEST_CASE("extreme scan") {
  const EnumerationRun run = exact_run(3000);
  const auto scan = extreme_scan(run, 25);
  CHECK(scan.top.size() == std::min<u64>(25, scan.admissible));
  CHECK(scan.admissible + scan.excluded == run.records.size());
  for (std::size_t i = 1; i < scan.top.size(); ++i) {
    const auto& a = scan.top[i - 1];
    const auto& b = scan.top[i];
    REQUIRE((a.ratio > b.ratio || (a.ratio == b.ratio && a.d < b.d)));
  }
  for (const auto& r : scan.top) REQUIRE(r.ratio > 0);
  CHECK(std::none_of(scan.top.begin(), scan.top.end(), [](const ExtremeRecord& r) { return r.d == 5; }));
  const auto again = extreme_scan(run, 25);
  REQUIRE(again.top.size() == scan.top.size());
  for (std::size_t i = 0; i < scan.top.size(); ++i) REQUIRE(again.top[i].d == scan.top[i].d);
  CHECK(extreme_scan(run, 1'000'000).top.size() == scan.admissible);
}

TEST_CASE("E(d)") {
  const EnumerationRun run = enumerate(20'000);
  for (const auto& r : run.records) {
    REQUIRE(E_of_d(r) <= Rational(1));
    if (r.u <= 2) {
      REQUIRE(kronecker(static_cast<i64>(r.d), 2) != 1);
      REQUIRE(kronecker(static_cast<i64>(r.d), 3) != 1);
    }
    if (r.d == 5) CHECK(E_of_d(r) == Rational(1, 2));
    if (r.d == 8) CHECK(E_of_d(r) == Rational(3, 8));
  }
}

TEST_CASE("conditional bounds") {
  const EnumerationRun run = exact_run(3000);
  u64 checked = 0;
  for (const auto& r : run.records) {
    if (r.log_eps <= std::exp(1.0)) {
      CHECK_THROWS_AS(conditional_bound(r, Regime::GRH), DomainError);
      continue;
    }
    const double grh = conditional_bound(r, Regime::GRH);
    REQUIRE(conditional_bound(r, Regime::Littlewood) == doctest::Approx(grh / 2).epsilon(1e-15));
    REQUIRE(static_cast<double>(*r.h) <= 1.5 * grh);
    ++checked;
  }
  CHECK(checked > 0);
  CHECK(std::exp(kEulerGamma) / 3 == doctest::Approx(1.7810724179901979 / 3).epsilon(1e-15));
}
