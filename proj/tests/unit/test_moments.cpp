#include <cmath>

#include "doctest.h"
#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/forms.hpp"
#include "pellclass/moments.hpp"
#include "pellclass/oracle.hpp"

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

TEST_CASE("li") {
  CHECK(li(1e4) == doctest::Approx(oracle::li_quadrature(1e4)).epsilon(1e-10));
  CHECK(li(2.0) == doctest::Approx(oracle::li_quadrature(2.0)).epsilon(1e-10));
  CHECK(std::fabs(li(1e4) - 1246.14) <= 0.01);
  CHECK(std::fabs(li(2.0) - 1.045) <= 0.001);
  CHECK(li(1e10) / (1e10 / std::log(1e10)) == doctest::Approx(1.0).epsilon(0.12));
  for (const double y : {3.0, 17.5, 1e3, 1e6}) REQUIRE(li(y) == doctest::Approx(oracle::li_quadrature(y)).epsilon(1e-10));
}

TEST_CASE("main term") {
  const double r = main_term_integral(1e6, 1.0) / main_term_simple(1e6, 1.0);
  CHECK(r >= 1.0);
  CHECK(r <= 1.2);
  CHECK(power_integral(1000.0, 1e-9) == doctest::Approx(998.0).epsilon(1e-6));
  CHECK(power_integral(1e4, 1.0) == doctest::Approx(li(1e8) - li(4.0)).epsilon(1e-8));
  double prev = 0;
  for (double x = 10; x < 1e7; x *= 3.7) {
    const double v = main_term_integral(x, 2.0);
    REQUIRE(v > prev);
    prev = v;
  }
}

TEST_CASE("empirical moments") {
  const EnumerationRun run = exact_run(10);
  double oracle_sum = 0;
  for (const auto& r : run.records) oracle_sum += static_cast<double>(class_number_cycles(r.d));
  CHECK(empirical_moment(run, 1.0) == oracle_sum);
  CHECK(empirical_moment(run, 0.0) == 10.0);
  CHECK_THROWS_AS(empirical_moment(enumerate(10), 1.0), ContractError);
  const EnumerationRun big = exact_run(3000);
  CHECK(empirical_moment(big, 1.5, 1) == empirical_moment(big, 1.5, 4));
  const double sum = empirical_moment(big, 1.0);
  CHECK(sum / li(9e6) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("twisted sums") {
  const EnumerationRun run = enumerate(1'000'000);
  CHECK(twisted_empirical(run, 0.0, 1) == static_cast<double>(run.records.size()));
  u64 odd = 0;
  for (const auto& r : run.records) odd += r.d & 1;
  CHECK(twisted_empirical(run, 0.0, 4) == static_cast<double>(odd));
  CHECK(twisted_empirical(run, 0.0, 3) < 0);
  CHECK(twisted_empirical(run, 1.0, 3, 1) == twisted_empirical(run, 1.0, 3, 4));
  CHECK(twisted_predicted(1e6, 0.0, 1) == doctest::Approx(35.0 / 16.0 * 1e6).epsilon(1e-10));
  CHECK(twisted_predicted(1e6, 1.0, 1) == doctest::Approx(C_of_k(1.0).value / 2.0 * 1e12).epsilon(1e-14));
  CHECK(twisted_predicted(1e6, 0.0, 3) == doctest::Approx(C_of_k(0.0).value * gk(u64{3}, 0.0) * 1e6).epsilon(1e-14));
  const auto rep = twisted_report(run, 0.0, 1);
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("moment report at x = 3000") {
  EnumerationRun run = enumerate(3000);
  MomentOptions mo;
  const auto r1 = moment_report(run, 1.0, 1, mo);
  CHECK(r1.kind == MomentKind::class_number);
  CHECK(r1.exact_h_count + r1.formula_h_count == run.records.size());
  CHECK(r1.ratio == doctest::Approx(1.0).epsilon(0.1));
  const auto r0 = moment_report(run, 0.0, 1, mo);
  CHECK(r0.kind == MomentKind::twisted);
  CHECK(r0.empirical == static_cast<double>(run.records.size()));
}

TEST_CASE("L moment shape") {
  const EnumerationRun run = enumerate(5000);
  const auto rep = l_moment(run, 1e3);
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(0.1));
}
