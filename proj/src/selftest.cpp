#include "pellclass/selftest.hpp"

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "pellclass/charsums.hpp"
#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/forms.hpp"
#include "pellclass/lseries.hpp"
#include "pellclass/numeric.hpp"
#include "pellclass/moments.hpp"
#include "pellclass/oracle.hpp"
#include "pellclass/pell.hpp"
#include "pellclass/tail.hpp"

namespace pellclass {

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome is(bool ok, const std::string& detail = {}) { return {ok, detail}; }

template <class T>
std::string show(const T& v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Outcome near(double got, double want, double tol) {
  return is(std::fabs(got - want) <= tol, "got " + show(got) + ", want " + show(want) + " +- " + show(tol));
}

template <class E, class F>
Outcome throws(F&& f) {
  try {
    f();
  } catch (const E&) {
    return is(true);
  } catch (const std::exception& e) {
    return is(false, std::string("wrong exception: ") + e.what());
  }
  return is(false, "no exception");
}

class Runner {
 public:
  explicit Runner(const std::function<void(const CheckResult&)>& progress) : progress_(progress) {}

  template <class F>
  void check(const std::string& name, F&& f) {
    CheckResult r{name, false, {}};
    try {
      const Outcome o = f();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    if (progress_) progress_(r);
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const std::function<void(const CheckResult&)>& progress_;
  std::vector<CheckResult> results_;
};

std::set<u64> d_set(const EnumerationRun& run) {
  std::set<u64> s;
  for (const auto& r : run.records) s.insert(r.d);
  return s;
}

void arith_examples(Runner& R) {
  R.check("kronecker(5,4) = 1", [] { return is(kronecker(5, 4) == 1); });
  R.check("kronecker(12,2) = 0", [] { return is(kronecker(12, 2) == 0); });
  R.check("kronecker(5,2) = -1", [] { return is(kronecker(5, 2) == -1); });
  R.check("factor 12, 2, 45", [] {
    const SpfTable t(100);
    return is(t.factor(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}} &&
              t.factor(2).factors == std::vector<PrimePower>{{2, 1}} &&
              t.factor(45).factors == std::vector<PrimePower>{{3, 2}, {5, 1}});
  });
  R.check("factor above limit refused", [] { return throws<std::out_of_range>([] { SpfTable(100).factor(101); }); });
  R.check("sieve guard refused", [] { return throws<GuardError>([] { SpfTable(1000, 100); }); });
  R.check("squarefree_part 12, 1, 18", [] {
    return is(squarefree_part(12) == 3 && squarefree_part(1) == 1 && squarefree_part(18) == 2);
  });
  R.check("is_square 49, 5, 0", [] { return is(is_square(u64{49}) && !is_square(u64{5}) && is_square(u64{0})); });
  R.check("d_2(6) = 4", [] { return near(divisor_dk(2.0, factor_trial(6)), 4.0, 0.0); });
  R.check("d_k(p) = k", [] { return near(divisor_dk(1.7, factor_trial(13)), 1.7, 1e-15); });
  R.check("d_0.5(4) = 0.375", [] { return near(divisor_dk(0.5, factor_trial(4)), 0.375, 1e-15); });
}

void pell_examples(Runner& R) {
  R.check("within_bound(3,3)", [] { return is(within_bound(3, 3)); });
  R.check("within_bound(11,10) false", [] { return is(!within_bound(11, 10)); });
  R.check("within_bound(10,10)", [] { return is(within_bound(10, 10)); });
  R.check("d(3,1) = 5", [] { return is(discriminant_of_pair(3, 1) == std::optional<u64>(5)); });
  R.check("d(6,2) = 8", [] { return is(discriminant_of_pair(6, 2) == std::optional<u64>(8)); });
  R.check("d(4,2) empty", [] { return is(!discriminant_of_pair(4, 2)); });
  R.check("enumerate(10)", [] {
    const EnumerationRun run = enumerate(10);
    const std::set<u64> want{5, 8, 12, 21, 24, 32, 45, 60, 77, 96};
    return is(d_set(run) == want && run.pair_count == 11, "pairs " + show(run.pair_count));
  });
  R.check("enumerate(3)", [] {
    const EnumerationRun run = enumerate(3);
    return is(run.records.size() == 1 && run.records[0].d == 5 && run.records[0].t == 3 && run.records[0].u == 1);
  });
  R.check("density enumerate(10) = 1", [] { return near(density_report(enumerate(10)), 1.0, 0.0); });
  R.check("density enumerate(3) = 1/3", [] { return near(density_report(enumerate(3)), 1.0 / 3.0, 1e-15); });
  R.check("cache round trip x=10", [] {
    const EnumerationRun run = enumerate(10);
    const auto path = std::filesystem::temp_directory_path() / "pellclass-selftest.cache";
    cache_write(run, path);
    const EnumerationRun back = cache_read(path);
    std::filesystem::remove(path);
    return is(back == run);
  });
  R.check("cache empty file", [] { return throws<ParseError>([] { cache_parse(""); }); });
  R.check("cache record beyond x", [] {
    EnumerationRun run;
    run.x = 10;
    run.records.push_back({120, 11, 1, 0.0, std::nullopt, HMode::absent});
    return throws<IntegrityError>([&] { cache_parse(cache_serialize(run)); });
  });
}

void forms_examples(Runner& R) {
  R.check("reduced_forms(12)", [] {
    const std::vector<QuadForm> want{{-2, 2, 1}, {-1, 2, 2}, {1, 2, -2}, {2, 2, -1}};
    return is(reduced_forms(12) == want);
  });
  R.check("reduced_forms(5)", [] { return is(reduced_forms(5) == std::vector<QuadForm>{{-1, 1, 1}, {1, 1, -1}}); });
  R.check("reduced_forms(9) domain error", [] { return throws<DomainError>([] { reduced_forms(9); }); });
  R.check("rho d=12 (1,2,-2)", [] { return is(rho_step({1, 2, -2}, 12) == QuadForm{-2, 2, 1}); });
  R.check("rho d=12 (-2,2,1)", [] { return is(rho_step({-2, 2, 1}, 12) == QuadForm{1, 2, -2}); });
  R.check("rho d=5 (1,1,-1)", [] { return is(rho_step({1, 1, -1}, 5) == QuadForm{-1, 1, 1}); });
  R.check("rho rejects non-reduced", [] { return throws<ContractError>([] { rho_step({1, 0, -3}, 12); }); });
  R.check("h(5), h(8), h(12)", [] {
    return is(class_number_cycles(5) == 1 && class_number_cycles(8) == 1 && class_number_cycles(12) == 2);
  });
  R.check("L(1,chi_5) smoothed", [] { return near(l_smoothed(5, 1.0, 1e4).value, 0.4304, 0.01); });
  R.check("smoothed series leading term", [] {
    // (1 | n) = 1 for every n, so the series reduces to its weights.
    const SmoothedLSeries s(1.0, 10.0);
    const double v = s.evaluate(1).value;
    double want = 0.0;
    for (u64 n = s.terms(); n >= 1; --n) want += std::exp(-static_cast<double>(n) / 10.0) / static_cast<double>(n);
    return near(v, want, 1e-12);
  });
  R.check("h(8) from smoothed L rounds to 1", [] {
    DiscriminantRecord r{8, 6, 2, log_unit(6), std::nullopt, HMode::absent};
    return is(class_number_formula(r, l_smoothed(8, 1.0, 1e4).value).h_rounded == 1);
  });
  R.check("formula d=5, L=0.43041", [] {
    DiscriminantRecord r{5, 3, 1, log_unit(3), std::nullopt, HMode::absent};
    const FormulaClassNumber f = class_number_formula(r, 0.43041);
    return is(f.h_rounded == 1 && !f.unreliable && std::fabs(f.h_real - 1.0) < 1e-4, show(f.h_real));
  });
  R.check("formula d=12 inversion", [] {
    DiscriminantRecord r{12, 4, 1, log_unit(4), std::nullopt, HMode::absent};
    const FormulaClassNumber f = class_number_formula(r, 2.0 * r.log_eps / std::sqrt(12.0));
    return near(f.h_real, 2.0, 1e-12);
  });
  R.check("formula d=5, L=0.6 unreliable", [] {
    DiscriminantRecord r{5, 3, 1, log_unit(3), std::nullopt, HMode::absent};
    const FormulaClassNumber f = class_number_formula(r, 0.6);
    return is(f.unreliable && std::fabs(f.h_real - 1.394) < 1e-3, show(f.h_real));
  });
  R.check("hybrid d=5 auto -> exact", [] {
    const DiscriminantRecord r = class_number_hybrid({5, 3, 1, 0.0, std::nullopt, HMode::absent}, {});
    return is(r.h == std::optional<u64>(1) && r.h_mode == HMode::exact);
  });
  R.check("hybrid d=5 formula", [] {
    HybridOptions o;
    o.mode = HybridMode::formula;
    const DiscriminantRecord r = class_number_hybrid({5, 3, 1, 0.0, std::nullopt, HMode::absent}, o);
    return is(r.h == std::optional<u64>(1) && r.h_mode == HMode::formula);
  });
  R.check("hybrid d=9 domain error", [] {
    return throws<DomainError>([] { class_number_hybrid({9, 3, 1, 0.0, std::nullopt, HMode::absent}, {}); });
  });
}

void charsum_examples(Runner& R) {
  const CharSumCase c31 = make_case(1, 3, 1);
  R.check("P_{3,1}(0,1,2) = 5, 45, 117",
          [&] { return is(poly_eval(c31, 0) == 5 && poly_eval(c31, 1) == 45 && poly_eval(c31, 2) == 117); });
  R.check("C_3 = -1", [] { return is(charsum_bruteforce(make_case(3, 3, 1)) == -1); });
  R.check("C_2 = -2", [] { return is(charsum_bruteforce(make_case(2, 3, 1)) == -2); });
  R.check("C_1 = 1", [] { return is(charsum_bruteforce(make_case(1, 5, 1)) == 1); });
  R.check("closed m=3 -> -1/3", [] { return is(charsum_closed(make_case(3, 3, 1)) == Rational(-1, 3)); });
  R.check("closed m=9 -> 1/3", [] { return is(charsum_closed(make_case(9, 3, 1)) == Rational(1, 3)); });
  R.check("closed m=2 -> -1", [] { return is(charsum_closed(make_case(2, 3, 1)) == Rational(-1)); });
  R.check("brute guard", [] { return throws<GuardError>([] { charsum_bruteforce(make_case(2'000'000, 3, 1)); }); });
  R.check("ni_bruteforce(1) = (2,0,2)", [] {
    const NiCounts n = ni_bruteforce(1);
    return is(n.N0 == 2 && n.N1 == 0 && n.N2 == 2);
  });
  R.check("bf m odd, u=1", [] {
    const BFFactors f = bf_factors(3, 1);
    return is(f.B == 4 && f.F == Rational(1) && f.a_m == 4);
  });
  R.check("bf m=2, u=1", [] {
    const BFFactors f = bf_factors(2, 1);
    return is(f.B == -2 && f.a_m == -2 && f.F == Rational(1));
  });
}

void constants_examples(Runner& R) {
  R.check("g_k(1) = 1", [] { return near(gk(1, 1.3), 1.0, 0.0); });
  R.check("g_1(3) = -13/42", [] { return near(gk(3, 1.0), -13.0 / 42.0, 1e-15); });
  R.check("g_1(2) = -0.42912", [] {
    return near(gk(2, 1.0), -0.5 / (1.0 + 1.0 / 8 + 2.0 / 64 + 4.0 / 448), 1e-15);
  });
  R.check("C(0) = 35/16 at P = 1e6", [] { return near(C_of_k(0.0, 1'000'000).value, 35.0 / 16.0, 1e-10); });
  R.check("C(50) in (1, 1 + 1e-12)", [] {
    const double v = C_of_k(50.0, 1000).value;
    return is(v > 1.0 && v < 1.0 + 1e-12, show(v - 1.0));
  });
  R.check("C(1) P=1e3 vs 1e5 within tail bound", [] {
    const ConstantEval a = C_of_k(1.0, 1000), b = C_of_k(1.0, 100'000);
    return is(std::fabs(a.truncated - b.truncated) <= a.tail_bound);
  });
  R.check("local_H(3,1.5) closed vs series", [] {
    const double a = local_H(3, 1.5), b = oracle::local_H_series(3, 1.5);
    return is(std::fabs(a / b - 1.0) <= 1e-10, show(a) + " vs " + show(b));
  });
  R.check("H(1e-6) -> 35/16", [] { return near(H_of_k(1e-6, 100'000).value, 35.0 / 16.0, 1e-4); });
  R.check("H(1) P=1e4 vs 1e6", [] {
    const ConstantEval a = H_of_k(1.0, 10'000), b = H_of_k(1.0, 1'000'000);
    return is(std::fabs(a.value - b.value) <= a.tail_bound);
  });
  R.check("H(k) floor refusal", [] { return throws<DomainError>([] { H_of_k(100.0, 1000); }); });
  R.check("f(0) = 0", [] { return near(f_value(0.0), 0.0, 0.0); });
  R.check("f jumps by 1 at t = 1", [] {
    return near(f_value(std::nextafter(1.0, 0.0)) - f_value(1.0), 1.0, 1e-12);
  });
}

void moments_examples(Runner& R) {
  R.check("li(1e4) = 1246.14", [] { return near(li(1e4), 1246.14, 0.01); });
  R.check("li(2) = 1.045", [] { return near(li(2.0), 1.045, 0.001); });
  R.check("li(1e10) / (y / log y) within 12%", [] {
    const double y = 1e10;
    return is(std::fabs(li(y) / (y / std::log(y)) - 1.0) <= 0.12);
  });
  R.check("integral k -> 0 is x - 2", [] { return near(power_integral(1000.0, 1e-12), 998.0, 1e-6); });
  R.check("twisted prediction m=1, k=0", [] {
    return near(twisted_predicted(1e6, 0.0, 1) / 1e6, 35.0 / 16.0, 1e-10);
  });
  R.check("twisted prediction m=3, k=0", [] {
    const double g = -(1.0 / 3.0) / (1.0 + 2.0 / 8.0);
    return near(twisted_predicted(1e6, 0.0, 3), C_of_k(0.0).value * g * 1e6, 1e-6);
  });
  R.check("first moment at x=10 equals oracle sum", [] {
    EnumerationRun run = enumerate(10);
    u64 want = 0;
    for (auto& r : run.records) {
      want += oracle::class_number_digamma(r);
      r.h = class_number_cycles(r.d);
    }
    return near(empirical_moment(run, 1.0), static_cast<double>(want), 0.0);
  });
  R.check("zeroth moment is the record count", [] {
    EnumerationRun run = enumerate(10);
    for (auto& r : run.records) r.h = class_number_cycles(r.d);
    return near(empirical_moment(run, 0.0), 10.0, 0.0);
  });
  R.check("twisted m=1, k=0 is the record count", [] {
    return near(twisted_empirical(enumerate(100), 0.0, 1), static_cast<double>(enumerate(100).records.size()), 0.0);
  });
}

void tail_examples(Runner& R) {
  R.check("predicted_tail(A0) = exp(-1/A0)", [] {
    const double a0 = A0_value().value;
    return near(predicted_tail(a0), std::exp(-1.0 / a0), 1e-15);
  });
  R.check("predicted_tail(3) = 0.0522", [] { return near(predicted_tail(3.0), 0.05221, 1e-4); });
  R.check("E(5) = 1/2", [] { return is(E_of_d({5, 3, 1, 0.0, std::nullopt, HMode::absent}) == Rational(1, 2)); });
  R.check("E(8) = 3/8", [] { return is(E_of_d({8, 6, 2, 0.0, std::nullopt, HMode::absent}) == Rational(3, 8)); });
  R.check("e^gamma/3 = 0.593691", [] { return near(std::exp(kEulerGamma) / 3.0, 1.7810724179901979 / 3.0, 1e-15); });
  R.check("Littlewood ceiling is half of GRH", [] {
    const DiscriminantRecord r{12, 100, 0, log_unit(100), std::nullopt, HMode::absent};
    return near(conditional_bound(r, Regime::Littlewood) * 2.0, conditional_bound(r, Regime::GRH), 1e-12);
  });
  R.check("d=5 excluded from extremes", [] {
    EnumerationRun run = enumerate(3);
    run.records[0].h = 1;
    const ExtremeScan s = extreme_scan(run, 5);
    return is(s.top.empty() && s.excluded == 1);
  });
}

void exactness_suites(Runner& R, const SelftestOptions& o) {
  R.check("charsum closed form = brute force (m <= " + show(o.charsum_m_max) + ", u <= " + show(o.charsum_u_max) + ")",
          [&] {
            const CharsumVerification v = charsum_verify(o.charsum_m_max, o.charsum_u_max, o.threads);
            return is(v.mismatches == 0, show(v.rows.size()) + " cases, " + show(v.mismatches) + " mismatches");
          });
  R.check("N_i formula = brute force (u <= " + show(o.ni_u_max) + ")", [&] {
    for (u64 u = 1; u <= o.ni_u_max; ++u) {
      if (!(ni_formula(u) == ni_bruteforce(u))) return is(false, "u = " + show(u));
    }
    return is(true);
  });
  R.check("enumerate = Pell brute force (x <= " + show(o.oracle_x) + ")", [&] {
    const EnumerationRun a = enumerate(o.oracle_x);
    const EnumerationRun b = oracle::pell_bruteforce(o.oracle_x);
    if (a.records.size() != b.records.size() || a.pair_count != b.pair_count) {
      return is(false, show(a.records.size()) + "/" + show(b.records.size()) + " records, " + show(a.pair_count) +
                           "/" + show(b.pair_count) + " pairs");
    }
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      const auto &x = a.records[i], &y = b.records[i];
      if (x.d != y.d || x.t != y.t || x.u != y.u) return is(false, "first difference at d = " + show(x.d));
    }
    return is(true, show(a.records.size()) + " records");
  });
  R.check("reduced forms = scan, cycles = digamma class number (x = " + show(o.oracle_x) + ")", [&] {
    const EnumerationRun run = enumerate(o.oracle_x);
    for (const auto& r : run.records) {
      if (reduced_forms(r.d) != oracle::reduced_forms_scan(r.d)) return is(false, "forms differ at d = " + show(r.d));
      const u64 h = class_number_cycles(r.d);
      const u64 want = oracle::class_number_digamma(r);
      if (h != want) return is(false, "d = " + show(r.d) + ": cycles " + show(h) + ", oracle " + show(want));
    }
    return is(true, show(run.records.size()) + " discriminants");
  });
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options,
                                      const std::function<void(const CheckResult&)>& progress) {
  Runner R(progress);
  arith_examples(R);
  pell_examples(R);
  forms_examples(R);
  charsum_examples(R);
  constants_examples(R);
  moments_examples(R);
  tail_examples(R);
  exactness_suites(R, options);
  return R.take();
}

}  // namespace pellclass
