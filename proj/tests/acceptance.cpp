// Acceptance runner. Usage: pellclass_acceptance [criterion ...]  (no arguments runs all)
// Prints one PASS/FAIL line per criterion; exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pellclass/charsums.hpp"
#include "pellclass/constants.hpp"
#include "pellclass/forms.hpp"
#include "pellclass/moments.hpp"
#include "pellclass/numeric.hpp"
#include "pellclass/pell.hpp"
#include "pellclass/tail.hpp"

#ifndef PELLCLASS_CLI_PATH
#define PELLCLASS_CLI_PATH "pellclass"
#endif

namespace pc = pellclass;
using pc::u64;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

// Independent reference for li(x): Ramanujan's series is the library method, so use
// li(x) = gamma + log log x + sum (log x)^n / (n n!).
double li_power_series(double x) {
  const double L = std::log(x);
  double term = 1.0, sum = 0.0;
  for (int n = 1; n < 400; ++n) {
    term *= L / n;
    sum += term / n;
    if (term / n < 1e-17 * sum) break;
  }
  return pc::kEulerGamma + std::log(L) + sum;
}

Outcome c01() {
  const auto v = pc::charsum_verify(120, 20, 1);
  return {v.mismatches == 0 && !v.rows.empty(),
          std::to_string(v.rows.size()) + " cases, " + std::to_string(v.mismatches) + " mismatches"};
}

Outcome c02() {
  u64 bad = 0;
  for (pc::u64 u = 1; u <= 300; ++u) {
    if (!(pc::ni_formula(u) == pc::ni_bruteforce(u))) ++bad;
  }
  return {bad == 0, "u <= 300, " + std::to_string(bad) + " mismatches"};
}

Outcome c03() {
  const double target = 35.0 / 16.0;
  const auto r6 = pc::enumerate(1'000'000);
  const double d6 = pc::density_report(r6);
  const double e6 = std::fabs(d6 / target - 1.0);
  const auto r7 = pc::enumerate(10'000'000);
  const double d7 = pc::density_report(r7);
  const double e7 = std::fabs(d7 / target - 1.0);
  return {e6 <= 0.02 && e7 <= 0.01, "x=1e6 density " + fmt(d6, 8) + " (rel " + fmt(e6, 3) + " <= 0.02); x=1e7 density " +
                                        fmt(d7, 8) + " (rel " + fmt(e7, 3) + " <= 0.01)"};
}

Outcome c04() {
  const auto c = pc::C_of_k(0.0, 1'000'000);
  const double err = std::fabs(c.value - 35.0 / 16.0);
  return {err <= 1e-10, "C(0) = " + fmt(c.value, 16) + ", |C(0) - 35/16| = " + fmt(err, 3) + " <= 1e-10"};
}

Outcome c05() {
  const auto a = pc::A0_value();
  const double err = std::fabs(a.value - 0.8187);
  return {err <= 5e-4, "A0 = " + fmt(a.value, 12) + ", |A0 - 0.8187| = " + fmt(err, 3) + " <= 5e-4"};
}

Outcome c06() {
  pc::EnumerationRun run = pc::enumerate(10'000);
  pc::HybridOptions h;
  h.mode = pc::HybridMode::exact;
  pc::assign_class_numbers(run, h);
  const double sum = pc::empirical_moment(run, 1.0);
  const double li = li_power_series(1e8);
  const double rel = std::fabs(sum / li - 1.0);
  return {rel <= 0.02, "sum h = " + fmt(sum, 12) + " over " + std::to_string(run.records.size()) +
                           " records, li(1e8) = " + fmt(li, 12) + ", rel " + fmt(rel, 3) + " <= 0.02"};
}

Outcome c07() {
  const pc::EnumerationRun base = pc::enumerate(2000);
  pc::EnumerationRun exact = base, formula = base;
  pc::HybridOptions e;
  e.mode = pc::HybridMode::exact;
  pc::assign_class_numbers(exact, e);
  pc::HybridOptions f;
  f.mode = pc::HybridMode::formula;
  f.y = 1e4;
  f.y_escalate = 1e5;
  const auto stats = pc::assign_class_numbers(formula, f);
  u64 mismatches = 0;
  std::string first;
  for (std::size_t i = 0; i < base.records.size(); ++i) {
    if (exact.records[i].h != formula.records[i].h) {
      if (mismatches < 3) {
        first += " d=" + std::to_string(base.records[i].d) + ":" + std::to_string(*exact.records[i].h) + "/" +
                 std::to_string(*formula.records[i].h);
      }
      ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(base.records.size()) + " records, " + std::to_string(stats.escalated) +
                               " escalated, " + std::to_string(stats.unreliable) + " still flagged, " +
                               std::to_string(mismatches) + " mismatches" + (first.empty() ? "" : " (cycle/formula" + first + ")")};
}

Outcome c08() {
  const std::vector<double> ks{1.0, 2.0};
  const std::map<double, double> halfwidth{{1.0, 0.1}, {2.0, 0.3}};
  std::map<double, double> r4, r5;
  std::string detail;
  for (const pc::u64 x : {10'000ull, 100'000ull}) {
    pc::EnumerationRun run = pc::enumerate(x);
    pc::MomentOptions mo;
    pc::assign_class_numbers(run, mo.hybrid);
    for (const double k : ks) {
      const auto rep = pc::moment_report(run, k, 1, mo);
      (x == 10'000 ? r4 : r5)[k] = rep.ratio;
      detail += " x=" + std::to_string(x) + " k=" + fmt(k, 2) + " ratio " + fmt(rep.ratio, 6) + " (" +
                std::to_string(rep.exact_h_count) + " exact, " + std::to_string(rep.formula_h_count) + " formula);";
    }
  }
  bool pass = true;
  for (const double k : ks) {
    pass = pass && std::fabs(r5[k] - 1.0) <= halfwidth.at(k) && std::fabs(r5[k] - 1.0) < std::fabs(r4[k] - 1.0);
  }
  return {pass, detail.substr(1)};
}

Outcome c09() {
  const pc::EnumerationRun run = pc::enumerate(1'000'000);
  bool pass = true;
  std::string detail;
  for (const auto& [k, m] : std::vector<std::pair<double, pc::u64>>{{0, 2}, {0, 3}, {0, 4}, {1, 3}}) {
    const auto rep = pc::twisted_report(run, k, m);
    const double g = pc::gk(m, k);
    const bool ok = rep.ratio >= 0.9 && rep.ratio <= 1.1 && std::signbit(rep.empirical) == std::signbit(g) && g != 0.0;
    pass = pass && ok;
    detail += " (k=" + fmt(k, 2) + ",m=" + std::to_string(m) + ") ratio " + fmt(rep.ratio, 6) + " sign " +
              (std::signbit(rep.empirical) ? "-" : "+") + "/" + (std::signbit(g) ? "-" : "+") + ";";
  }
  return {pass, detail.substr(1)};
}

Outcome c10() {
  const double h2 = pc::local_H(2, 40.0);
  const double e2 = std::fabs(h2 - 0.5);
  bool pass = e2 <= 1e-4;
  std::string detail = "|H_2(40) - 1/2| = " + fmt(e2, 3);
  for (const pc::u64 p : {11ull, 101ull}) {
    const double closed = pc::local_H(p, 40.0);
    const double main = pc::local_H_main(p, 40.0);
    const double rel = std::fabs(closed / main - 1.0);
    pass = pass && rel <= 1e-8;
    detail += "; p=" + std::to_string(p) + " rel " + fmt(rel, 3);
  }
  return {pass, detail};
}

Outcome c11() {
  std::vector<double> scaled;
  std::string detail;
  for (const double k : {100.0, 200.0, 400.0}) {
    const double r = pc::H_of_k(k).log_value - pc::logH_asymp(k);
    const double s = r * std::pow(std::log(k), 2) / k;
    scaled.push_back(s);
    detail += " k=" + fmt(k, 4) + ": " + fmt(s, 6) + ";";
  }
  double lo = std::fabs(scaled[0]), hi = lo;
  bool bounded = true, same_sign = true;
  for (const double s : scaled) {
    bounded = bounded && std::fabs(s) <= 5.0;
    same_sign = same_sign && std::signbit(s) == std::signbit(scaled[0]);
    lo = std::min(lo, std::fabs(s));
    hi = std::max(hi, std::fabs(s));
  }
  const double spread = lo > 0 ? hi / lo : INFINITY;
  return {bounded && same_sign && spread <= 3.0, detail.substr(1) + " max/min " + fmt(spread, 4) + " <= 3"};
}

Outcome c12() {
  const pc::EnumerationRun run = pc::enumerate(100'000);
  u64 e_viol = 0, chi_viol = 0, small_u = 0;
  const pc::Rational one(1);
  for (const auto& r : run.records) {
    if (one < pc::E_of_d(r)) ++e_viol;
    if (r.u <= 2) {
      ++small_u;
      if (pc::kronecker(static_cast<pc::i64>(r.d), 2) == 1 || pc::kronecker(static_cast<pc::i64>(r.d), 3) == 1) ++chi_viol;
    }
  }
  return {e_viol == 0 && chi_viol == 0, std::to_string(run.records.size()) + " records, " + std::to_string(e_viol) +
                                            " with E(d) > 1; " + std::to_string(small_u) + " with u <= 2, " +
                                            std::to_string(chi_viol) + " with chi(2) = 1 or chi(3) = 1"};
}

Outcome c13() {
  pc::EnumerationRun run = pc::enumerate(1'000'000);
  const auto stats = pc::assign_class_numbers(run, pc::HybridOptions{});
  bool pass = true;
  std::string detail = std::to_string(stats.exact) + " exact, " + std::to_string(stats.formula) + " formula;";
  for (const double tau : {1.0, 1.3, 1.6}) {
    const auto rep = pc::empirical_tail(run, tau);
    const double q = rep.count_above == 0 ? NAN : std::log(rep.empirical_proportion) / std::log(rep.predicted);
    pass = pass && q >= 0.5 && q <= 2.0;
    detail += " tau=" + fmt(tau, 3) + " empirical " + fmt(rep.empirical_proportion, 6) + " predicted " +
              fmt(rep.predicted, 6) + " log ratio " + fmt(q, 4) + ";";
  }
  return {pass, detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Outcome c14() {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "pellclass_determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"charsum", "charsum-verify --m-max 120 --u-max 20"},
      {"density", "density --x 1000000"},
      {"constants", "constants --k 0.5,1,2,40,100"},
      {"twisted", "twisted --x 1000000 --k 0,1 --m 3"},
      {"moments", "moments --x 10000 --k 1,2"},
      {"tail", "tail --x 10000 --tau-grid 1.0,1.3,1.6"},
      {"extremes", "extremes --x 10000 --top-n 25"},
  };
  bool pass = true;
  std::string detail;
  for (const auto& [name, args] : commands) {
    std::vector<std::string> outputs;
    for (const auto& [tag, threads] : std::vector<std::pair<std::string, int>>{{"a", 1}, {"b", 1}, {"c", 4}}) {
      const auto file = dir / (name + "_" + tag + ".csv");
      const std::string cmd = std::string("\"") + PELLCLASS_CLI_PATH + "\" " + args + " --threads " +
                              std::to_string(threads) + " --out \"" + file.string() + "\" 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) {
        pass = false;
        detail += " " + name + ": exit " + std::to_string(rc) + ";";
      }
      outputs.push_back(slurp(file));
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    pass = pass && same;
    detail += " " + name + (same ? " identical" : " DIFFERS") + " (" + std::to_string(outputs[0].size()) + " bytes);";
  }
  std::filesystem::remove_all(dir);
  return {pass, detail.substr(1)};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"character-sum closed form equals brute force", c01},
      {"residue counts equal brute force", c02},
      {"discriminant density near 35/16", c03},
      {"C(0) equals 35/16", c04},
      {"A0 value", c05},
      {"first moment with exact class numbers against li", c06},
      {"cycle class number equals rounded formula class number", c07},
      {"moment ratios for k = 1, 2 and their trend in x", c08},
      {"twisted sums against prediction with matching sign", c09},
      {"local factor asymptotics at k = 40", c10},
      {"large-k residual of log H(k) bounded and stable", c11},
      {"E(d) <= 1 and small-u character constraints", c12},
      {"tail proportions against prediction", c13},
      {"reports byte-identical across runs and thread counts", c14},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) {
    for (std::size_t i = 1; i <= criteria().size(); ++i) which.push_back(static_cast<int>(i));
  }
  int failed = 0;
  for (const int n : which) {
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::cerr << "unknown criterion " << n << '\n';
      return 2;
    }
    const auto& [name, fn] = criteria()[n - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %02d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
