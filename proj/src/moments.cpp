#include "pellclass/moments.hpp"

#include <chrono>
#include <cmath>

#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/lseries.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass {

namespace {

double H_value(double k, u64 P) { return (P == 0 ? H_of_k(k) : H_of_k(k, P)).value; }

bool needs_class_numbers(const EnumerationRun& run) {
  for (const auto& r : run.records) {
    if (!r.h) return true;
  }
  return false;
}

void count_modes(const EnumerationRun& run, MomentReport& rep) {
  for (const auto& r : run.records) {
    if (r.h_mode == HMode::exact) ++rep.exact_h_count;
    if (r.h_mode == HMode::formula) ++rep.formula_h_count;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double li(double y) {
  if (!(y > 1.0)) throw DomainError("li: y must exceed 1");
  const double L = std::log(y);
  NeumaierSum series;
  double power = 1.0;  // L^n / (n! 2^{n-1})
  double inner = 0.0;  // sum_{j <= (n-1)/2} 1/(2j+1)
  for (int n = 1; n < 400; ++n) {
    power *= L / n;
    if (n > 1) power /= 2.0;
    if ((n - 1) % 2 == 0) inner += 1.0 / (n);  // adds 1/(2j+1) with 2j+1 = n
    const double term = (n % 2 == 1 ? 1.0 : -1.0) * power * inner;
    series.add(term);
    if (n > 2 * L && std::fabs(term) < 1e-18 * std::fabs(series.value())) break;
  }
  return kEulerGamma + std::log(L) + std::sqrt(y) * series.value();
}

double power_integral(double x, double k) {
  if (!(x >= 2.0)) throw DomainError("power_integral: x must be >= 2");
  if (!(k >= 0.0)) throw DomainError("power_integral: k must be >= 0");
  if (x == 2.0) return 0.0;
  // t = e^v, scaled by the endpoint value x^{k+1} / (log x)^k.
  const double L = std::log(x);
  const auto g = [&](double v) { return std::exp((k + 1.0) * (v - L) - k * std::log(v / L)); };
  const QuadratureResult r = integrate(g, std::log(2.0), L, 1e-11);
  return r.value * std::exp((k + 1.0) * L - k * std::log(L));
}

double main_term_integral(double x, double k, u64 P) { return H_value(k, P) * power_integral(x, k); }

double main_term_simple(double x, double k, u64 P) {
  const double L = std::log(x);
  return H_value(k, P) * std::exp((k + 1.0) * L - k * std::log(L)) / (k + 1.0);
}

double empirical_moment(const EnumerationRun& run, double k, unsigned threads) {
  for (const auto& r : run.records) {
    if (!r.h) throw ContractError("empirical_moment: record d = " + std::to_string(r.d) + " has no class number");
  }
  if (k == 0.0) return static_cast<double>(run.records.size());
  return deterministic_sum(run.records.size(), threads, [&](std::size_t i) {
    return std::pow(static_cast<double>(*run.records[i].h), k);
  });
}

double twisted_empirical(const EnumerationRun& run, double k, u64 m, unsigned threads) {
  if (m == 0) throw DomainError("twisted_empirical: m must be positive");
  return deterministic_sum(run.records.size(), threads, [&](std::size_t i) {
    const u64 d = run.records[i].d;
    const int chi = kronecker(static_cast<i64>(d), m);
    if (chi == 0) return 0.0;
    return k == 0.0 ? static_cast<double>(chi) : chi * std::exp(0.5 * k * std::log(static_cast<double>(d)));
  });
}

double twisted_predicted(double x, double k, u64 m) {
  if (!(k >= 0.0)) throw DomainError("twisted_predicted: k must be >= 0");
  return C_of_k(k).value / (k + 1.0) * gk(m, k) * std::pow(x, k + 1.0);
}

MomentReport twisted_report(const EnumerationRun& run, double k, u64 m, unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  MomentReport rep;
  rep.x = run.x;
  rep.k = k;
  rep.m = m;
  rep.kind = MomentKind::twisted;
  rep.empirical = twisted_empirical(run, k, m, threads);
  rep.predicted = twisted_predicted(static_cast<double>(run.x), k, m);
  rep.predicted_simple = rep.predicted;
  rep.ratio = rep.empirical / rep.predicted;
  rep.runtime_s = seconds_since(t0);
  return rep;
}

MomentReport moment_report(EnumerationRun& run, double k, u64 m, const MomentOptions& options) {
  if (!(k >= 0.0)) throw DomainError("moment_report: k must be >= 0");
  if (m == 0) throw DomainError("moment_report: m must be positive");
  if (!(m == 1 && k > 0.0)) return twisted_report(run, k, m, options.hybrid.threads);

  const auto t0 = std::chrono::steady_clock::now();
  MomentReport rep;
  if (needs_class_numbers(run)) rep.unreliable_count = assign_class_numbers(run, options.hybrid).unreliable;
  rep.x = run.x;
  rep.k = k;
  rep.m = m;
  rep.kind = MomentKind::class_number;
  const double x = static_cast<double>(run.x);
  rep.empirical = empirical_moment(run, k, options.hybrid.threads);
  rep.predicted = main_term_integral(x, k, options.P);
  rep.predicted_simple = main_term_simple(x, k, options.P);
  rep.ratio = rep.empirical / rep.predicted;
  count_modes(run, rep);
  rep.runtime_s = seconds_since(t0);
  return rep;
}

MomentReport moment_report(u64 x, double k, u64 m, const MomentOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  EnumerateOptions eo;
  eo.threads = options.hybrid.threads;
  EnumerationRun run = enumerate(x, eo);
  MomentReport rep = moment_report(run, k, m, options);
  rep.runtime_s = seconds_since(t0);
  return rep;
}

LMomentReport l_moment(const EnumerationRun& run, double y, unsigned threads) {
  const std::vector<double> L = SmoothedLSeries(1.0, y).evaluate_records(run.records, threads);
  LMomentReport rep;
  rep.x = run.x;
  rep.y = y;
  rep.empirical = deterministic_sum(run.records.size(), threads, [&](std::size_t i) {
    return L[i] * std::sqrt(static_cast<double>(run.records[i].d));
  });
  const double x = static_cast<double>(run.x);
  rep.predicted = H_of_k(1.0).value / 2.0 * x * x;
  rep.ratio = rep.empirical / rep.predicted;
  return rep;
}

}  // namespace pellclass
