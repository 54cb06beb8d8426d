#include "pellclass/tail.hpp"

#include <algorithm>
#include <cmath>

#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass {

namespace {

const double kExpE = std::exp(std::exp(1.0));

double log_eps_of(const DiscriminantRecord& r) { return r.log_eps > 0.0 ? r.log_eps : log_unit(r.t); }

}  // namespace

double tail_threshold(u64 x, double tau) {
  const double xd = static_cast<double>(x);
  return std::exp(kEulerGamma) / 3.0 * (xd / std::log(xd)) * tau;
}

double predicted_tail(double tau) {
  if (!(tau > 0.0)) throw DomainError("predicted_tail: tau must be positive");
  return std::exp(-std::exp(tau - A0_value().value) / tau);
}

TailReport empirical_tail(const EnumerationRun& run, double tau) {
  if (!(tau >= 0.5)) throw DomainError("empirical_tail: tau must be >= 0.5");
  if (run.records.empty()) throw ContractError("empirical_tail: empty run");
  TailReport rep;
  rep.x = run.x;
  rep.tau = tau;
  rep.threshold = tail_threshold(run.x, tau);
  rep.total = run.records.size();
  for (const auto& r : run.records) {
    if (!r.h) throw ContractError("empirical_tail: record d = " + std::to_string(r.d) + " has no class number");
    if (static_cast<double>(*r.h) >= rep.threshold) ++rep.count_above;
  }
  rep.empirical_proportion = static_cast<double>(rep.count_above) / static_cast<double>(rep.total);
  rep.predicted = predicted_tail(tau);
  return rep;
}

double unit_value(const DiscriminantRecord& rec) { return std::exp(log_eps_of(rec)); }

ExtremeScan extreme_scan(const EnumerationRun& run, std::size_t top_n) {
  ExtremeScan scan;
  std::vector<ExtremeRecord> all;
  for (const auto& r : run.records) {
    if (!r.h) throw ContractError("extreme_scan: record d = " + std::to_string(r.d) + " has no class number");
    const double le = log_eps_of(r);
    const double eps = std::exp(le);
    if (eps <= kExpE) {
      ++scan.excluded;
      continue;
    }
    const double ratio = 3.0 * static_cast<double>(*r.h) * le / (std::exp(kEulerGamma) * eps * std::log(le));
    all.push_back({r.d, r.t, r.u, *r.h, ratio});
  }
  scan.admissible = all.size();
  const auto better = [](const ExtremeRecord& a, const ExtremeRecord& b) {
    return a.ratio != b.ratio ? a.ratio > b.ratio : a.d < b.d;
  };
  const std::size_t n = std::min(top_n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), better);
  all.resize(n);
  scan.top = std::move(all);
  return scan;
}

Rational E_of_d(const DiscriminantRecord& rec) {
  if (rec.u == 0) throw DomainError("E(d): u must be positive");
  const i64 c2 = kronecker(static_cast<i64>(rec.d), 2);
  const i64 c3 = kronecker(static_cast<i64>(rec.d), 3);
  return Rational(6, static_cast<i64>(rec.u) * (2 - c2) * (3 - c3));
}

double conditional_bound(const DiscriminantRecord& rec, Regime regime) {
  const double le = log_eps_of(rec);
  const double eps = std::exp(le);
  if (!(eps > kExpE)) throw DomainError("conditional_bound: eps_d must exceed e^e");
  const double grh = 2.0 * std::exp(kEulerGamma) / 3.0 * eps * std::log(le) / le;
  return regime == Regime::GRH ? grh : grh / 2.0;
}

}  // namespace pellclass
