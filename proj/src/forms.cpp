#include "pellclass/forms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "pellclass/errors.hpp"
#include "pellclass/lseries.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass {

namespace {

bool form_order(const QuadForm& x, const QuadForm& y) { return x.b != y.b ? x.b < y.b : x.a < y.a; }

void divisors_of(const Factorization& f, std::vector<u64>& out) {
  out.assign(1, 1);
  for (const auto& pp : f.factors) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (unsigned j = 1; j <= pp.exponent; ++j) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
}

// Reducedness for |a| = a_abs and 0 < b with b^2 < d already known.
bool reduced_window(u64 a_abs, u64 b, u64 d) {
  const u128 two_a = static_cast<u128>(a_abs) * 2;
  const u128 hi = two_a + b;
  if (hi * hi <= d) return false;  // sqrt(d) - 2|a| < b fails
  if (two_a <= b) return true;
  const u128 lo = two_a - b;
  return lo * lo < d;              // 2|a| - sqrt(d) < b
}

QuadForm rho_unchecked(const QuadForm& f, u64 d, i64 s) {
  const i64 m = 2 * (f.c < 0 ? -f.c : f.c);
  const i64 r = ((s + f.b) % m + m) % m;
  const i64 b2 = s - r;
  const i128 num = static_cast<i128>(b2) * b2 - static_cast<i128>(d);
  return {f.c, b2, static_cast<i64>(num / (static_cast<i128>(4) * f.c))};
}

SpfTable table_for(u64 d) {
  const u64 n_max = d / 4 + 1;
  if (n_max <= 4'000'000) return SpfTable(std::max<u64>(n_max, 16));
  return SpfTable(isqrt(n_max) + 2);
}

}  // namespace

bool is_discriminant(u64 d) {
  const unsigned r = static_cast<unsigned>(d & 3);
  return d > 0 && (r == 0 || r == 1) && !is_square(d);
}

void require_discriminant(u64 d) {
  if (!is_discriminant(d)) {
    throw DomainError("d = " + std::to_string(d) + " is not a positive non-square discriminant");
  }
}

bool is_reduced(const QuadForm& f, u64 d) {
  if (f.b <= 0 || f.a == 0) return false;
  const u64 b = static_cast<u64>(f.b);
  if (static_cast<u128>(b) * b >= d) return false;
  return reduced_window(static_cast<u64>(f.a < 0 ? -f.a : f.a), b, d);
}

std::vector<QuadForm> reduced_forms(u64 d) {
  require_discriminant(d);
  return reduced_forms(d, table_for(d));
}

std::vector<QuadForm> reduced_forms(u64 d, const SpfTable& table) {
  require_discriminant(d);
  const u64 s = isqrt(d);
  std::vector<QuadForm> out;
  std::vector<u64> divs;
  for (u64 b = (d & 1) ? 1 : 2; b <= s; b += 2) {
    const u64 n = (d - b * b) / 4;
    divisors_of(table.factor_any(n), divs);
    for (const u64 a : divs) {
      if (!reduced_window(a, b, d)) continue;
      const u64 c = n / a;
      if (gcd(gcd(a, b), c) != 1) continue;
      const i64 ai = static_cast<i64>(a), bi = static_cast<i64>(b), ci = static_cast<i64>(c);
      out.push_back({ai, bi, -ci});
      out.push_back({-ai, bi, ci});
    }
  }
  std::sort(out.begin(), out.end(), form_order);
  return out;
}

QuadForm rho_step(const QuadForm& f, u64 d) {
  if (f.discriminant() != static_cast<i128>(d) || !is_reduced(f, d)) {
    throw ContractError("rho_step: form is not reduced of discriminant " + std::to_string(d));
  }
  return rho_unchecked(f, d, static_cast<i64>(isqrt(d)));
}

u64 class_number_cycles(u64 d) {
  require_discriminant(d);
  return class_number_cycles(d, table_for(d));
}

u64 class_number_cycles(u64 d, const SpfTable& table) {
  const std::vector<QuadForm> forms = reduced_forms(d, table);
  const i64 s = static_cast<i64>(isqrt(d));
  std::vector<bool> seen(forms.size(), false);
  u64 cycles = 0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    QuadForm g = forms[i];
    do {
      const auto it = std::lower_bound(forms.begin(), forms.end(), g, form_order);
      if (it == forms.end() || *it != g) {
        throw InvariantError("rho left the reduced set at d = " + std::to_string(d));
      }
      seen[static_cast<std::size_t>(it - forms.begin())] = true;
      g = rho_unchecked(g, d, s);
    } while (g != forms[i]);
  }
  return cycles;
}

FormulaClassNumber class_number_formula(const DiscriminantRecord& rec, double L) {
  if (!(L > 0.0)) throw DomainError("class_number_formula: L must be positive");
  const double log_eps = rec.log_eps > 0.0 ? rec.log_eps : log_unit(rec.t);
  FormulaClassNumber out;
  out.h_real = std::sqrt(static_cast<double>(rec.d)) * L / log_eps;
  const double r = std::max(1.0, std::nearbyint(out.h_real));
  out.h_rounded = static_cast<u64>(r);
  out.unreliable = std::fabs(out.h_real - r) > kRoundingTolerance;
  return out;
}

DiscriminantRecord class_number_hybrid(const DiscriminantRecord& rec, const HybridOptions& options,
                                       bool* unreliable) {
  require_discriminant(rec.d);
  DiscriminantRecord out = rec;
  if (out.log_eps <= 0.0) out.log_eps = log_unit(out.t);
  const bool exact = options.mode == HybridMode::exact ||
                     (options.mode == HybridMode::automatic && rec.d <= options.d_exact_max);
  if (unreliable) *unreliable = false;
  if (exact) {
    out.h = class_number_cycles(rec.d);
    out.h_mode = HMode::exact;
    return out;
  }
  FormulaClassNumber f = class_number_formula(out, l_smoothed(rec.d, 1.0, options.y).value);
  if (f.unreliable && options.y_escalate > options.y) {
    f = class_number_formula(out, l_smoothed(rec.d, 1.0, options.y_escalate).value);
  }
  if (unreliable) *unreliable = f.unreliable;
  out.h = f.h_rounded;
  out.h_mode = HMode::formula;
  return out;
}

HybridStats assign_class_numbers(EnumerationRun& run, const HybridOptions& options) {
  HybridStats stats;
  std::vector<std::size_t> exact_idx, formula_idx;
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    auto& r = run.records[i];
    require_discriminant(r.d);
    if (r.log_eps <= 0.0) r.log_eps = log_unit(r.t);
    const bool exact = options.mode == HybridMode::exact ||
                       (options.mode == HybridMode::automatic && r.d <= options.d_exact_max);
    (exact ? exact_idx : formula_idx).push_back(i);
  }

  if (!exact_idx.empty()) {
    u64 d_max = 0;
    for (const std::size_t i : exact_idx) d_max = std::max(d_max, run.records[i].d);
    const u64 n_max = d_max / 4 + 1;
    const SpfTable table(n_max <= SpfTable::kDefaultGuard ? std::max<u64>(n_max, 16) : isqrt(n_max) + 2);
    parallel_chunks(exact_idx.size(), options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        auto& r = run.records[exact_idx[j]];
        r.h = class_number_cycles(r.d, table);
        r.h_mode = HMode::exact;
      }
    }, 64);
    stats.exact = exact_idx.size();
  }

  if (!formula_idx.empty()) {
    std::vector<DiscriminantRecord> subset;
    subset.reserve(formula_idx.size());
    for (const std::size_t i : formula_idx) subset.push_back(run.records[i]);
    std::vector<double> L = SmoothedLSeries(1.0, options.y).evaluate_records(subset, options.threads);

    std::vector<std::size_t> flagged;
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (class_number_formula(subset[j], L[j]).unreliable) flagged.push_back(j);
    }
    if (!flagged.empty() && options.y_escalate > options.y) {
      std::vector<DiscriminantRecord> again;
      for (const std::size_t j : flagged) again.push_back(subset[j]);
      const std::vector<double> L2 =
          SmoothedLSeries(1.0, options.y_escalate).evaluate_records(again, options.threads);
      for (std::size_t q = 0; q < flagged.size(); ++q) L[flagged[q]] = L2[q];
      stats.escalated = flagged.size();
    }
    for (std::size_t j = 0; j < subset.size(); ++j) {
      const FormulaClassNumber f = class_number_formula(subset[j], L[j]);
      auto& r = run.records[formula_idx[j]];
      r.h = f.h_rounded;
      r.h_mode = HMode::formula;
      if (f.unreliable) ++stats.unreliable;
    }
    stats.formula = formula_idx.size();
  }
  return stats;
}

}  // namespace pellclass
