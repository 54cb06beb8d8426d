#pragma once

// Class numbers of positive discriminants: exact, by counting rho-cycles of
// reduced indefinite forms under proper equivalence, and approximate, through
// h = sqrt(d) L(1, chi_d) / log eps_d with a smoothed L-series.

#include <optional>
#include <vector>

#include "pellclass/arith.hpp"
#include "pellclass/pell.hpp"

namespace pellclass {

struct QuadForm {
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;

  i128 discriminant() const { return static_cast<i128>(b) * b - static_cast<i128>(4) * a * c; }
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

/// d > 0, d = 0 or 1 mod 4, not a square.
bool is_discriminant(u64 d);

/// Throws DomainError unless is_discriminant(d).
void require_discriminant(u64 d);

/// |sqrt(d) - 2|a|| < b < sqrt(d), by integer comparisons.
bool is_reduced(const QuadForm& f, u64 d);

/// Primitive reduced forms of discriminant d, sorted by (b, a).
std::vector<QuadForm> reduced_forms(u64 d);
/// Same; `table` must satisfy limit^2 >= d/4 (factorizations of (d - b^2)/4).
std::vector<QuadForm> reduced_forms(u64 d, const SpfTable& table);

/// (a, b, c) -> (c, b', (b'^2 - d)/(4c)) with b' = -b mod 2|c| in (sqrt(d) - 2|c|, sqrt(d)).
/// Throws ContractError for a non-reduced input.
QuadForm rho_step(const QuadForm& f, u64 d);

u64 class_number_cycles(u64 d);
u64 class_number_cycles(u64 d, const SpfTable& table);

struct FormulaClassNumber {
  double h_real = 0.0;
  u64 h_rounded = 0;
  bool unreliable = false;  // |h_real - h_rounded| > kRoundingTolerance
};

inline constexpr double kRoundingTolerance = 0.35;

FormulaClassNumber class_number_formula(const DiscriminantRecord& rec, double L);

enum class HybridMode { exact, formula, automatic };

struct HybridOptions {
  HybridMode mode = HybridMode::automatic;
  u64 d_exact_max = 1'000'000;
  double y = 1e4;
  double y_escalate = 0;  // second attempt for unreliable roundings when > y; 0 disables
  unsigned threads = 1;
};

/// Single record; `unreliable` (if given) receives the final flag of a formula evaluation.
DiscriminantRecord class_number_hybrid(const DiscriminantRecord& rec, const HybridOptions& options,
                                       bool* unreliable = nullptr);

struct HybridStats {
  u64 exact = 0;
  u64 formula = 0;
  u64 escalated = 0;    // formula records re-evaluated at y_escalate
  u64 unreliable = 0;   // still flagged after escalation
};

/// Sets h on every record of the run. Independent of options.threads.
HybridStats assign_class_numbers(EnumerationRun& run, const HybridOptions& options);

}  // namespace pellclass
