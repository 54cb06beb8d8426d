#pragma once

// Large class numbers: the tail proportion against exp(-e^{tau - A0}/tau),
// extreme values of h log eps / (eps log log eps), the quantity E(d) and the
// conditional ceilings for h(d).

#include <vector>

#include "pellclass/pell.hpp"
#include "pellclass/rational.hpp"

namespace pellclass {

/// (e^gamma / 3) (x / log x) tau.
double tail_threshold(u64 x, double tau);

/// exp(-e^{tau - A0} / tau).
double predicted_tail(double tau);

struct TailReport {
  u64 x = 0;
  double tau = 0.0;
  double threshold = 0.0;
  u64 count_above = 0;
  u64 total = 0;
  double empirical_proportion = 0.0;
  double predicted = 0.0;
};

/// Proportion of records with h >= threshold. Requires tau >= 0.5 and h on all records.
TailReport empirical_tail(const EnumerationRun& run, double tau);

struct ExtremeRecord {
  u64 d = 0;
  u64 t = 0;
  u64 u = 0;
  u64 h = 0;
  double ratio = 0.0;  // 3 h log eps / (e^gamma eps log log eps)
};

struct ExtremeScan {
  std::vector<ExtremeRecord> top;  // ratio descending, ties by smaller d
  u64 admissible = 0;
  u64 excluded = 0;                // eps <= e^e
};

ExtremeScan extreme_scan(const EnumerationRun& run, std::size_t top_n);

/// (1/u) (1 - chi(2)/2)^{-1} (1 - chi(3)/3)^{-1}.
Rational E_of_d(const DiscriminantRecord& rec);

enum class Regime { GRH, Littlewood };

/// (2 e^gamma / 3) eps log log eps / log eps under GRH, half of it under Littlewood's bound.
/// DomainError unless eps > e^e.
double conditional_bound(const DiscriminantRecord& rec, Regime regime);

double unit_value(const DiscriminantRecord& rec);

}  // namespace pellclass
