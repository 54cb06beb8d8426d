#pragma once

// Empirical moment sums over the enumerated discriminants and their predicted
// main terms.

#include <vector>

#include "pellclass/forms.hpp"
#include "pellclass/pell.hpp"

namespace pellclass {

/// Principal-value logarithmic integral (Ramanujan's series).
double li(double y);

/// Integral of (t / log t)^k over [2, x].
double power_integral(double x, double k);

/// H(k) * power_integral(x, k), with H truncated at P (0 selects the default).
double main_term_integral(double x, double k, u64 P = 0);

/// H(k) x^{k+1} / ((k+1) (log x)^k).
double main_term_simple(double x, double k, u64 P = 0);

/// Sum of h(d)^k; ContractError naming the first record without h.
double empirical_moment(const EnumerationRun& run, double k, unsigned threads = 1);

/// Sum of (d | m) d^{k/2}.
double twisted_empirical(const EnumerationRun& run, double k, u64 m, unsigned threads = 1);

/// C(k)/(k+1) g_k(m) x^{k+1}.
double twisted_predicted(double x, double k, u64 m);

enum class MomentKind { class_number, twisted };

struct MomentReport {
  u64 x = 0;
  double k = 0.0;
  u64 m = 1;
  MomentKind kind = MomentKind::twisted;
  double empirical = 0.0;
  double predicted = 0.0;
  double predicted_simple = 0.0;
  double ratio = 0.0;
  u64 exact_h_count = 0;
  u64 formula_h_count = 0;
  u64 unreliable_count = 0;
  double runtime_s = 0.0;
};

struct MomentOptions {
  HybridOptions hybrid;
  u64 P = 0;  // truncation for H(k); 0 selects the default
};

/// m = 1 and k > 0: class-number moment; otherwise the twisted sum.
/// Class numbers are assigned to the run when they are needed and missing.
MomentReport moment_report(EnumerationRun& run, double k, u64 m, const MomentOptions& options);
MomentReport moment_report(u64 x, double k, u64 m, const MomentOptions& options);

/// Always the twisted sum, for any (k, m).
MomentReport twisted_report(const EnumerationRun& run, double k, u64 m, unsigned threads = 1);

struct LMomentReport {
  u64 x = 0;
  double y = 0.0;
  double empirical = 0.0;  // sum of L(1, chi_d) sqrt(d), smoothed L
  double predicted = 0.0;  // H(1)/2 x^2
  double ratio = 0.0;
};

LMomentReport l_moment(const EnumerationRun& run, double y, unsigned threads = 1);

}  // namespace pellclass
