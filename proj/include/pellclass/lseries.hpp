#pragma once

// Smoothed Dirichlet series sum_{n<=N} d_k(n) chi_d(n)/n * exp(-n/y),
// N = ceil(y * log(y / 1e-12)).

#include <cstdint>
#include <span>
#include <vector>

#include "pellclass/arith.hpp"
#include "pellclass/pell.hpp"

namespace pellclass {

inline constexpr double kTailEps = 1e-12;

struct LApprox {
  u64 d = 0;
  double k = 1.0;
  double y = 0.0;
  double value = 0.0;
  u64 terms_used = 0;
};

u64 smoothed_terms(double y);

class SmoothedLSeries {
 public:
  /// Memory ceiling (bytes) for the quadratic-residue tables used by evaluate_records.
  static constexpr std::size_t kResidueTableGuard = std::size_t{512} << 20;

  SmoothedLSeries(double k, double y);

  double k() const noexcept { return k_; }
  double y() const noexcept { return y_; }
  u64 terms() const noexcept { return n_; }

  /// Any d > 0; the character at primes is computed by Kronecker symbols.
  LApprox evaluate(u64 d) const;

  /// Values for records given by their Pell pairs; d = (t^2 - 4)/u^2. Output order follows input.
  /// Results do not depend on `threads`.
  std::vector<double> evaluate_records(std::span<const DiscriminantRecord> records, unsigned threads = 1) const;

 private:
  double sum_with_prime_chars(std::vector<std::int8_t>& chi) const;

  double k_;
  double y_;
  u64 n_;
  std::vector<double> weight_;  // weight_[n] = d_k(n) e^{-n/y} / n
  std::vector<u32> spf_;
  std::vector<u32> cof_;        // n / spf(n)
  std::vector<u32> primes_;
};

LApprox l_smoothed(u64 d, double k, double y);

}  // namespace pellclass
