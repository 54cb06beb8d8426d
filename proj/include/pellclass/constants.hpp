#pragma once

// Constants of the moment asymptotics: the multiplicative weights g_k, the
// Euler products C(k) and H(k) with their local factors, the integral
// constant A0 and the large-k main terms.

#include "pellclass/arith.hpp"

namespace pellclass {

enum class ConstantMethod { euler_product, direct_series, closed_form };

struct ConstantEval {
  double k = 0.0;
  u64 P = 0;
  double value = 0.0;
  double log_value = 0.0;
  double truncated = 0.0;   // plain product over p <= P
  double tail_bound = 0.0;  // certified bound on |infinite product - truncated|
  ConstantMethod method = ConstantMethod::euler_product;
};

struct A0Eval {
  double value = 0.0;
  double quadrature_error = 0.0;
};

/// g_k(p^a) for a prime p and a >= 0.
double gk_prime_power(u64 p, unsigned a, double k);
double gk(const Factorization& m, double k);
double gk(u64 m, double k);

/// 2-factor of C(k): 1 + 2^-s + 2*4^-s + 4/(4^s (2^s - 1)), s = k + 2.
double c_two_factor(double k);
/// Odd-prime factor 1 + 2/(p^s - 1).
double c_prime_factor(u64 p, double k);

inline constexpr u64 kMinTruncation = 1'000;

/// Euler product over p <= P, times the analytic tail factor over p > P
/// evaluated through the prime zeta function.
ConstantEval C_of_k(double k, u64 P = 1'000'000);

/// Local factor H_p(k) in closed form, and its logarithm (stable for large k).
double local_H(u64 p, double k);
double log_local_H(u64 p, double k);

/// Lemma-style main expression (1/2 - 3/(2p))(1-1/p)^-k + (1/2 - 1/(2p))(1+1/p)^-k + 2/p, p odd.
double local_H_main(u64 p, double k);

/// Smallest admissible truncation for H(k): max(10^3, 10 k^2).
u64 H_truncation_floor(double k);
/// Default truncation: max(10^5, 10 k^2).
u64 H_default_truncation(double k);

/// Product of local factors over p <= P, accumulated in log space. GuardError/DomainError on bad P.
ConstantEval H_of_k(double k, u64 P, unsigned threads = 1);
ConstantEval H_of_k(double k);

double f_value(double t);
A0Eval A0_value();

/// k log log k + k(gamma - log 3) + (A0 - 1) k / log k.
double logH_asymp(double k);

/// -k log(1 - 1/p) for p <= k^{2/3}, log cosh(k/p) above.
double Hp_asymp(u64 p, double k);

/// log cosh computed without overflow or cancellation.
double log_cosh(double t);

}  // namespace pellclass
