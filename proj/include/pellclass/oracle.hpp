#pragma once

// Slow, independent reference computations. Each one avoids the code path it
// is meant to check.

#include <vector>

#include "pellclass/forms.hpp"
#include "pellclass/pell.hpp"

namespace pellclass::oracle {

/// For every discriminant d <= x^2 solve t^2 - d u^2 = 4 by scanning u upward while t <= x.
/// Records carry the minimal solution; pair_count counts every solution with t <= x.
EnumerationRun pell_bruteforce(u64 x);

/// L(1, chi_d) = -(1/d) sum_{a=1}^{d} chi_d(a) digamma(a/d), exact up to rounding.
double L1_digamma(u64 d);

/// sqrt(d) L(1, chi_d) / log eps_d rounded, using L1_digamma.
u64 class_number_digamma(const DiscriminantRecord& rec);

/// Reduced primitive forms found by scanning all (a, b) in the reduced window, no factoring.
std::vector<QuadForm> reduced_forms_scan(u64 d);

/// Kronecker symbol from the factorization of n, Euler's criterion at odd primes.
int kronecker_euler(i64 d, u64 n);

/// Number of ordered k-tuples of positive integers with product n.
u64 ordered_factorizations(unsigned k, u64 n);

/// li(2) + integral of 1/log t over [2, y]; li(2) as the integral of 1/log t - 1/(t-1) over [0, 2].
double li_quadrature(double y);

/// sum_a d_k(p^a) g_k(p^a) / p^a times the prime's factor of C(k), summed until terms drop below 1e-16 of the total.
double local_H_series(u64 p, double k);

/// C(k) sum_{m <= M} d_k(m) g_k(m) / m.
double H_direct_series(double k, u64 M);

}  // namespace pellclass::oracle
