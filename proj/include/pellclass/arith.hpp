#pragma once

// Exact integer primitives: Kronecker symbol, integer square roots,
// smallest-prime-factor sieve, factorization, squarefree parts and the
// real-order divisor function d_k.

#include <cstdint>
#include <span>
#include <vector>

namespace pellclass {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

/// Kronecker symbol (d|n) for n >= 0. (d|0) is 1 when |d| = 1 and 0 otherwise.
int kronecker(i64 d, u64 n);

/// Jacobi symbol (a|n) for odd n; a is reduced modulo n first.
int jacobi(u64 a, u64 n);

/// Legendre/Jacobi symbol on 32-bit operands with a < n, n odd.
int jacobi32(u32 a, u32 n);

u64 isqrt(u64 n);
u64 isqrt(u128 n);
bool is_square(u64 n);
bool is_square(u128 n);

u64 gcd(u64 a, u64 b);

struct PrimePower {
  u64 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes, exponents >= 1

  unsigned exponent_of(u64 p) const;
  std::size_t omega() const { return factors.size(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Multiplies two factorizations (merge of sorted prime lists).
Factorization multiply(const Factorization& a, const Factorization& b);

/// Trial-division factorization; fine for n up to ~10^12.
Factorization factor_trial(u64 n);

/// Table of smallest prime factors on [0, limit], 32-bit cells.
class SpfTable {
 public:
  static constexpr u64 kDefaultGuard = 25'000'000;

  /// Throws GuardError when limit exceeds guard.
  explicit SpfTable(u64 limit, u64 guard = kDefaultGuard);

  u64 limit() const noexcept { return limit_; }
  u32 spf(u64 n) const { return spf_[n]; }
  std::span<const u32> primes() const noexcept { return primes_; }

  /// Requires 2 <= n <= limit (n = 1 yields the empty factorization); throws std::out_of_range otherwise.
  Factorization factor(u64 n) const;

  /// Any n <= limit^2: table lookup below the limit, trial division by the sieved primes above it.
  Factorization factor_any(u64 n) const;

 private:
  u64 limit_;
  std::vector<u32> spf_;
  std::vector<u32> primes_;
};

/// Primes p <= limit by a plain sieve of Eratosthenes.
std::vector<u32> primes_up_to(u64 limit);

/// Product of the primes dividing n to an odd power.
u64 squarefree_part(const Factorization& f);
u64 squarefree_part(u64 n);

/// d_k(p^a) = Gamma(k+a)/(Gamma(k) a!) via the product recurrence.
double divisor_dk_prime_power(double k, unsigned a);
double divisor_dk(double k, const Factorization& f);
double divisor_dk(double k, u64 n, const SpfTable& table);

/// Number of divisors of n (the classical d(n)).
u64 divisor_count(const Factorization& f);

}  // namespace pellclass
