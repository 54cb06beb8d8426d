#include "pellclass/arith.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "pellclass/errors.hpp"

namespace pellclass {

int jacobi(u64 a, u64 n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    const int v = std::countr_zero(a);
    a >>= v;
    if ((v & 1) != 0) {
      const u64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

int jacobi32(u32 a, u32 n) {
  int result = 1;
  while (a != 0) {
    const int v = std::countr_zero(a);
    a >>= v;
    if ((v & 1) != 0) {
      const u32 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    const u32 t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? result : 0;
}

int kronecker(i64 d, u64 n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if ((n & 1) == 0) {
    if ((d & 1) == 0) return 0;
    const int v = std::countr_zero(n);
    n >>= v;
    if ((v & 1) != 0) {
      const i64 r = ((d % 8) + 8) % 8;
      if (r == 3 || r == 5) result = -result;
    }
  }
  if (n == 1) return result;
  const i64 sn = static_cast<i64>(n);
  const u64 a = static_cast<u64>(((d % sn) + sn) % sn);
  return result * jacobi(a, n);
}

u64 isqrt(u64 n) {
  if (n < 2) return n;
  const int bits = 64 - std::countl_zero(n);
  u64 x = u64{1} << ((bits + 1) / 2);
  while (true) {
    const u64 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

u64 isqrt(u128 n) {
  if (n < 2) return static_cast<u64>(n);
  int bits = 0;
  for (u128 m = n; m != 0; m >>= 1) ++bits;
  u128 x = u128{1} << ((bits + 1) / 2);
  while (true) {
    const u128 y = (x + n / x) / 2;
    if (y >= x) return static_cast<u64>(x);
    x = y;
  }
}

bool is_square(u64 n) {
  const u64 r = isqrt(n);
  return r * r == n;
}

bool is_square(u128 n) {
  const u128 r = isqrt(n);
  return r * r == n;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned Factorization::exponent_of(u64 p) const {
  for (const auto& pp : factors) {
    if (pp.prime == p) return pp.exponent;
    if (pp.prime > p) break;
  }
  return 0;
}

Factorization multiply(const Factorization& a, const Factorization& b) {
  Factorization out;
  out.n = a.n * b.n;
  out.factors.reserve(a.factors.size() + b.factors.size());
  auto i = a.factors.begin();
  auto j = b.factors.begin();
  while (i != a.factors.end() || j != b.factors.end()) {
    if (j == b.factors.end() || (i != a.factors.end() && i->prime < j->prime)) {
      out.factors.push_back(*i++);
    } else if (i == a.factors.end() || j->prime < i->prime) {
      out.factors.push_back(*j++);
    } else {
      out.factors.push_back({i->prime, i->exponent + j->exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

Factorization factor_trial(u64 n) {
  if (n == 0) throw DomainError("factor_trial: n must be positive");
  Factorization f;
  f.n = n;
  auto strip = [&](u64 p) {
    if (n % p != 0) return;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (u64 p = 5; p * p <= n; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

SpfTable::SpfTable(u64 limit, u64 guard) : limit_(limit) {
  if (limit > guard) {
    throw GuardError("SpfTable: limit " + std::to_string(limit) + " exceeds memory guard " +
                     std::to_string(guard));
  }
  spf_.assign(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<u32>(i);
    primes_.push_back(static_cast<u32>(i));
    if (i * i > limit) continue;
    for (u64 j = i * i; j <= limit; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<u32>(i);
    }
  }
}

Factorization SpfTable::factor(u64 n) const {
  if (n == 0 || n > limit_) {
    throw std::out_of_range("SpfTable::factor: " + std::to_string(n) + " outside [1, " +
                            std::to_string(limit_) + "]");
  }
  Factorization f;
  f.n = n;
  while (n > 1) {
    const u32 p = spf_[n];
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    f.factors.push_back({p, e});
  }
  return f;
}

Factorization SpfTable::factor_any(u64 n) const {
  if (n <= limit_) return factor(n);
  if (n / limit_ > limit_) {
    throw std::out_of_range("SpfTable::factor_any: " + std::to_string(n) + " exceeds limit^2");
  }
  Factorization f;
  f.n = n;
  for (const u32 p : primes_) {
    if (u64{p} * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
    if (n <= limit_) {
      Factorization rest = factor(n);
      f.factors.insert(f.factors.end(), rest.factors.begin(), rest.factors.end());
      return f;
    }
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

std::vector<u32> primes_up_to(u64 limit) {
  std::vector<u32> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<u32>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

u64 squarefree_part(const Factorization& f) {
  u64 r = 1;
  for (const auto& pp : f.factors) {
    if ((pp.exponent & 1) != 0) r *= pp.prime;
  }
  return r;
}

u64 squarefree_part(u64 n) { return squarefree_part(factor_trial(n)); }

double divisor_dk_prime_power(double k, unsigned a) {
  double v = 1.0;
  for (unsigned j = 1; j <= a; ++j) v *= (k + j - 1) / j;
  return v;
}

double divisor_dk(double k, const Factorization& f) {
  double v = 1.0;
  for (const auto& pp : f.factors) v *= divisor_dk_prime_power(k, pp.exponent);
  return v;
}

double divisor_dk(double k, u64 n, const SpfTable& table) { return divisor_dk(k, table.factor_any(n)); }

u64 divisor_count(const Factorization& f) {
  u64 c = 1;
  for (const auto& pp : f.factors) c *= pp.exponent + 1;
  return c;
}

}  // namespace pellclass
