#include "pellclass/oracle.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <numeric>

#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass::oracle {

EnumerationRun pell_bruteforce(u64 x) {
  EnumerationRun run;
  run.x = x;
  for (u64 d = 5; d <= x * x; ++d) {
    if (!is_discriminant(d)) continue;
    bool first = true;
    for (u64 u = 1;; ++u) {
      const u64 t2 = d * u * u + 4;
      if (t2 > x * x) break;  // t > x
      if (!is_square(t2)) continue;
      const u64 t = isqrt(t2);
      ++run.pair_count;
      if (first) {
        DiscriminantRecord r;
        r.d = d;
        r.t = t;
        r.u = u;
        r.log_eps = std::log((static_cast<double>(t) + static_cast<double>(u) * std::sqrt(static_cast<double>(d))) / 2);
        run.records.push_back(r);
        first = false;
      }
    }
  }
  return run;
}

double L1_digamma(u64 d) {
  NeumaierSum s;
  const double dd = static_cast<double>(d);
  for (u64 a = 1; a <= d; ++a) {
    const int chi = kronecker_euler(static_cast<i64>(d), a);
    if (chi != 0) s.add(chi * boost::math::digamma(static_cast<double>(a) / dd));
  }
  return -s.value() / dd;
}

u64 class_number_digamma(const DiscriminantRecord& rec) {
  const double le = std::acosh(static_cast<double>(rec.t) / 2.0);
  return static_cast<u64>(std::llround(std::sqrt(static_cast<double>(rec.d)) * L1_digamma(rec.d) / le));
}

std::vector<QuadForm> reduced_forms_scan(u64 d) {
  const long double root = std::sqrt(static_cast<long double>(d));
  std::vector<QuadForm> out;
  for (i64 b = 1; static_cast<long double>(b) < root; ++b) {
    const i64 n4 = static_cast<i64>(d) - b * b;
    if (n4 % 4 != 0) continue;
    for (i64 a = 1; 2 * a < root + b; ++a) {
      if (!(root - 2 * a < b)) continue;
      if ((n4 / 4) % a != 0) continue;
      const i64 c = n4 / 4 / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({-a, b, c});
      out.push_back({a, b, -c});
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
    return x.b != y.b ? x.b < y.b : x.a < y.a;
  });
  return out;
}

namespace {

u64 pow_mod(u64 base, u64 e, u64 mod) {
  u128 r = 1, b = base % mod;
  while (e) {
    if (e & 1) r = r * b % mod;
    b = b * b % mod;
    e >>= 1;
  }
  return static_cast<u64>(r);
}

}  // namespace

int kronecker_euler(i64 d, u64 n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  for (const auto& pp : factor_trial(n).factors) {
    int s;
    if (pp.prime == 2) {
      const i64 r = ((d % 8) + 8) % 8;
      s = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
    } else {
      const i64 p = static_cast<i64>(pp.prime);
      const u64 a = static_cast<u64>(((d % p) + p) % p);
      if (a == 0) {
        s = 0;
      } else {
        s = pow_mod(a, (pp.prime - 1) / 2, pp.prime) == 1 ? 1 : -1;
      }
    }
    for (unsigned e = 0; e < pp.exponent; ++e) result *= s;
  }
  return result;
}

u64 ordered_factorizations(unsigned k, u64 n) {
  if (k == 0) return n == 1 ? 1 : 0;
  if (k == 1) return 1;
  u64 total = 0;
  for (u64 a = 1; a <= n; ++a) {
    if (n % a == 0) total += ordered_factorizations(k - 1, n / a);
  }
  return total;
}

double li_quadrature(double y) {
  const auto near = [](double t) {
    const double h = t - 1.0;
    if (std::fabs(h) < 1e-6) return 0.5 - h / 12.0;
    return 1.0 / std::log(t) - 1.0 / h;
  };
  const double li2 = integrate(near, 0.0, 1.0, 1e-13).value + integrate(near, 1.0, 2.0, 1e-13).value;
  if (y == 2.0) return li2;
  const auto far = [](double v) { return std::exp(v) / v; };
  return li2 + integrate(far, std::log(2.0), std::log(y), 1e-13).value;
}

double local_H_series(u64 p, double k) {
  const double pd = static_cast<double>(p);
  NeumaierSum s;
  s.add(1.0);
  for (unsigned a = 1; a < 10'000; ++a) {
    const double term = divisor_dk_prime_power(k, a) * gk_prime_power(p, a, k) * std::pow(pd, -static_cast<double>(a));
    s.add(term);
    if (a > k + 10 && std::fabs(term) < 1e-16 * std::fabs(s.value())) break;
  }
  return s.value() * (p == 2 ? c_two_factor(k) : c_prime_factor(p, k));
}

double H_direct_series(double k, u64 M) {
  const SpfTable table(M);
  NeumaierSum s;
  s.add(1.0);
  for (u64 m = 2; m <= M; ++m) {
    const Factorization f = table.factor(m);
    s.add(divisor_dk(k, f) * gk(f, k) / static_cast<double>(m));
  }
  return C_of_k(k).value * s.value();
}

}  // namespace pellclass::oracle
