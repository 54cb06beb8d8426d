#include "pellclass/charsums.hpp"


#include "pellclass/errors.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass {

namespace {

ResidueClass classify(u64 d) {
  if (d % 4 == 0) return ResidueClass::D0;
  if (d % 8 == 1) return ResidueClass::D1;
  if (d % 8 == 5) return ResidueClass::D2;
  return ResidueClass::other;
}

bool admissible(u64 a, u64 u) {
  const u64 u2 = u * u;
  return a > 2 && a <= 4 * u2 + 2 && (a * a - 4) % u2 == 0;
}

}  // namespace

CharSumCase make_case(u64 m, u64 a, u64 u) {
  if (m == 0 || u == 0) throw DomainError("charsum case: m and u must be positive");
  if (!admissible(a, u)) {
    throw DomainError("charsum case: need 2 < a <= 4u^2 + 2 and u^2 | a^2 - 4 (a = " + std::to_string(a) +
                      ", u = " + std::to_string(u) + ")");
  }
  CharSumCase c;
  c.m = m;
  c.a = a;
  c.u = u;
  c.m_fact = factor_trial(m);
  c.e1 = c.m_fact.exponent_of(2);
  c.m0 = squarefree_part(m >> c.e1);
  c.d_au = (a * a - 4) / (u * u);
  c.residue_class = classify(c.d_au);
  c.in_D = c.residue_class != ResidueClass::other && !is_square(c.d_au);
  return c;
}

i64 poly_eval(const CharSumCase& c, i64 l) {
  const i64 u2 = static_cast<i64>(c.u * c.u);
  return 16 * u2 * l * l + 8 * static_cast<i64>(c.a) * l + static_cast<i64>(c.d_au);
}

i64 charsum_bruteforce(const CharSumCase& c) {
  if (c.m > kCharsumBruteGuard) {
    throw GuardError("charsum_bruteforce: m = " + std::to_string(c.m) + " exceeds guard " +
                     std::to_string(kCharsumBruteGuard));
  }
  i64 sum = 0;
  for (u64 l = 0; l < c.m; ++l) sum += kronecker(poly_eval(c, static_cast<i64>(l)), c.m);
  return sum;
}

Rational charsum_closed(const CharSumCase& c) {
  if (!c.in_D) throw DomainError("charsum_closed: d(a,u) = " + std::to_string(c.d_au) + " is not in D");
  if (gcd(c.m0, c.u) > 1) return Rational(0);
  i64 b = 1;
  if (c.e1 > 0) {
    switch (c.residue_class) {
      case ResidueClass::D0: b = 0; break;
      case ResidueClass::D1: b = 1; break;
      default: b = (c.e1 % 2 == 0) ? 1 : -1; break;
    }
  }
  if (b == 0) return Rational(0);
  const unsigned omega = static_cast<unsigned>(factor_trial(c.m0).omega());
  Rational v(omega % 2 == 0 ? b : -b, static_cast<i64>(c.m0));
  for (const auto& pp : c.m_fact.factors) {
    if (pp.prime == 2 || pp.exponent % 2 != 0) continue;
    const i64 p = static_cast<i64>(pp.prime);
    v *= Rational(p - 2, p);
    if (c.u % pp.prime == 0) v *= Rational(p - 1, p - 2);
  }
  return v;
}

NiCounts ni_formula(u64 u) {
  if (u == 0) throw DomainError("ni: u must be positive");
  NiCounts n;
  n.u = u;
  while (((u >> n.r1) & 1) == 0) ++n.r1;
  n.u0 = u >> n.r1;
  n.eta = static_cast<unsigned>(factor_trial(n.u0).omega());
  const u64 w = u64{1} << n.eta;
  n.N0 = (n.r1 == 0 ? 2 : n.r1 == 1 ? 4 : 8) * w;
  n.N1 = n.r1 >= 3 ? 4 * w : 0;
  n.N2 = n.r1 == 0 ? 2 * w : n.r1 >= 3 ? 4 * w : 0;
  return n;
}

NiCounts ni_bruteforce(u64 u) {
  if (u == 0) throw DomainError("ni: u must be positive");
  if (u > kNiBruteGuard) {
    throw GuardError("ni_bruteforce: u = " + std::to_string(u) + " exceeds guard " + std::to_string(kNiBruteGuard));
  }
  NiCounts n = ni_formula(u);
  n.N0 = n.N1 = n.N2 = 0;
  const u64 u2 = u * u;
  for (u64 a = 3; a <= 4 * u2 + 2; ++a) {
    if ((a * a - 4) % u2 != 0) continue;
    const u64 d = (a * a - 4) / u2;
    if (is_square(d)) continue;
    switch (classify(d)) {
      case ResidueClass::D0: ++n.N0; break;
      case ResidueClass::D1: ++n.N1; break;
      case ResidueClass::D2: ++n.N2; break;
      case ResidueClass::other: break;
    }
  }
  return n;
}

BFFactors bf_factors(u64 m, u64 u) {
  if (m == 0) throw DomainError("bf_factors: m must be positive");
  const NiCounts n = ni_formula(u);
  const Factorization f = factor_trial(m);
  const unsigned e1 = f.exponent_of(2);
  BFFactors out;
  const i64 sign = e1 % 2 == 0 ? 1 : -1;
  if (e1 == 0) {
    out.B = static_cast<i64>(n.N0 + n.N1 + n.N2);
    out.a_m = 4;
  } else {
    out.B = static_cast<i64>(n.N1) + sign * static_cast<i64>(n.N2);
    out.a_m = 2 * sign;
  }
  Rational F(out.B, out.a_m);
  for (const auto& pp : f.factors) {
    if (pp.prime == 2 || pp.exponent % 2 != 0 || u % pp.prime != 0) continue;
    const i64 p = static_cast<i64>(pp.prime);
    F *= Rational(p - 1, p - 2);
  }
  out.F = F;
  return out;
}

CharsumVerification charsum_verify(u64 m_max, u64 u_max, unsigned threads) {
  std::vector<std::vector<u64>> a_by_u(u_max + 1);
  for (u64 u = 1; u <= u_max; ++u) {
    for (u64 a = 3; a <= 4 * u * u + 2; ++a) {
      if (admissible(a, u) && make_case(1, a, u).in_D) a_by_u[u].push_back(a);
    }
  }
  CharsumVerification v;
  for (u64 m = 1; m <= m_max; ++m) {
    for (u64 u = 1; u <= u_max; ++u) {
      for (const u64 a : a_by_u[u]) v.rows.push_back({m, a, u, Rational(0), 0, false});
    }
  }
  parallel_chunks(v.rows.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CharsumRow& r = v.rows[i];
      const CharSumCase c = make_case(r.m, r.a, r.u);
      r.closed = charsum_closed(c);
      r.brute = charsum_bruteforce(c);
      r.match = r.closed * Rational(static_cast<i64>(r.m)) == Rational(r.brute);
    }
  }, 256);
  for (const auto& r : v.rows) v.mismatches += r.match ? 0 : 1;
  return v;
}

}  // namespace pellclass
