#pragma once

// Complete character sums C_m(P) = sum_{l mod m} (P(l) | m) for the quadratic
// P_{a,u}(l) = 16u^2 l^2 + 8a l + d(a,u), their closed form, and the residue
// counts N_0, N_1, N_2 of d(a,u) over 2 < a <= 4u^2 + 2.

#include <vector>

#include "pellclass/arith.hpp"
#include "pellclass/rational.hpp"

namespace pellclass {

enum class ResidueClass {
  D0,     // d = 0 mod 4
  D1,     // d = 1 mod 8
  D2,     // d = 5 mod 8
  other,  // d = 2, 3 mod 4
};

struct CharSumCase {
  u64 m = 1;
  u64 a = 3;
  u64 u = 1;
  Factorization m_fact;
  unsigned e1 = 0;   // exponent of 2 in m
  u64 m0 = 1;        // squarefree part of m / 2^e1
  u64 d_au = 0;
  bool in_D = false; // d_au is a non-square discriminant
  ResidueClass residue_class = ResidueClass::other;
};

/// Throws DomainError unless m >= 1, u >= 1, 2 < a <= 4u^2 + 2 and u^2 | a^2 - 4.
CharSumCase make_case(u64 m, u64 a, u64 u);

i64 poly_eval(const CharSumCase& c, i64 l);

inline constexpr u64 kCharsumBruteGuard = 1'000'000;
inline constexpr u64 kNiBruteGuard = 1'000;

/// Direct sum of Kronecker symbols; GuardError for m above kCharsumBruteGuard.
i64 charsum_bruteforce(const CharSumCase& c);

/// C_m / m exactly. DomainError when d(a,u) is not in D.
Rational charsum_closed(const CharSumCase& c);

struct NiCounts {
  u64 u = 1;
  unsigned r1 = 0;
  u64 u0 = 1;
  unsigned eta = 0;
  u64 N0 = 0;
  u64 N1 = 0;
  u64 N2 = 0;
  friend bool operator==(const NiCounts&, const NiCounts&) = default;
};

NiCounts ni_bruteforce(u64 u);
NiCounts ni_formula(u64 u);

struct BFFactors {
  i64 B = 0;
  Rational F;
  i64 a_m = 0;
};

BFFactors bf_factors(u64 m, u64 u);

struct CharsumRow {
  u64 m = 0;
  u64 a = 0;
  u64 u = 0;
  Rational closed;  // C_m / m
  i64 brute = 0;    // C_m
  bool match = false;
};

struct CharsumVerification {
  std::vector<CharsumRow> rows;  // ordered by (m, u, a)
  u64 mismatches = 0;
};

/// Every m <= m_max, u <= u_max and admissible a with d(a,u) in D.
CharsumVerification charsum_verify(u64 m_max, u64 u_max, unsigned threads = 1);

}  // namespace pellclass
