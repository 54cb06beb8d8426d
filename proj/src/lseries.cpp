#include "pellclass/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pellclass/errors.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass {

namespace {

int kronecker_two(u64 d) {
  if ((d & 1) == 0) return 0;
  const unsigned r = static_cast<unsigned>(d & 7);
  return (r == 1 || r == 7) ? 1 : -1;
}

// Quadratic-residue bitsets for odd primes, storing residues 1..(p-1)/2 only.
class ResidueTables {
 public:
  explicit ResidueTables(std::span<const u32> odd_primes) {
    offset_.resize(odd_primes.size() + 1);
    u64 bits = 0;
    for (std::size_t i = 0; i < odd_primes.size(); ++i) {
      offset_[i] = bits;
      bits += (odd_primes[i] - 1) / 2;
    }
    offset_.back() = bits;
    words_.assign((bits + 63) / 64, 0);
    for (std::size_t i = 0; i < odd_primes.size(); ++i) {
      const u64 p = odd_primes[i];
      const u64 half = (p - 1) / 2;
      u64 sq = 0;
      for (u64 j = 1; j <= half; ++j) {
        sq += 2 * j - 1;  // j^2 mod p, incrementally
        if (sq >= p) sq -= p;
        if (sq >= p) sq -= p;
        const u64 r = sq <= half ? sq : p - sq;
        const bool neg = sq > half;
        // (p - r) is a residue; r is a residue iff -1 is.
        if (!neg || (p & 3) == 1) set(offset_[i] + r - 1);
      }
    }
    for (std::size_t i = 0; i < odd_primes.size(); ++i) minus_one_.push_back((odd_primes[i] & 3) == 1 ? 1 : -1);
  }

  static u64 bytes_needed(std::span<const u32> odd_primes) {
    u64 bits = 0;
    for (const u32 p : odd_primes) bits += (p - 1) / 2;
    return bits / 8 + 8 * odd_primes.size();
  }

  int legendre(std::size_t index, u64 p, u64 r) const {
    if (r == 0) return 0;
    const u64 half = (p - 1) / 2;
    if (r <= half) return get(offset_[index] + r - 1) ? 1 : -1;
    return get(offset_[index] + (p - r) - 1) ? minus_one_[index] : -minus_one_[index];
  }

 private:
  void set(u64 bit) { words_[bit >> 6] |= u64{1} << (bit & 63); }
  bool get(u64 bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1; }

  std::vector<u64> offset_;
  std::vector<u64> words_;
  std::vector<int> minus_one_;
};

}  // namespace

u64 smoothed_terms(double y) {
  if (!(y >= 2.0)) throw DomainError("smoothed series: y must be >= 2");
  return static_cast<u64>(std::ceil(y * std::log(y / kTailEps)));
}

SmoothedLSeries::SmoothedLSeries(double k, double y) : k_(k), y_(y), n_(smoothed_terms(y)) {
  if (!(k > 0.0)) throw DomainError("smoothed series: k must be positive");
  const SpfTable table(n_, std::max<u64>(n_, SpfTable::kDefaultGuard));
  spf_.resize(n_ + 1, 0);
  cof_.resize(n_ + 1, 0);
  for (u64 n = 2; n <= n_; ++n) {
    spf_[n] = table.spf(n);
    cof_[n] = static_cast<u32>(n / spf_[n]);
  }
  primes_.assign(table.primes().begin(), table.primes().end());

  std::vector<double> dk_pp(64);
  for (unsigned a = 0; a < dk_pp.size(); ++a) dk_pp[a] = divisor_dk_prime_power(k, a);
  std::vector<double> dk(n_ + 1, 1.0);
  std::vector<std::uint8_t> expo(n_ + 1, 0);
  std::vector<u32> rest(n_ + 1, 1);
  for (u64 n = 2; n <= n_; ++n) {
    const u32 p = spf_[n];
    const u32 m = cof_[n];
    if (m % p == 0) {
      expo[n] = static_cast<std::uint8_t>(expo[m] + 1);
      rest[n] = rest[m];
    } else {
      expo[n] = 1;
      rest[n] = m;
    }
    dk[n] = dk[rest[n]] * dk_pp[expo[n]];
  }
  weight_.resize(n_ + 1, 0.0);
  for (u64 n = 1; n <= n_; ++n) {
    const double nd = static_cast<double>(n);
    weight_[n] = dk[n] * std::exp(-nd / y) / nd;
  }
}

double SmoothedLSeries::sum_with_prime_chars(std::vector<std::int8_t>& chi) const {
  // Primes have spf = n and cof = 1, so chi[n] = chi[spf] * chi[cof] needs no branch.
  chi[1] = 1;
  std::int8_t* const c = chi.data();
  const u32* const spf = spf_.data();
  const u32* const cof = cof_.data();
  const double* const w = weight_.data();
  NeumaierSum total;
  total.add(w[1]);
  for (u64 lo = 2; lo <= n_; lo += kReductionBlock) {
    const u64 hi = std::min<u64>(n_ + 1, lo + kReductionBlock);
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    u64 n = lo;
    for (; n + 4 <= hi; n += 4) {
      for (unsigned j = 0; j < 4; ++j) {
        const std::int8_t v = static_cast<std::int8_t>(c[spf[n + j]] * c[cof[n + j]]);
        c[n + j] = v;
        acc[j] += w[n + j] * v;
      }
    }
    for (unsigned j = 0; n < hi; ++n, ++j) {
      const std::int8_t v = static_cast<std::int8_t>(c[spf[n]] * c[cof[n]]);
      c[n] = v;
      acc[j] += w[n] * v;
    }
    total.add((acc[0] + acc[1]) + (acc[2] + acc[3]));
  }
  return total.value();
}

LApprox SmoothedLSeries::evaluate(u64 d) const {
  if (d == 0) throw DomainError("smoothed series: d must be positive");
  std::vector<std::int8_t> chi(n_ + 1, 0);
  for (const u32 p : primes_) {
    chi[p] = p == 2 ? static_cast<std::int8_t>(kronecker_two(d))
                    : static_cast<std::int8_t>(jacobi32(static_cast<u32>(d % p), p));
  }
  LApprox out;
  out.d = d;
  out.k = k_;
  out.y = y_;
  out.terms_used = n_;
  out.value = sum_with_prime_chars(chi);
  return out;
}

std::vector<double> SmoothedLSeries::evaluate_records(std::span<const DiscriminantRecord> records,
                                                      unsigned threads) const {
  std::vector<double> out(records.size(), 0.0);
  if (records.empty()) return out;

  const std::span<const u32> odd(primes_.data() + 1, primes_.size() - 1);
  if (ResidueTables::bytes_needed(odd) > kResidueTableGuard) {
    parallel_chunks(records.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) out[i] = evaluate(records[i].d).value;
    }, 1);
    return out;
  }

  const ResidueTables qr(odd);
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return records[a].t < records[b].t; });

  parallel_chunks(order.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int8_t> chi(n_ + 1, 0);
    std::vector<std::int8_t> chi_t(odd.size(), 0);
    std::vector<u32> rm(odd.size()), rp(odd.size());
    u64 cur_t = 0;
    for (std::size_t pos = begin; pos < end; ++pos) {
      const DiscriminantRecord& rec = records[order[pos]];
      if (pos == begin || rec.t != cur_t) {
        const u64 t = rec.t;
        for (std::size_t i = 0; i < odd.size(); ++i) {
          const u64 p = odd[i];
          if (pos == begin) {
            rm[i] = static_cast<u32>((t - 2) % p);
            rp[i] = static_cast<u32>((t + 2) % p);
          } else {
            const u64 delta = t - cur_t;
            if (delta < p) {
              u64 a = rm[i] + delta;
              u64 b = rp[i] + delta;
              rm[i] = static_cast<u32>(a >= p ? a - p : a);
              rp[i] = static_cast<u32>(b >= p ? b - p : b);
            } else {
              rm[i] = static_cast<u32>((rm[i] + delta) % p);
              rp[i] = static_cast<u32>((rp[i] + delta) % p);
            }
          }
          chi_t[i] = static_cast<std::int8_t>(qr.legendre(i, p, rm[i]) * qr.legendre(i, p, rp[i]));
        }
        cur_t = t;
      }
      chi[2] = static_cast<std::int8_t>(kronecker_two(rec.d));
      for (std::size_t i = 0; i < odd.size(); ++i) chi[odd[i]] = chi_t[i];
      if (rec.u > 1) {
        // (t^2 - 4 | p) and (d | p) differ only at primes dividing u.
        for (const auto& pp : factor_trial(rec.u).factors) {
          if (pp.prime == 2 || pp.prime > n_) continue;
          chi[pp.prime] = static_cast<std::int8_t>(jacobi(rec.d % pp.prime, pp.prime));
        }
      }
      out[order[pos]] = sum_with_prime_chars(chi);
    }
  }, 1);
  return out;
}

LApprox l_smoothed(u64 d, double k, double y) { return SmoothedLSeries(k, y).evaluate(d); }

}  // namespace pellclass
