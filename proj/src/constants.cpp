#include "pellclass/constants.hpp"

#include <algorithm>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "pellclass/errors.hpp"
#include "pellclass/numeric.hpp"

namespace pellclass {

namespace {

double pow_neg(u64 p, double s) { return std::exp(-s * std::log(static_cast<double>(p))); }

double log_sum_exp(double a, double b, double c) {
  const double m = std::max({a, b, c});
  return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

int moebius(u64 n) {
  const Factorization f = factor_trial(n);
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return 0;
  }
  return f.omega() % 2 == 0 ? 1 : -1;
}

// sum over all primes of p^-sigma, sigma > 1, by Moebius inversion of log zeta.
double prime_zeta(double sigma) {
  NeumaierSum s;
  for (u64 j = 1; j * sigma < 80.0; ++j) {
    const int mu = moebius(j);
    if (mu == 0) continue;
    s.add(mu * std::log(boost::math::zeta(static_cast<double>(j) * sigma)) / static_cast<double>(j));
  }
  return s.value();
}

// sum over primes p > P of p^-sigma.
double prime_tail(double sigma, const std::vector<u32>& primes) {
  const double P = static_cast<double>(primes.back());
  if ((sigma - 1.0) * std::log(P) > 700.0) return 0.0;
  NeumaierSum partial;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) partial.add(pow_neg(*it, sigma));
  return std::max(0.0, prime_zeta(sigma) - partial.value());
}

}  // namespace

double c_two_factor(double k) {
  const double x = pow_neg(2, k + 2.0);
  return 1.0 + x + 2.0 * x * x + 4.0 * x * x * x / (1.0 - x);
}

double c_prime_factor(u64 p, double k) {
  const double x = pow_neg(p, k + 2.0);
  return 1.0 + 2.0 * x / (1.0 - x);
}

double gk_prime_power(u64 p, unsigned a, double k) {
  if (a == 0) return 1.0;
  const double s = k + 2.0;
  const double x = pow_neg(p, s);
  if (p == 2) {
    const double t2 = c_two_factor(k);
    if (a % 2 == 1) return -0.5 / t2;
    return 0.5 * (1.0 + 4.0 * x * x * x / (1.0 - x)) / t2;
  }
  const double pd = static_cast<double>(p);
  const double cp = 1.0 + 2.0 * x / (1.0 - x);
  if (a % 2 == 1) return -(1.0 / pd) / cp;
  return (1.0 - 2.0 / pd) * (1.0 + 2.0 * (pd - 1.0) * x / ((pd - 2.0) * (1.0 - x))) / cp;
}

double gk(const Factorization& m, double k) {
  double g = 1.0;
  for (const auto& pp : m.factors) g *= gk_prime_power(pp.prime, pp.exponent, k);
  return g;
}

double gk(u64 m, double k) {
  if (m == 0) throw DomainError("gk: m must be positive");
  return gk(factor_trial(m), k);
}

ConstantEval C_of_k(double k, u64 P) {
  if (!(k >= 0.0)) throw DomainError("C(k): k must be >= 0");
  if (P < kMinTruncation) throw DomainError("C(k): P must be >= " + std::to_string(kMinTruncation));
  const std::vector<u32> primes = primes_up_to(P);
  const double s = k + 2.0;
  NeumaierSum log_trunc;
  log_trunc.add(std::log(c_two_factor(k)));
  for (std::size_t i = 1; i < primes.size(); ++i) {
    const double x = pow_neg(primes[i], s);
    log_trunc.add(std::log1p(2.0 * x / (1.0 - x)));
  }
  // log((1 + q)/(1 - q)) = 2 (q + q^3/3 + ...), q = p^-s
  const double log_tail = 2.0 * (prime_tail(s, primes) + prime_tail(3.0 * s, primes) / 3.0);

  ConstantEval out;
  out.k = k;
  out.P = P;
  out.method = ConstantMethod::euler_product;
  out.truncated = std::exp(log_trunc.value());
  out.log_value = log_trunc.value() + log_tail;
  out.value = std::exp(out.log_value);
  const double Pd = static_cast<double>(P);
  out.tail_bound = out.truncated * std::expm1(4.0 / ((k + 1.0) * std::pow(Pd, k + 1.0) * std::log(Pd)));
  return out;
}

double log_local_H(u64 p, double k) {
  if (!(k > 0.0)) throw DomainError("local_H: k must be positive");
  if (p < 2) throw DomainError("local_H: p must be prime");
  const double s = k + 2.0;
  const double pd = static_cast<double>(p);
  const double log_x = -s * std::log(pd);
  const double x = std::exp(log_x);
  double lcA, lcB, lc0;
  if (p == 2) {
    const double log_eps2 = std::log(4.0) - s * std::log(4.0) - (s * std::log(2.0) + std::log1p(-x));
    const double eps2 = std::exp(log_eps2);
    lcA = log_eps2 - std::log(4.0);
    lcB = std::log((2.0 + eps2) / 4.0);
    lc0 = std::log(0.5 + x + 2.0 * x * x + eps2 / 2.0);
  } else {
    const double log_delta = std::log(2.0 * (pd - 1.0) / (pd - 2.0)) + log_x - std::log1p(-x);
    const double delta = std::exp(log_delta);
    lcA = p == 3 ? log_delta - std::log(6.0) : std::log((pd - 3.0) + (pd - 2.0) * delta) - std::log(2.0 * pd);
    lcB = std::log((1.0 - 2.0 / pd) * (1.0 + delta) / 2.0 + 1.0 / (2.0 * pd));
    lc0 = std::log(2.0 / pd) - std::log1p(-x);
  }
  const double lA = lcA - k * std::log1p(-1.0 / pd);
  const double lB = lcB - k * std::log1p(1.0 / pd);
  return log_sum_exp(lA, lB, lc0);
}

double local_H(u64 p, double k) { return std::exp(log_local_H(p, k)); }

double local_H_main(u64 p, double k) {
  const double pd = static_cast<double>(p);
  return (0.5 - 1.5 / pd) * std::pow(1.0 - 1.0 / pd, -k) + (0.5 - 0.5 / pd) * std::pow(1.0 + 1.0 / pd, -k) +
         2.0 / pd;
}

u64 H_truncation_floor(double k) {
  return std::max<u64>(kMinTruncation, static_cast<u64>(std::ceil(10.0 * k * k)));
}

u64 H_default_truncation(double k) {
  return std::max<u64>(100'000, static_cast<u64>(std::ceil(10.0 * k * k)));
}

ConstantEval H_of_k(double k, u64 P, unsigned threads) {
  if (!(k > 0.0)) throw DomainError("H(k): k must be positive");
  const u64 floor = H_truncation_floor(k);
  if (P < floor) {
    throw DomainError("H(k): P = " + std::to_string(P) + " is below the floor " + std::to_string(floor) +
                      " = max(1000, 10 k^2)");
  }
  const std::vector<u32> primes = primes_up_to(P);
  const double log_h = deterministic_sum(primes.size(), threads, [&](std::size_t i) {
    return log_local_H(primes[i], k);
  });
  ConstantEval out;
  out.k = k;
  out.P = P;
  out.method = ConstantMethod::euler_product;
  out.log_value = log_h;
  out.value = std::exp(log_h);
  out.truncated = out.value;
  const double Pd = static_cast<double>(P);
  out.tail_bound =
      out.value * std::expm1(2.0 * k * k / (Pd * std::log(Pd)) + 4.0 / ((k + 1.0) * std::pow(Pd, k + 1.0)));
  return out;
}

ConstantEval H_of_k(double k) { return H_of_k(k, H_default_truncation(k)); }

double log_cosh(double t) {
  t = std::fabs(t);
  if (t < 1e-4) {
    const double t2 = t * t;
    return t2 / 2.0 - t2 * t2 / 12.0;
  }
  if (t < 1.0) {
    const double sh = std::sinh(t / 2.0);
    return std::log1p(2.0 * sh * sh);
  }
  return t + std::log1p(std::exp(-2.0 * t)) - std::log(2.0);
}

double f_value(double t) {
  if (!(t >= 0.0)) throw DomainError("f: t must be >= 0");
  if (t < 1.0) return log_cosh(t);
  return std::log1p(std::exp(-2.0 * t)) - std::log(2.0);
}

A0Eval A0_value() {
  static const A0Eval cached = [] {
    constexpr double kUpper = 40.0;
    const auto near = [](double t) {
      if (t < 1e-4) return 0.5 - t * t / 12.0;
      return log_cosh(t) / (t * t);
    };
    // log cosh t - t = log(1 + e^{-2t}) - log 2 on [1, oo); the log 2 part integrates to -log 2.
    const auto far = [](double t) { return std::log1p(std::exp(-2.0 * t)) / (t * t); };
    const QuadratureResult i1 = integrate(near, 0.0, 1.0, 1e-13);
    const QuadratureResult i2 = integrate(far, 1.0, kUpper, 1e-13);
    A0Eval a;
    a.value = i1.value + i2.value - std::log(2.0) + 1.0;
    a.quadrature_error = i1.error + i2.error + std::exp(-2.0 * kUpper) / kUpper;
    if (!(a.quadrature_error < 1e-8)) {
      throw std::runtime_error("A0: quadrature did not converge, error estimate " +
                               std::to_string(a.quadrature_error));
    }
    return a;
  }();
  return cached;
}

double logH_asymp(double k) {
  if (!(k >= 10.0)) throw DomainError("logH_asymp: k must be >= 10");
  const double lk = std::log(k);
  return k * std::log(lk) + k * (kEulerGamma - std::log(3.0)) + (A0_value().value - 1.0) * k / lk;
}

double Hp_asymp(u64 p, double k) {
  if (p < 5) throw DomainError("Hp_asymp: p must be >= 5");
  if (!(k >= 10.0)) throw DomainError("Hp_asymp: k must be >= 10");
  const double pd = static_cast<double>(p);
  if (pd <= std::pow(k, 2.0 / 3.0)) return -k * std::log1p(-1.0 / pd);
  return log_cosh(k / pd);
}

}  // namespace pellclass
