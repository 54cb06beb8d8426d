#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pellclass/arith.hpp"

namespace pellclass {

// Exact rational with 64-bit numerator/denominator, always reduced, den > 0.
// Intermediate products use 128 bits; results that do not fit throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const noexcept { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                     static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_wide(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 l = static_cast<i128>(a.num_) * b.den_;
    const i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_wide(n, d);
  }

  static Rational from_wide(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr i128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace pellclass
