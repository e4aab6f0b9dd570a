#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dp7 {

// Exact fractions over int64 for the piecewise-linear threshold bounds.
// Magnitudes stay tiny (numerators and denominators of small case bounds),
// so overflow checks are plain asserts on the gcd-reduced form.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(Rational a, Rational b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(Rational a, Rational b) { return !(a == b); }
  friend bool operator<(Rational a, Rational b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(Rational a, Rational b) { return a < b || a == b; }
  friend bool operator>(Rational a, Rational b) { return b < a; }
  friend bool operator>=(Rational a, Rational b) { return b <= a; }
};

inline Rational rational_min(Rational a, Rational b) { return a <= b ? a : b; }
inline Rational rational_max(Rational a, Rational b) { return a >= b ? a : b; }

}  // namespace dp7
