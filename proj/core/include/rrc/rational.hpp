#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rrc {

// Exact rational arithmetic on a 64-bit numerator and denominator.
// All intermediate products run in 128-bit; any result that does not fit
// back into 64 bits after reduction throws std::overflow_error.  The solvers
// prefer a hard error over a silently wrong value.
class Rational {
public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long value) : num_(value), den_(1) {}
  Rational(long long num, long long den) { *this = make(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;  // num_ > INT64_MIN by construction, negation is safe
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Cross products of values bounded by 2^63 fit comfortably in 128 bits.
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "p" when integral, otherwise "p/q" in lowest terms.
  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  // Accepts an optional sign, digits, and an optional "/digits" suffix.
  static Rational parse(const std::string& text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    i128 num = 0;
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      num = num * 10 + (text[pos] - '0');
      ++digits;
      ++pos;
      if (num > kMax) throw std::overflow_error("rational literal too large: " + text);
    }
    if (digits == 0) throw std::invalid_argument("malformed rational: '" + text + "'");
    i128 den = 1;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      den = 0;
      digits = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        den = den * 10 + (text[pos] - '0');
        ++digits;
        ++pos;
        if (den > kMax) throw std::overflow_error("rational literal too large: " + text);
      }
      if (digits == 0) throw std::invalid_argument("malformed rational: '" + text + "'");
    }
    if (pos != text.size()) throw std::invalid_argument("malformed rational: '" + text + "'");
    return make(neg ? -num : num, den);
  }

private:
  using i128 = __int128;
  static constexpr i128 kMax = INT64_MAX;

  static i128 abs128(i128 v) { return v < 0 ? -v : v; }

  static i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      den = 1;
    } else {
      i128 g = gcd128(num, den);
      num /= g;
      den /= g;
    }
    if (num > kMax || num < -kMax || den > kMax)
      throw std::overflow_error("rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  long long num_;
  long long den_;
};

}  // namespace rrc
