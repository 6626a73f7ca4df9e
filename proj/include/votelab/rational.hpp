#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace votelab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always held in lowest terms with positive
/// denominator; equality and ordering are exact.
class Rational {
public:
  Rational() : value_(0) {}
  Rational(long long n) : value_(n) {} // NOLINT: implicit by design
  explicit Rational(BigInt n) : value_(std::move(n)) {}
  Rational(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    value_ = Value(std::move(num), std::move(den));
  }
  Rational(long long num, long long den)
      : Rational(BigInt(num), BigInt(den)) {}

  BigInt num() const { return numerator(value_); }
  BigInt den() const { return denominator(value_); }
  bool is_zero() const { return value_.is_zero(); }
  int sign() const { return value_.sign(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { Rational r; r.value_ = -value_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  /// Canonical form "num/den", e.g. "1/2", "-1/3", "0/1".
  std::string to_string() const {
    return num().str() + "/" + den().str();
  }

  /// Accepts "num/den" or a bare integer "num". Whitespace is not tolerated.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (text.empty() || slash == 0 || slash == text.size() - 1) {
      throw std::invalid_argument("Rational: cannot parse \"" + std::string(text) + "\"");
    }
    try {
      if (slash == std::string_view::npos) {
        return Rational(BigInt(std::string(text)));
      }
      BigInt num{std::string(text.substr(0, slash))};
      BigInt den{std::string(text.substr(slash + 1))};
      return Rational(std::move(num), std::move(den));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("Rational: cannot parse \"" + std::string(text) + "\"");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

private:
  using Value = boost::multiprecision::cpp_rational;
  Value value_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace votelab
