#pragma once

// Arbitrary-precision arithmetic substrate: signed integers, naturals and
// reduced fractions.

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace anth {

// Expression templates off: every arithmetic result is a plain value.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

// Nonnegative integer. The sign is a contract enforced where values enter
// the library (see require_natural); arithmetic is plain Integer arithmetic.
using Natural = Integer;

// Throws DomainError naming `what` if x < 0.
void require_natural(const Integer& x, const char* what);

// Floor division for any sign of a and b != 0 (cpp_int truncates toward zero).
Integer floor_div(const Integer& a, const Integer& b);

// Nonnegative residue of a modulo m > 0.
Integer mod_floor(const Integer& a, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);

// Parses an optionally signed decimal integer with no leading zeros
// ("0", "-17", "123"); anything else yields nullopt.
std::optional<Integer> parse_integer(std::string_view text);

// As parse_integer, but rejects a sign.
std::optional<Natural> parse_natural(std::string_view text);

// Reduced fraction num/den with den > 0 and gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(Integer num) : num_(std::move(num)), den_(1) {}  // NOLINT: implicit by design of literals
  Rational(Integer num, Integer den);
  Rational(long long num) : num_(num), den_(1) {}  // NOLINT

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }
  Integer floor() const { return floor_div(num_, den_); }

  Rational operator-() const { return Rational(-num_, den_, Reduced{}); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p" for integers, "p/q" otherwise.
  std::string str() const;

  // Accepts "p", "-p" and "p/q" with q > 0.
  static std::optional<Rational> parse(std::string_view text);

 private:
  struct Reduced {};
  Rational(Integer num, Integer den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  Integer num_;
  Integer den_;
};

}  // namespace anth
