#include "anth/number.hpp"

#include <string>

#include "anth/error.hpp"

namespace anth {

void require_natural(const Integer& x, const char* what) {
  if (x.sign() < 0) throw DomainError(std::string(what) + " must be nonnegative");
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  Integer q = a / b;
  Integer r = a - q * b;
  if (!r.is_zero() && (r.sign() != b.sign())) --q;
  return q;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r.sign() < 0) r += m;
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

std::optional<Integer> parse_integer(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && digits.front() == '-') {
    negative = true;
    digits.remove_prefix(1);
  }
  if (digits.empty() || digits.size() > 100000) return std::nullopt;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') return std::nullopt;
  }
  if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
  if (negative && digits == "0") return std::nullopt;
  Integer value{std::string(digits)};
  return negative ? Integer(-value) : value;
}

std::optional<Natural> parse_natural(std::string_view text) {
  if (!text.empty() && text.front() == '-') return std::nullopt;
  return parse_integer(text);
}

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Integer g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = Rational(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = Rational(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = Rational(num_ * rhs.num_, den_ * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_.is_zero()) throw DomainError("division by zero");
  *this = Rational(num_ * rhs.den_, den_ * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Integer lhs = a.num_ * b.den_;
  const Integer rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::optional<Rational> Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_integer(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_integer(text.substr(0, slash));
  auto d = parse_natural(text.substr(slash + 1));
  if (!n || !d || d->is_zero()) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace anth
