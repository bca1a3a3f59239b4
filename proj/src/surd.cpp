#include "anth/surd.hpp"

#include <string>
#include <utility>

#include "anth/error.hpp"

namespace anth {

Natural isqrt(const Natural& n) {
  require_natural(n, "isqrt argument");
  if (n < 2) return n;
  // Start above sqrt(n); Newton's iterates then decrease monotonically to the floor.
  Integer x = Integer(1) << (msb(n) / 2 + 1);
  while (true) {
    Integer y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

bool is_perfect_square(const Natural& n) {
  if (n.sign() < 0) return false;
  const Natural r = isqrt(n);
  return r * r == n;
}

// ---------------------------------------------------------------------------
// QuadraticSurd

QuadraticSurd::QuadraticSurd(Integer p, Integer q, Natural d)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
  if (d_.sign() <= 0) throw DomainError("surd radicand must be positive");
  if (is_perfect_square(d_)) {
    throw DomainError("radicand " + d_.str() + " is a perfect square; use a Rational");
  }
  if (q_.is_zero()) throw DomainError("surd denominator must be nonzero");
  if (!((d_ - p_ * p_) % q_).is_zero()) {
    throw DomainError("surd state " + str() + " violates Q | D - P^2");
  }
}

std::string QuadraticSurd::str() const {
  return "(" + p_.str() + "+√" + d_.str() + ")/" + q_.str();
}

// ---------------------------------------------------------------------------
// QFieldElement

QFieldElement::QFieldElement(Integer u, Integer v, Integer w, Natural d)
    : u_(std::move(u)), v_(std::move(v)), w_(std::move(w)), d_(std::move(d)) {
  require_natural(d_, "field radicand");
  if (w_.is_zero()) throw DomainError("zero denominator");
  if (!v_.is_zero()) {
    const Natural r = isqrt(d_);
    if (r * r == d_) {
      u_ += v_ * r;
      v_ = 0;
    }
  }
  if (w_.sign() < 0) {
    u_ = -u_;
    v_ = -v_;
    w_ = -w_;
  }
  const Integer g = gcd(gcd(u_, v_), w_);
  if (g > 1) {
    u_ /= g;
    v_ /= g;
    w_ /= g;
  }
}

QFieldElement QFieldElement::rational(const Rational& r, Natural d) {
  return QFieldElement(r.num(), 0, r.den(), std::move(d));
}

QFieldElement QFieldElement::from_surd(const QuadraticSurd& s) {
  return QFieldElement(s.p(), 1, s.q(), s.d());
}

Rational QFieldElement::as_rational() const {
  if (!is_rational()) throw DomainError(str() + " is irrational");
  return Rational(u_, w_);
}

QFieldElement QFieldElement::in_field(const Natural& target) const {
  if (v_.is_zero() || d_ == target) return QFieldElement(u_, v_, w_, target);
  const Natural product = d_ * target;
  const Natural s = isqrt(product);
  if (s * s != product || target.is_zero()) {
    throw DomainError("√" + d_.str() + " and √" + target.str() +
                      " lie in different quadratic fields");
  }
  // sqrt(d) = s / sqrt(target) = s sqrt(target) / target
  return QFieldElement(u_ * target, v_ * s, w_ * target, target);
}

namespace {

// Brings both operands into one field; the irrational operand decides it.
std::pair<QFieldElement, QFieldElement> align(const QFieldElement& a, const QFieldElement& b) {
  if (!a.is_rational()) return {a, b.in_field(a.d())};
  if (!b.is_rational()) return {a.in_field(b.d()), b};
  return {a, b.in_field(a.d())};
}

}  // namespace

QFieldElement QFieldElement::operator-() const { return QFieldElement(-u_, -v_, w_, d_); }

QFieldElement operator+(const QFieldElement& a, const QFieldElement& b) {
  auto [x, y] = align(a, b);
  return QFieldElement(x.u_ * y.w_ + y.u_ * x.w_, x.v_ * y.w_ + y.v_ * x.w_, x.w_ * y.w_, x.d_);
}

QFieldElement operator-(const QFieldElement& a, const QFieldElement& b) { return a + (-b); }

QFieldElement operator*(const QFieldElement& a, const QFieldElement& b) {
  auto [x, y] = align(a, b);
  return QFieldElement(x.u_ * y.u_ + x.v_ * y.v_ * x.d_, x.u_ * y.v_ + x.v_ * y.u_,
                       x.w_ * y.w_, x.d_);
}

QFieldElement operator/(const QFieldElement& a, const QFieldElement& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  auto [x, y] = align(a, b);
  // Multiply through by the conjugate (u2 - v2 sqrt(D)); its norm is nonzero.
  const Integer norm = y.u_ * y.u_ - y.v_ * y.v_ * x.d_;
  const Integer u = (x.u_ * y.u_ - x.v_ * y.v_ * x.d_) * y.w_;
  const Integer v = (x.v_ * y.u_ - x.u_ * y.v_) * y.w_;
  return QFieldElement(u, v, x.w_ * norm, x.d_);
}

bool operator==(const QFieldElement& a, const QFieldElement& b) {
  if (a.is_rational() != b.is_rational()) return false;
  if (a.is_rational()) return a.u_ == b.u_ && a.w_ == b.w_;
  if (a.d_ != b.d_) {
    const Natural product = a.d_ * b.d_;
    if (!is_perfect_square(product)) return false;
    const QFieldElement c = b.in_field(a.d_);
    return a.u_ == c.u_ && a.v_ == c.v_ && a.w_ == c.w_;
  }
  return a.u_ == b.u_ && a.v_ == b.v_ && a.w_ == b.w_;
}

std::string QFieldElement::str() const {
  std::string text;
  if (v_.is_zero()) {
    text = u_.str();
  } else {
    if (!u_.is_zero()) text = u_.str();
    if (v_.sign() < 0) {
      text += "-";
    } else if (!u_.is_zero()) {
      text += "+";
    }
    const Integer mag = abs(v_);
    if (mag != 1) text += mag.str();
    text += "√" + d_.str();
  }
  if (w_ != 1) text = "(" + text + ")/" + w_.str();
  return text;
}

// ---------------------------------------------------------------------------
// Magnitudes

QFieldElement to_field(const Magnitude& m) {
  if (const auto* r = std::get_if<Rational>(&m)) return QFieldElement::rational(*r);
  return QFieldElement::from_surd(std::get<QuadraticSurd>(m));
}

std::string to_string(const Magnitude& m) {
  if (const auto* r = std::get_if<Rational>(&m)) return r->str();
  return std::get<QuadraticSurd>(m).str();
}

Magnitude make_sqrt(const Natural& c) {
  require_natural(c, "C");
  if (c.is_zero()) throw DomainError("sqrt(0) is not a magnitude");
  const Natural r = isqrt(c);
  if (r * r == c) return Rational(r);
  return QuadraticSurd(0, 1, c);
}

Integer floor_of(const QuadraticSurd& x) {
  const Natural r = isqrt(x.d());
  // sqrt(D) lies strictly between r and r + 1, so only the integer part of the
  // numerator matters once the sign of Q is taken into account.
  if (x.q().sign() > 0) return floor_div(x.p() + r, x.q());
  return floor_div(-x.p() - r - 1, -x.q());
}

Integer floor_of(const QFieldElement& x) {
  if (x.is_rational()) return floor_div(x.u(), x.w());
  const Natural r = isqrt(x.v() * x.v() * x.d());
  if (x.v().sign() > 0) return floor_div(x.u() + r, x.w());
  return floor_div(x.u() - r - 1, x.w());
}

Natural floor_of(const Magnitude& x) {
  if (sign_of(to_field(x)) <= 0) throw DomainError("magnitude " + to_string(x) + " is not positive");
  if (const auto* r = std::get_if<Rational>(&x)) return r->floor();
  return floor_of(std::get<QuadraticSurd>(x));
}

int sign_of(const QFieldElement& e) {
  const int su = e.u().sign();
  const int sv = e.v().sign();
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // Opposite signs: the larger of u^2 and v^2 D wins. Equality would make D a
  // rational square, which the representation excludes.
  const Integer lhs = e.u() * e.u();
  const Integer rhs = e.v() * e.v() * e.d();
  return lhs > rhs ? su : sv;
}

AnthStep anth_step(const QuadraticSurd& x) {
  if (sign_of(QFieldElement::from_surd(x)) <= 0) {
    throw DomainError("anth_step needs a positive surd, got " + x.str());
  }
  Natural quotient = floor_of(x);
  const Integer p = quotient * x.q() - x.p();
  const Integer numerator = x.d() - p * p;
  if (!(numerator % x.q()).is_zero()) {
    throw InternalError("divisibility invariant broken at " + x.str());
  }
  Integer q = numerator / x.q();
  return AnthStep{std::move(quotient), QuadraticSurd(p, std::move(q), x.d())};
}

}  // namespace anth
