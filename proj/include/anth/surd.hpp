#pragma once

// Quadratic surds and the single-step dynamics of their complete quotients.
//
// A complete quotient is held as (P + sqrt(D)) / Q with Q | (D - P^2). The
// step x -> 1 / (x - floor(x)) keeps that form:
//
//   P' = floor(x) * Q - P,   Q' = (D - P'^2) / Q.
//
// Everything here is exact integer arithmetic; nothing touches floating point.

#include <cstddef>
#include <functional>
#include <string>
#include <variant>

#include "anth/number.hpp"

namespace anth {

// floor(sqrt(n)) for n >= 0, by integer Newton iteration.
Natural isqrt(const Natural& n);

bool is_perfect_square(const Natural& n);

class QuadraticSurd {
 public:
  // Throws DomainError if D <= 0, D is a perfect square, Q == 0 or
  // Q does not divide D - P^2.
  QuadraticSurd(Integer p, Integer q, Natural d);

  const Integer& p() const noexcept { return p_; }
  const Integer& q() const noexcept { return q_; }
  const Natural& d() const noexcept { return d_; }

  std::string str() const;  // "(P+√D)/Q"

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

 private:
  Integer p_;
  Integer q_;
  Natural d_;
};

// (u + v sqrt(D)) / w, kept with w > 0 and gcd(u, v, w) = 1. A perfect-square
// D is folded into u on construction, so v != 0 implies D is not a square.
// When v == 0 the element is rational and D only records the ambient field.
class QFieldElement {
 public:
  QFieldElement(Integer u, Integer v, Integer w, Natural d);

  static QFieldElement rational(const Rational& r, Natural d = 0);
  static QFieldElement from_surd(const QuadraticSurd& s);

  const Integer& u() const noexcept { return u_; }
  const Integer& v() const noexcept { return v_; }
  const Integer& w() const noexcept { return w_; }
  const Natural& d() const noexcept { return d_; }

  bool is_rational() const { return v_.is_zero(); }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  Rational as_rational() const;  // requires is_rational()

  // Re-express in Q(sqrt(target)). Requires d() * target to be a perfect
  // square when v != 0; throws DomainError otherwise.
  QFieldElement in_field(const Natural& target) const;

  QFieldElement operator-() const;
  friend QFieldElement operator+(const QFieldElement& a, const QFieldElement& b);
  friend QFieldElement operator-(const QFieldElement& a, const QFieldElement& b);
  friend QFieldElement operator*(const QFieldElement& a, const QFieldElement& b);
  friend QFieldElement operator/(const QFieldElement& a, const QFieldElement& b);

  // Equal values; the recorded field of a rational element is ignored.
  friend bool operator==(const QFieldElement& a, const QFieldElement& b);

  std::string str() const;

 private:
  Integer u_;
  Integer v_;
  Integer w_;
  Natural d_;
};

// A positive magnitude: a reduced fraction or a quadratic surd.
using Magnitude = std::variant<Rational, QuadraticSurd>;

QFieldElement to_field(const Magnitude& m);
std::string to_string(const Magnitude& m);

// sqrt(c): Rational k when c = k^2, else (0 + sqrt(c)) / 1. Throws on c == 0.
Magnitude make_sqrt(const Natural& c);

// Exact floor. The Natural-returning overload requires a positive magnitude.
Natural floor_of(const Magnitude& x);
Integer floor_of(const QuadraticSurd& x);
Integer floor_of(const QFieldElement& x);

// Exact sign of (u + v sqrt(D)) / w: -1, 0 or +1.
int sign_of(const QFieldElement& e);

struct AnthStep {
  Natural quotient;
  QuadraticSurd next;
};

// One anthyphairetic division of a positive surd. Throws InternalError if the
// divisibility invariant would break.
AnthStep anth_step(const QuadraticSurd& x);

}  // namespace anth

template <>
struct std::hash<anth::QuadraticSurd> {
  std::size_t operator()(const anth::QuadraticSurd& s) const noexcept {
    std::hash<anth::Integer> h;
    std::size_t seed = h(s.p());
    seed ^= h(s.q()) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    seed ^= h(s.d()) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};
