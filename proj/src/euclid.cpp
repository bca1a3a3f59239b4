#include "anth/euclid.hpp"

#include "anth/engine.hpp"
#include "anth/error.hpp"

namespace anth {

NatAnthResult anth_nat(const Natural& m, const Natural& n) {
  require_natural(m, "m");
  require_natural(n, "n");
  if (n.is_zero() || m <= n) {
    throw DomainError("anth_nat needs m > n > 0, got m = " + m.str() + ", n = " + n.str());
  }
  NatAnthResult result;
  Natural dividend = m;
  Natural divisor = n;
  while (true) {
    Natural quotient = dividend / divisor;
    Natural remainder = dividend - quotient * divisor;
    result.quotients.push_back(quotient);
    result.chain.push_back({dividend, quotient, divisor, remainder});
    if (remainder.is_zero()) break;
    dividend = std::move(divisor);
    divisor = std::move(remainder);
  }
  result.gcd = std::move(divisor);
  return result;
}

Natural gcd_of(const Natural& m, const Natural& n) {
  require_natural(m, "m");
  require_natural(n, "n");
  if (m.is_zero() && n.is_zero()) throw DomainError("gcd_of(0, 0) is undefined");
  if (n.is_zero()) return m;
  if (m.is_zero()) return n;
  if (m == n) return m;
  return m > n ? anth_nat(m, n).gcd : anth_nat(n, m).gcd;
}

std::pair<Natural, Natural> reconstruct_from_quotients(const std::vector<Natural>& quotients) {
  if (quotients.empty()) throw DomainError("empty quotient list");
  Natural p_prev = 1, p_prev2 = 0;  // p_{-1}, p_{-2}
  Natural q_prev = 0, q_prev2 = 1;
  for (const Natural& quotient : quotients) {
    if (quotient.sign() <= 0) throw DomainError("quotients must be >= 1");
    Natural p = quotient * p_prev + p_prev2;
    Natural q = quotient * q_prev + q_prev2;
    p_prev2 = std::move(p_prev);
    p_prev = std::move(p);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(q);
  }
  return {p_prev, q_prev};
}

bool scale_invariance_check(const Natural& m, const Natural& n, const Rational& c) {
  const NatAnthResult expected = anth_nat(m, n);
  if (c.sign() <= 0) throw DomainError("scale factor must be positive");
  const Magnitude a = Rational(m) * c;
  const Magnitude b = Rational(n) * c;

  const AnthTrace trace = anthyphairesis(a, b);
  if (!trace.is_finite() || trace.quotients != expected.quotients) return false;

  // Same chain, run on the scaled magnitudes themselves rather than their ratio.
  const auto direct = remainder_chain_quotients(a, b, expected.quotients.size() + 1);
  return direct == expected.quotients;
}

}  // namespace anth
