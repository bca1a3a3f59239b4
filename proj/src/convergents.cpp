#include "anth/convergents.hpp"

#include <string>

#include "anth/error.hpp"

namespace anth {

std::vector<Convergent> convergents(const std::vector<Natural>& quotients, std::size_t k) {
  if (k > quotients.size()) {
    throw DomainError("asked for " + std::to_string(k) + " convergents of " +
                      std::to_string(quotients.size()) + " quotients");
  }
  std::vector<Convergent> out;
  out.reserve(k);
  Natural p1 = 1, p2 = 0;
  Natural q1 = 0, q2 = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const Natural& quotient = quotients[i];
    if (quotient.sign() <= 0) {
      throw DomainError("quotient " + std::to_string(i) + " must be positive");
    }
    Natural p = quotient * p1 + p2;
    Natural q = quotient * q1 + q2;
    out.push_back({p, q, i});
    p2 = std::move(p1);
    p1 = std::move(p);
    q2 = std::move(q1);
    q1 = std::move(q);
  }
  return out;
}

std::pair<Natural, Natural> side_diameter(std::size_t n) {
  if (n == 0) throw DomainError("side and diameter numbers start at n = 1");
  Natural side = 1, diameter = 1;
  for (std::size_t i = 1; i < n; ++i) {
    Natural next_side = side + diameter;
    diameter = 2 * side + diameter;
    side = std::move(next_side);
  }
  return {side, diameter};
}

Integer pell_residual(const Natural& p, const Natural& q, const Natural& c) {
  return p * p - c * q * q;
}

}  // namespace anth
