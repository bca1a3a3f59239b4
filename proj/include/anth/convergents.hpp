#pragma once

// Convergents of a quotient sequence, the side-and-diameter numbers that
// approximate sqrt(2), and Pell residuals p^2 - C q^2.

#include <cstddef>
#include <utility>
#include <vector>

#include "anth/number.hpp"

namespace anth {

struct Convergent {
  Natural p;
  Natural q;
  std::size_t index = 0;

  friend bool operator==(const Convergent&, const Convergent&) = default;
};

// The first k convergents p_n / q_n, seeded with p_{-1} = 1, p_{-2} = 0,
// q_{-1} = 0, q_{-2} = 1 so that index 0 is I_0 / 1.
// Throws DomainError if k exceeds the list or a quotient is zero.
std::vector<Convergent> convergents(const std::vector<Natural>& quotients, std::size_t k);

// (s_n, d_n) with s_1 = d_1 = 1, s_{k+1} = s_k + d_k, d_{k+1} = 2 s_k + d_k.
std::pair<Natural, Natural> side_diameter(std::size_t n);

Integer pell_residual(const Natural& p, const Natural& q, const Natural& c);

}  // namespace anth
