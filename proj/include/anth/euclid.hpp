#pragma once

// Anthyphairesis of natural numbers (the Euclidean algorithm) and the
// scale-invariance property Anth(m, n) = Anth(mc, nc).

#include <utility>
#include <vector>

#include "anth/number.hpp"

namespace anth {

// One line of the division chain: dividend = quotient * divisor + remainder.
struct DivisionStep {
  Natural dividend;
  Natural quotient;
  Natural divisor;
  Natural remainder;
};

struct NatAnthResult {
  std::vector<Natural> quotients;  // canonical: last >= 2 unless size() == 1
  Natural gcd;
  std::vector<DivisionStep> chain;
};

// Requires m > n > 0; throws DomainError otherwise.
NatAnthResult anth_nat(const Natural& m, const Natural& n);

// gcd_of(m, 0) == m; throws DomainError when both are zero.
Natural gcd_of(const Natural& m, const Natural& n);

// Inverse of anth_nat: the coprime pair whose quotient chain is `quotients`,
// via the continuant recurrence p_k = I_k p_{k-1} + p_{k-2}. A non-canonical
// tail [..., k, 1] denotes the same pair as [..., k + 1].
std::pair<Natural, Natural> reconstruct_from_quotients(const std::vector<Natural>& quotients);

// True iff the anthyphairesis of the rational magnitudes (m c, n c) yields
// anth_nat(m, n).quotients. Both the engine trace and the direct remainder
// chain of the scaled pair are compared. A false return is a defect.
bool scale_invariance_check(const Natural& m, const Natural& n, const Rational& c);

}  // namespace anth
