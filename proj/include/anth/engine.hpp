#pragma once

// Full anthyphairesis of a pair of magnitudes a > b > 0.
//
// Anth(a, b) depends only on the ratio x = a / b, so the engine expands x:
// rationals by division, quadratic irrationals by stepping the complete
// quotient until its (P, Q) state recurs. A recurrence is a finite witness
// that the division chain never ends, i.e. that a and b are incommensurable.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "anth/number.hpp"
#include "anth/surd.hpp"

namespace anth {

struct Finite {
  friend bool operator==(const Finite&, const Finite&) = default;
};

struct EventuallyPeriodic {
  std::size_t preperiod_len = 0;
  std::size_t period_len = 0;
  QuadraticSurd witness_state;  // state at index preperiod_len, recurring period_len steps later

  friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;
};

using Termination = std::variant<Finite, EventuallyPeriodic>;

struct AnthTrace {
  // Finite: the whole chain. Periodic: the preperiod followed by one period.
  std::vector<Natural> quotients;
  Termination termination;
  std::size_t steps_executed = 0;

  bool is_finite() const { return std::holds_alternative<Finite>(termination); }
  const EventuallyPeriodic& periodic() const { return std::get<EventuallyPeriodic>(termination); }

  std::span<const Natural> preperiod() const;
  std::span<const Natural> period() const;  // empty for finite traces

  // The n-th quotient of the (possibly infinite) expansion; nullopt past the
  // end of a finite chain.
  std::optional<Natural> quotient_at(std::size_t n) const;

  // "[1; (1, 2)]" for periodic traces, "[3; 2, 2]" for finite ones.
  std::string str() const;
};

struct Commensurable {
  // a = m c and b = n c for the common measure c = b / n, which is the last
  // nonzero remainder of the chain.
  Natural m;
  Natural n;
  Rational measure_in_b;  // c / b
  std::vector<Natural> quotients;
};

struct Incommensurable {
  // The only certificate kind the engine emits for infinitude.
  static constexpr const char* certificate_kind = "periodic_anth";
  std::size_t preperiod_len = 0;
  std::size_t period_len = 0;
};

using Verdict = std::variant<Commensurable, Incommensurable>;

// Default safety budget for a surd ratio living in Q(sqrt(D)).
std::size_t default_max_steps(const Natural& d);

// The ratio a / b as a field element; throws DomainError for incompatible
// quadratic fields.
QFieldElement ratio_of(const Magnitude& a, const Magnitude& b);

// Requires a > b > 0. Throws DomainError on bad input and BudgetError when
// max_steps runs out first (default: default_max_steps of the working field).
AnthTrace anthyphairesis(const Magnitude& a, const Magnitude& b,
                         std::optional<std::size_t> max_steps = std::nullopt);

// The anthyphairetic remainders e_1 ... e_k of a to b, computed directly on
// the magnitudes: a = I_0 b + e_1, b = I_1 e_1 + e_2, ... Stops early when the
// chain terminates (the zero remainder is not emitted). Every step is checked
// against 0 < e_{n+1} < e_n and against the engine's quotient trace.
std::vector<QFieldElement> remainder_sequence(const Magnitude& a, const Magnitude& b,
                                              std::size_t k);

// Quotients of the same direct chain, up to k of them.
std::vector<Natural> remainder_chain_quotients(const Magnitude& a, const Magnitude& b,
                                               std::size_t k);

Verdict verdict(const AnthTrace& trace);

// Coprime (m, n) with a / b = m / n, or nullopt for an irrational ratio.
std::optional<std::pair<Natural, Natural>> number_to_number(const Magnitude& a,
                                                            const Magnitude& b);

}  // namespace anth
