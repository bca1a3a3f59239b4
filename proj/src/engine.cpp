#include "anth/engine.hpp"

#include <limits>
#include <string>
#include <unordered_map>

#include "anth/error.hpp"
#include "anth/euclid.hpp"

namespace anth {

namespace {

std::string join(std::span<const Natural> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].str();
  }
  return out;
}

// Complete-quotient form (P + sqrt(D)) / Q of an irrational field element,
// scaled by |Q| when needed so that Q | D - P^2.
QuadraticSurd to_complete_quotient(const QFieldElement& x) {
  Integer p = x.u();
  Integer q = x.w();
  Natural d = x.v() * x.v() * x.d();
  if (x.v().sign() < 0) {
    p = -p;
    q = -q;
  }
  if (!((d - p * p) % q).is_zero()) {
    const Integer scale = abs(q);
    p *= scale;
    d *= scale * scale;
    q *= scale;
  }
  return QuadraticSurd(std::move(p), std::move(q), std::move(d));
}

void require_ordered_pair(const Magnitude& a, const Magnitude& b) {
  const QFieldElement fa = to_field(a);
  const QFieldElement fb = to_field(b);
  if (sign_of(fb) <= 0) throw DomainError("b = " + to_string(b) + " is not positive");
  if (sign_of(fa - fb) <= 0) {
    throw DomainError("anthyphairesis needs a > b, got a = " + to_string(a) +
                      ", b = " + to_string(b));
  }
}

AnthTrace expand_rational(const Rational& x, std::optional<std::size_t> max_steps) {
  AnthTrace trace{{}, Finite{}, 0};
  Integer p = x.num();
  Integer q = x.den();
  while (!q.is_zero()) {
    if (max_steps && trace.steps_executed >= *max_steps) {
      throw BudgetError("rational expansion exceeded " + std::to_string(*max_steps) + " steps");
    }
    Integer quotient = p / q;
    Integer remainder = p - quotient * q;
    trace.quotients.push_back(std::move(quotient));
    ++trace.steps_executed;
    p = std::move(q);
    q = std::move(remainder);
  }
  return trace;
}

AnthTrace expand_surd(QuadraticSurd state, std::optional<std::size_t> max_steps) {
  const std::size_t budget = max_steps.value_or(default_max_steps(state.d()));
  std::unordered_map<QuadraticSurd, std::size_t> first_seen;
  AnthTrace trace{{}, Finite{}, 0};
  for (std::size_t index = 0;; ++index) {
    if (auto it = first_seen.find(state); it != first_seen.end()) {
      trace.termination = EventuallyPeriodic{it->second, index - it->second, state};
      return trace;
    }
    if (index >= budget) {
      throw BudgetError("no recurrence of the complete quotient within " +
                        std::to_string(budget) + " steps");
    }
    first_seen.emplace(state, index);
    AnthStep step = anth_step(state);
    trace.quotients.push_back(std::move(step.quotient));
    ++trace.steps_executed;
    state = std::move(step.next);
  }
}

// The direct two-magnitude division chain; `on_step` sees (I_n, e_{n+1}).
template <typename OnStep>
void run_division_chain(const Magnitude& a, const Magnitude& b, std::size_t k, OnStep on_step) {
  QFieldElement previous = to_field(a);
  QFieldElement current = to_field(b);
  for (std::size_t n = 0; n < k; ++n) {
    const Natural quotient = floor_of(previous / current);
    QFieldElement remainder = previous - QFieldElement::rational(quotient) * current;
    if (sign_of(remainder) < 0 || sign_of(current - remainder) <= 0) {
      throw InternalError("remainder " + remainder.str() + " is not below divisor " +
                          current.str());
    }
    const bool done = remainder.is_zero();
    on_step(quotient, remainder);
    if (done) return;
    previous = std::move(current);
    current = std::move(remainder);
  }
}

}  // namespace

std::span<const Natural> AnthTrace::preperiod() const {
  if (is_finite()) return quotients;
  return std::span<const Natural>(quotients).first(periodic().preperiod_len);
}

std::span<const Natural> AnthTrace::period() const {
  if (is_finite()) return {};
  const auto& p = periodic();
  return std::span<const Natural>(quotients).subspan(p.preperiod_len, p.period_len);
}

std::optional<Natural> AnthTrace::quotient_at(std::size_t n) const {
  if (n < quotients.size()) return quotients[n];
  if (is_finite()) return std::nullopt;
  const auto& p = periodic();
  return quotients[p.preperiod_len + (n - p.preperiod_len) % p.period_len];
}

std::string AnthTrace::str() const {
  const auto pre = preperiod();
  std::string out = "[";
  if (!pre.empty()) {
    out += pre.front().str();
    if (pre.size() > 1 || !is_finite()) out += "; ";
    out += join(pre.subspan(1));
    if (pre.size() > 1 && !is_finite()) out += ", ";
  }
  if (!is_finite()) out += "(" + join(period()) + ")";
  return out + "]";
}

std::size_t default_max_steps(const Natural& d) {
  constexpr std::size_t cap = std::numeric_limits<std::size_t>::max() / 16;
  if (d >= cap) return std::numeric_limits<std::size_t>::max();
  return 10 * (static_cast<std::size_t>(d) + 2);
}

QFieldElement ratio_of(const Magnitude& a, const Magnitude& b) { return to_field(a) / to_field(b); }

AnthTrace anthyphairesis(const Magnitude& a, const Magnitude& b,
                         std::optional<std::size_t> max_steps) {
  require_ordered_pair(a, b);
  const QFieldElement x = ratio_of(a, b);
  if (x.is_rational()) return expand_rational(x.as_rational(), max_steps);
  return expand_surd(to_complete_quotient(x), max_steps);
}

std::vector<Natural> remainder_chain_quotients(const Magnitude& a, const Magnitude& b,
                                               std::size_t k) {
  require_ordered_pair(a, b);
  std::vector<Natural> quotients;
  run_division_chain(a, b, k, [&](const Natural& q, const QFieldElement&) { quotients.push_back(q); });
  return quotients;
}

std::vector<QFieldElement> remainder_sequence(const Magnitude& a, const Magnitude& b,
                                              std::size_t k) {
  const AnthTrace trace = anthyphairesis(a, b);
  std::vector<QFieldElement> remainders;
  std::size_t index = 0;
  run_division_chain(a, b, k, [&](const Natural& q, const QFieldElement& e) {
    if (q != trace.quotient_at(index)) {
      throw InternalError("direct division chain disagrees with the trace at step " +
                          std::to_string(index));
    }
    ++index;
    if (!e.is_zero()) remainders.push_back(e);
  });
  return remainders;
}

Verdict verdict(const AnthTrace& trace) {
  if (!trace.is_finite()) {
    const auto& p = trace.periodic();
    return Incommensurable{p.preperiod_len, p.period_len};
  }
  auto [m, n] = reconstruct_from_quotients(trace.quotients);

  // Replay the chain in units of b; the last nonzero remainder measures both.
  Rational previous(m, n);
  Rational current(1);
  for (const Natural& quotient : trace.quotients) {
    Rational remainder = previous - Rational(quotient) * current;
    if (remainder.sign() == 0) break;
    previous = std::move(current);
    current = std::move(remainder);
  }
  if (current != Rational(1, n)) {
    throw InternalError("common measure " + current.str() + " differs from 1/" + n.str());
  }
  return Commensurable{std::move(m), std::move(n), std::move(current), trace.quotients};
}

std::optional<std::pair<Natural, Natural>> number_to_number(const Magnitude& a,
                                                            const Magnitude& b) {
  if (sign_of(to_field(a)) <= 0 || sign_of(to_field(b)) <= 0) {
    throw DomainError("number_to_number needs positive magnitudes");
  }
  const QFieldElement x = ratio_of(a, b);
  if (!x.is_rational()) return std::nullopt;
  const Rational r = x.as_rational();
  return std::pair{r.num(), r.den()};
}

}  // namespace anth
