#include "anth/reconstructions.hpp"

#include <set>

#include "anth/error.hpp"
#include "anth/euclid.hpp"
#include "anth/surd.hpp"

namespace anth {

namespace {

void require_at_least_two(const Natural& c) {
  if (c < 2) throw DomainError("C must be at least 2, got " + c.str());
}

std::vector<Natural> squares_mod(unsigned modulus) {
  std::set<unsigned> out;
  for (unsigned x = 0; x < modulus; ++x) out.insert(x * x % modulus);
  return {out.begin(), out.end()};
}

std::vector<Natural> odd_targets_mod(const Natural& c, unsigned modulus) {
  const auto r = static_cast<unsigned>(mod_floor(c, modulus));
  std::set<unsigned> out;
  for (unsigned n = 1; n < modulus; n += 2) out.insert(r * (n * n) % modulus);
  return {out.begin(), out.end()};
}

CongruenceStep step(CongruenceRule rule, const Natural& value, unsigned modulus,
                    std::vector<Natural> residues = {}) {
  return CongruenceStep{rule, value, modulus, std::move(residues)};
}

// m^2 = c n^2 with coprime m, n: n even would force m even, and odd n makes
// c n^2 a non-square modulo `modulus`.
void odd_n_contradiction(std::vector<CongruenceStep>& steps, const Natural& c, unsigned modulus) {
  steps.push_back(step(CongruenceRule::SquareSet, c, modulus, squares_mod(modulus)));
  steps.push_back(step(CongruenceRule::NEvenForcesMEven, c, modulus));
  steps.push_back(step(CongruenceRule::OddNNonSquare, c, modulus, odd_targets_mod(c, modulus)));
}

// m^2 = c n^2 with c = 2 (mod 4): m is even, hence 4 | c n^2 and n is even too.
void both_even_contradiction(std::vector<CongruenceStep>& steps, const Natural& c) {
  steps.push_back(step(CongruenceRule::SolutionsForceMEven, c, 2));
  steps.push_back(step(CongruenceRule::SquareSet, c, 4, squares_mod(4)));
  steps.push_back(step(CongruenceRule::MEvenForcesNEven, c, 4));
}

}  // namespace

std::string describe(const ProofOutcome& outcome) {
  if (const auto* p = std::get_if<Proved>(&outcome)) {
    return "Proved(" + std::string(kind_name(p->certificate)) + ")";
  }
  if (const auto* i = std::get_if<Inconclusive>(&outcome)) return "Inconclusive(" + i->reason + ")";
  return "NotApplicable(" + std::get<NotApplicable>(outcome).reason + ")";
}

Certificate anth_certificate(const Natural& c, std::optional<std::size_t> max_steps) {
  require_at_least_two(c);
  const Magnitude side = make_sqrt(c);
  if (const auto* r = std::get_if<Rational>(&side)) {
    const NatAnthResult chain = anth_nat(r->num(), 1);
    return FiniteAnthCert{r->num(), 1, chain.quotients, chain.gcd};
  }
  const AnthTrace trace = anthyphairesis(side, Rational(1), max_steps);
  const auto& periodic = trace.periodic();
  const auto pre = trace.preperiod();
  const auto period = trace.period();
  return PeriodicAnthCert{
      c,
      {pre.begin(), pre.end()},
      {period.begin(), period.end()},
      WitnessState{periodic.witness_state.p(), periodic.witness_state.q(),
                   periodic.witness_state.d()},
      Natural(periodic.preperiod_len + periodic.period_len)};
}

ProofOutcome anth_proof(const Natural& c, std::optional<std::size_t> max_steps) {
  require_at_least_two(c);
  if (is_perfect_square(c)) return NotApplicable{"C is a perfect square"};
  return Proved{anth_certificate(c, max_steps)};
}

ProofOutcome parity_proof(const Natural& c) {
  require_at_least_two(c);
  if (c % 2 != 0) return NotApplicable{"C is not of the form 2k^2"};
  const Natural half = c / 2;
  const Natural k = isqrt(half);
  if (k * k != half) return NotApplicable{"C is not of the form 2k^2"};

  // sqrt(C) = k sqrt(2): the argument runs on m^2 = 2 n^2.
  std::vector<CongruenceStep> steps;
  both_even_contradiction(steps, 2);
  return Proved{ParityCert{c, k, std::move(steps)}};
}

ProofOutcome residue_prover(const Natural& c) {
  require_at_least_two(c);
  if (is_perfect_square(c)) throw DomainError(c.str() + " is a perfect square");

  std::vector<Natural> chain{c};
  std::vector<CongruenceStep> steps;
  Natural current = c;
  while (mod_floor(current, 4).is_zero()) {
    Natural next = current / 4;
    steps.push_back(step(CongruenceRule::ClassResidue, current, 4, {0}));
    steps.push_back(step(CongruenceRule::Descent, current, 4, {next}));
    chain.push_back(next);
    current = std::move(next);
  }

  const std::string label = residue_class_label(current);
  if (label == "4n+3") {
    steps.push_back(step(CongruenceRule::ClassResidue, current, 4, {3}));
    odd_n_contradiction(steps, current, 4);
  } else if (label == "8k+5") {
    steps.push_back(step(CongruenceRule::ClassResidue, current, 8, {5}));
    odd_n_contradiction(steps, current, 8);
  } else if (label == "4n+2") {
    steps.push_back(step(CongruenceRule::ClassResidue, current, 4, {2}));
    both_even_contradiction(steps, current);
  } else {
    // m and n both odd satisfy m^2 = n^2 = C n^2 (mod 8): squares mod 8 cannot tell.
    return Inconclusive{label};
  }
  return Proved{ResidueDescentCert{c, residue_class_label(c), std::move(chain), std::move(steps)}};
}

bool modern_oracle(const Natural& c) {
  require_natural(c, "C");
  if (c.is_zero()) throw DomainError("C must be positive");
  return !is_perfect_square(c);
}

SquaringPassage theaetetus_squaring(const Natural& c, std::optional<std::size_t> max_steps) {
  require_at_least_two(c);
  if (is_perfect_square(c)) throw DomainError(c.str() + " is a perfect square");
  return SquaringPassage{anthyphairesis(make_sqrt(c), Rational(1), max_steps),
                         anthyphairesis(Rational(c), Rational(1), max_steps)};
}

TableRow table_row(const Natural& c, std::optional<std::size_t> max_steps) {
  require_at_least_two(c);
  const bool square = is_perfect_square(c);
  AnthTrace trace = anthyphairesis(make_sqrt(c), Rational(1), max_steps);
  Verdict v = verdict(trace);
  ProofOutcome parity = square ? ProofOutcome{NotApplicable{"C is a perfect square"}} : parity_proof(c);
  ProofOutcome residue = square ? ProofOutcome{NotApplicable{"C is a perfect square"}} : residue_prover(c);
  return TableRow{c,
                  square,
                  std::move(trace),
                  std::move(v),
                  anth_certificate(c, max_steps),
                  std::move(parity),
                  std::move(residue),
                  modern_oracle(c)};
}

std::vector<TableRow> theodorus_table(const Natural& from, const Natural& to,
                                      std::optional<std::size_t> max_steps) {
  require_at_least_two(from);
  if (from > to) throw DomainError("empty range " + from.str() + ".." + to.str());
  std::vector<TableRow> rows;
  for (Natural c = from; c <= to; ++c) rows.push_back(table_row(c, max_steps));
  return rows;
}

}  // namespace anth
