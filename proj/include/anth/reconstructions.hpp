#pragma once

// Competing proofs that sqrt(C) is incommensurable with the unit, run as
// provers: the anthyphairetic one (periodic complete quotients), the even/odd
// argument for C = 2 k^2, the residue-class argument with descent on 4n
// (which cannot decide C = 8k + 1, the first instance being 17), and the
// modern square test that serves as ground truth.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "anth/certificate.hpp"
#include "anth/engine.hpp"
#include "anth/number.hpp"

namespace anth {

struct Proved {
  Certificate certificate;
};

struct Inconclusive {
  std::string reason;  // the residue class that defeated the method
};

struct NotApplicable {
  std::string reason;
};

using ProofOutcome = std::variant<Proved, Inconclusive, NotApplicable>;

std::string describe(const ProofOutcome& outcome);

// Certificate for the anthyphairesis of sqrt(C) to 1: PeriodicAnth for a
// non-square C, FiniteAnth for C = k^2 with k >= 2. Throws DomainError for C < 2.
Certificate anth_certificate(const Natural& c,
                             std::optional<std::size_t> max_steps = std::nullopt);

// Proved(PeriodicAnth) for non-square C, NotApplicable for squares.
ProofOutcome anth_proof(const Natural& c, std::optional<std::size_t> max_steps = std::nullopt);

ProofOutcome parity_proof(const Natural& c);

// Requires a non-square C >= 2.
ProofOutcome residue_prover(const Natural& c);

// True iff sqrt(C) is irrational.
bool modern_oracle(const Natural& c);

struct SquaringPassage {
  AnthTrace side_trace;    // sqrt(C) : 1, eventually periodic
  AnthTrace square_trace;  // C : 1, finite with quotients [C]
};

SquaringPassage theaetetus_squaring(const Natural& c,
                                    std::optional<std::size_t> max_steps = std::nullopt);

struct TableRow {
  Natural c;
  bool is_square = false;
  AnthTrace trace;
  Verdict verdict;
  Certificate anth_certificate;
  ProofOutcome parity;
  ProofOutcome residue;
  bool oracle = false;
};

// Every method on one C >= 2; the incommensurability provers are skipped for squares.
TableRow table_row(const Natural& c, std::optional<std::size_t> max_steps = std::nullopt);

// One row per C in [from, to], both ends included.
std::vector<TableRow> theodorus_table(const Natural& from, const Natural& to,
                                      std::optional<std::size_t> max_steps = std::nullopt);

}  // namespace anth
