#pragma once

// Replayable proof objects for every verdict the library produces, and their
// canonical JSON form.
//
// check() never trusts a certificate's conclusion: division chains are
// replayed, periodic witnesses are stepped through a full period, and each
// congruence assertion is verified by enumerating residues.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "anth/number.hpp"

namespace anth {

// Commensurability of m > n > 0: the full division chain and its gcd.
struct FiniteAnthCert {
  Natural m;
  Natural n;
  std::vector<Natural> quotients;
  Natural gcd;

  friend bool operator==(const FiniteAnthCert&, const FiniteAnthCert&) = default;
};

struct WitnessState {
  Integer p;
  Integer q;
  Natural d;

  friend bool operator==(const WitnessState&, const WitnessState&) = default;
};

// Incommensurability of sqrt(C) with the unit: starting from (0 + sqrt(C))/1
// the preperiod quotients lead to witness_state, and one period of quotients
// later the same state recurs, so the division chain never terminates.
struct PeriodicAnthCert {
  Natural c;
  std::vector<Natural> preperiod_quotients;
  std::vector<Natural> period_quotients;
  WitnessState witness_state;
  Natural recurrence_offset;  // preperiod + period: the index at which the witness recurs

  friend bool operator==(const PeriodicAnthCert&, const PeriodicAnthCert&) = default;
};

// Facts about S_M(c) = {(m, n) mod M : m^2 = c n^2 (mod M)}, each decidable by
// enumeration. `value` is the c the step talks about.
enum class CongruenceRule {
  ClassResidue,       // c = residues[0] (mod M)
  SquareSet,          // {x^2 mod M} = residues
  Descent,            // M = 4, c = 4 residues[0]: m is even, so m = 2m' and m'^2 = (c/4) n^2
  NEvenForcesMEven,   // every (m, n) in S_M(c) with n even has m even
  MEvenForcesNEven,   // every (m, n) in S_M(c) with m even has n even
  SolutionsForceMEven,  // every (m, n) in S_M(c) has m even
  OddNNonSquare,      // residues = {c n^2 mod M : n odd}, none of them a square mod M
};

std::string_view rule_name(CongruenceRule rule);

struct CongruenceStep {
  CongruenceRule rule;
  Natural value;
  Natural modulus;
  std::vector<Natural> residues;

  friend bool operator==(const CongruenceStep&, const CongruenceStep&) = default;
};

// The even/odd argument for C = 2 k^2: sqrt(C) = k sqrt(2), so a rational
// sqrt(C) would give coprime m, n with m^2 = 2 n^2; both then come out even.
struct ParityCert {
  Natural c;
  Natural reduction_factor;
  std::vector<CongruenceStep> steps;

  friend bool operator==(const ParityCert&, const ParityCert&) = default;
};

// Residue-class argument on m^2 = C n^2 with coprime m, n, after dividing out
// factors of 4 along descent_chain.
struct ResidueDescentCert {
  Natural c;
  std::string class_label;
  std::vector<Natural> descent_chain;
  std::vector<CongruenceStep> steps;

  friend bool operator==(const ResidueDescentCert&, const ResidueDescentCert&) = default;
};

using Certificate = std::variant<FiniteAnthCert, PeriodicAnthCert, ParityCert, ResidueDescentCert>;

std::string_view kind_name(const Certificate& cert);

// "4n+3", "8k+5", "4n+2", "4n" or "8k+1"; "8k+1" also covers squares of odd numbers.
std::string residue_class_label(const Natural& c);

// Verifies one congruence assertion in isolation.
bool check_step(const CongruenceStep& step);

// True iff every claim in the certificate replays. Throws MalformedCertificate
// when the object cannot be checked at all (empty period, modulus < 2, ...).
bool check(const Certificate& cert);

// Canonical JSON text: fixed key order, integers as decimal strings.
std::string serialize(const Certificate& cert);

// Strict inverse of serialize. Throws ParseError (malformed text, unknown or
// missing fields, badly shaped integers) or SemanticError (type invariants).
Certificate parse(std::string_view text);

}  // namespace anth
