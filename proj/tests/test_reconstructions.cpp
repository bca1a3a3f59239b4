#include "doctest.h"

#include "anth/error.hpp"
#include "anth/reconstructions.hpp"

using namespace anth;

namespace {

bool square_by_search(unsigned long c) {
  for (unsigned long k = 0; k * k <= c; ++k) {
    if (k * k == c) return true;
  }
  return false;
}

bool twice_square(unsigned long c) { return c % 2 == 0 && square_by_search(c / 2); }

// What remains after stripping factors of 4.
unsigned long descend(unsigned long c) {
  while (c % 4 == 0) c /= 4;
  return c;
}

}  // namespace

TEST_CASE("anth_proof") {
  const auto outcome = anth_proof(3);
  REQUIRE(std::holds_alternative<Proved>(outcome));
  const auto& cert = std::get<PeriodicAnthCert>(std::get<Proved>(outcome).certificate);
  CHECK(cert.period_quotients == std::vector<Natural>{1, 2});
  CHECK(describe(outcome) == "Proved(periodic_anth)");
  CHECK(std::holds_alternative<NotApplicable>(anth_proof(16)));
  CHECK(std::get<FiniteAnthCert>(anth_certificate(16)) == FiniteAnthCert{4, 1, {4}, 1});
  CHECK_THROWS_AS(anth_certificate(1), DomainError);
}

TEST_CASE("parity_proof") {
  CHECK(std::holds_alternative<Proved>(parity_proof(2)));
  CHECK(std::holds_alternative<Proved>(parity_proof(8)));
  CHECK(std::holds_alternative<Proved>(parity_proof(18)));
  CHECK(std::holds_alternative<NotApplicable>(parity_proof(3)));
  CHECK(std::holds_alternative<NotApplicable>(parity_proof(6)));
  CHECK_THROWS_AS(parity_proof(1), DomainError);
  const auto cert = std::get<ParityCert>(std::get<Proved>(parity_proof(8)).certificate);
  CHECK(cert.reduction_factor == 2);
}

TEST_CASE("residue_prover") {
  auto outcome = residue_prover(3);
  REQUIRE(std::holds_alternative<Proved>(outcome));
  CHECK(std::get<ResidueDescentCert>(std::get<Proved>(outcome).certificate).class_label == "4n+3");

  outcome = residue_prover(12);
  const auto& cert = std::get<ResidueDescentCert>(std::get<Proved>(outcome).certificate);
  CHECK(cert.class_label == "4n");
  CHECK(cert.descent_chain == std::vector<Natural>{12, 3});

  outcome = residue_prover(17);
  REQUIRE(std::holds_alternative<Inconclusive>(outcome));
  CHECK(std::get<Inconclusive>(outcome).reason == "8k+1");
  CHECK(describe(outcome) == "Inconclusive(8k+1)");
  CHECK(std::holds_alternative<Inconclusive>(residue_prover(68)));

  CHECK_THROWS_AS(residue_prover(16), DomainError);
  CHECK_THROWS_AS(residue_prover(1), DomainError);
}

TEST_CASE("residue prover reproduces the historical split at 17") {
  for (unsigned long c : {3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15}) {
    CHECK_MESSAGE(std::holds_alternative<Proved>(residue_prover(c)), "C = " << c);
  }
  CHECK(std::holds_alternative<Inconclusive>(residue_prover(17)));
}

TEST_CASE("theaetetus_squaring") {
  const auto s = theaetetus_squaring(5);
  CHECK_FALSE(s.side_trace.is_finite());
  CHECK(s.side_trace.str() == "[2; (4)]");
  CHECK(s.square_trace.is_finite());
  CHECK(s.square_trace.quotients == std::vector<Natural>{5});
}

TEST_CASE("theodorus_table is inclusive at both ends") {
  const auto rows = theodorus_table(3, 17);
  REQUIRE(rows.size() == 15);
  CHECK(rows.front().c == 3);
  CHECK(rows.back().c == 17);
  std::vector<Natural> non_square;
  for (const auto& row : rows) {
    if (!row.is_square) non_square.push_back(row.c);
  }
  CHECK(non_square == std::vector<Natural>{3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 17});
  CHECK_THROWS_AS(theodorus_table(1, 5), DomainError);
  CHECK_THROWS_AS(theodorus_table(9, 5), DomainError);
}

TEST_CASE("property: provers are sound and agree with ground truth, C <= 500") {
  for (unsigned long c = 2; c <= 500; ++c) {
    const bool irrational = !square_by_search(c);
    CHECK(modern_oracle(c) == irrational);
    const auto row = table_row(c);
    CHECK(row.is_square == !irrational);
    CHECK(std::holds_alternative<Incommensurable>(row.verdict) == irrational);
    CHECK(check(row.anth_certificate));
    if (!irrational) {
      CHECK(std::holds_alternative<FiniteAnthCert>(row.anth_certificate));
      continue;
    }
    CHECK(std::holds_alternative<Proved>(anth_proof(c)));

    // Parity reaches exactly C = 2 k^2.
    CHECK(std::holds_alternative<Proved>(row.parity) == twice_square(c));
    if (const auto* p = std::get_if<Proved>(&row.parity)) CHECK(check(p->certificate));

    // Residues decide everything except what descends to 1 mod 8.
    const bool stuck = descend(c) % 8 == 1;
    CHECK_MESSAGE(std::holds_alternative<Inconclusive>(row.residue) == stuck, "C = " << c);
    CHECK(std::holds_alternative<Proved>(row.residue) == !stuck);
    if (const auto* p = std::get_if<Proved>(&row.residue)) {
      CHECK(check(p->certificate));
      const auto& cert = std::get<ResidueDescentCert>(p->certificate);
      CHECK(cert.descent_chain.back() == descend(c));
    }
  }
}
