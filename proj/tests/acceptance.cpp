// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "anth/cli.hpp"
#include "anth/convergents.hpp"
#include "anth/engine.hpp"
#include "anth/euclid.hpp"
#include "anth/reconstructions.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace anth;

namespace {

// Extra line printed under the criterion's status.
std::string note;

struct Failure {
  std::string detail;
};

void expect(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

std::string join(std::span<const Natural> xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x.str();
  return out;
}

bool square_by_search(unsigned long c) {
  for (unsigned long k = 0; k * k <= c; ++k) {
    if (k * k == c) return true;
  }
  return false;
}

Magnitude one() { return Rational(1); }

void theodorus_table_range() {
  const std::vector<std::string> args{"anth", "table", "--from", "3", "--to", "17", "--json"};
  std::ostringstream out, err;
  expect(cli::run(args, out, err) == cli::kOk, "table exited nonzero: " + err.str());
  const auto doc = nlohmann::json::parse(out.str());
  std::vector<std::string> non_square;
  for (const auto& row : doc["rows"]) {
    if (row["is_square"].get<bool>()) continue;
    const std::string c = row["C"];
    non_square.push_back(c);
    expect(row["anth"]["verdict"]["kind"] == "incommensurable", "C=" + c + " not incommensurable");
    expect(row["anth"]["certificate_kind"] == "periodic_anth", "C=" + c + " wrong certificate kind");
    expect(row["anth"]["certificate_checked"] == true, "C=" + c + " certificate not checked");
  }
  const std::vector<std::string> want{"3", "5", "6", "7", "8", "10", "11", "12", "13", "14", "15", "17"};
  expect(non_square == want, "non-square rows differ from {3..17} minus squares");

  // Replay the certificates independently of the CLI.
  for (const auto& row : theodorus_table(3, 17)) {
    if (row.is_square) continue;
    expect(std::holds_alternative<PeriodicAnthCert>(row.anth_certificate) && check(row.anth_certificate),
           "C=" + row.c.str() + " certificate does not replay");
  }
}

void theodorus_expansions() {
  const std::map<unsigned long, std::vector<Natural>> periods{
      {3, {1, 2}},       {5, {4}},          {6, {2, 4}},          {7, {1, 1, 1, 4}},
      {8, {1, 4}},       {10, {6}},         {11, {3, 6}},         {12, {2, 6}},
      {13, {1, 1, 1, 1, 6}}, {14, {1, 2, 1, 6}}, {15, {1, 6}}, {17, {8}}};
  for (const auto& [c, period] : periods) {
    const auto t = anthyphairesis(make_sqrt(c), one());
    const std::string tag = "sqrt " + std::to_string(c);
    expect(!t.is_finite(), tag + " finite");
    expect(t.periodic().preperiod_len == 1, tag + " preperiod " + std::to_string(t.periodic().preperiod_len));
    const auto got = t.period();
    expect(std::vector<Natural>(got.begin(), got.end()) == period, tag + " period (" + join(got) + ")");
    const auto numeric = oracle::numeric_sqrt_cf(c, 40);
    expect(numeric.size() >= 10, tag + " numeric oracle too short");
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      expect(*t.quotient_at(k) == numeric[k], tag + " disagrees with numeric oracle at " + std::to_string(k));
    }
  }
}

void residue_split_at_17() {
  for (unsigned long c : {3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15}) {
    const auto outcome = residue_prover(c);
    expect(std::holds_alternative<Proved>(outcome), "C=" + std::to_string(c) + " " + describe(outcome));
    expect(check(std::get<Proved>(outcome).certificate), "C=" + std::to_string(c) + " certificate fails");
  }
  const auto outcome = residue_prover(17);
  expect(std::holds_alternative<Inconclusive>(outcome), "C=17 " + describe(outcome));
}

void commensurability_consistency() {
  for (unsigned long c = 2; c <= 500; ++c) {
    const auto v = verdict(anthyphairesis(make_sqrt(c), one()));
    const bool incommensurable = std::holds_alternative<Incommensurable>(v);
    expect(incommensurable == modern_oracle(c), "C=" + std::to_string(c) + " verdict vs oracle");
    expect(incommensurable == !square_by_search(c), "C=" + std::to_string(c) + " verdict vs square search");
  }
  oracle::Rng rng(2024);
  int tested = 0;
  while (tested < 1000) {
    const Rational a(Integer(rng.uniform(1, 1'000'000'000)), Integer(rng.uniform(1, 1'000'000'000)));
    const Rational b(Integer(rng.uniform(1, 1'000'000'000)), Integer(rng.uniform(1, 1'000'000'000)));
    if (a == b) continue;
    ++tested;
    const Rational& big = a > b ? a : b;
    const Rational& small = a > b ? b : a;
    const auto trace = anthyphairesis(big, small);
    expect(trace.is_finite(), "rational pair gave an infinite trace");
    const auto cm = std::get<Commensurable>(verdict(trace));
    const Rational measure = cm.measure_in_b * small;
    expect((big / measure).is_integer() && (small / measure).is_integer(),
           "measure " + measure.str() + " does not divide " + big.str() + " and " + small.str());
  }
}

void scale_invariance_at_scale() {
  oracle::Rng rng(1018);
  const std::uint64_t top = 1'000'000'000'000'000'000ULL;
  for (int i = 0; i < 1000; ++i) {
    const auto m = rng.uniform(2, top);
    const auto n = rng.uniform(1, m - 1);
    const Rational c(Integer(rng.uniform(1, top)), Integer(rng.uniform(1, top)));
    expect(scale_invariance_check(m, n, c),
           "m=" + std::to_string(m) + " n=" + std::to_string(n) + " c=" + c.str());
  }
}

void remainder_law() {
  for (unsigned long c = 2; c <= 100; ++c) {
    if (square_by_search(c)) continue;
    const auto e = remainder_sequence(make_sqrt(c), one(), 20);
    expect(e.size() == 20, "C=" + std::to_string(c) + " fewer than 20 remainders");
    expect(sign_of(e[0]) > 0 && sign_of(QFieldElement::rational(1, c) - e[0]) > 0,
           "C=" + std::to_string(c) + " first remainder out of (0, 1)");
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
      expect(sign_of(e[k + 1]) > 0 && sign_of(e[k] - e[k + 1]) > 0,
             "C=" + std::to_string(c) + " violation at " + std::to_string(k + 1));
    }
  }
}

void side_and_diameter() {
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto [s, d] = side_diameter(n);
    expect(d * d - 2 * s * s == (n % 2 == 0 ? 1 : -1), "n=" + std::to_string(n));
  }
  expect(side_diameter(4) == std::pair<Natural, Natural>{12, 17}, "(s_4, d_4) != (12, 17)");
  const auto cs = convergents({1, 2, 2, 2}, 4);
  expect(cs[3].p == 17 && cs[3].q == 12, "sqrt 2 convergent is not 17/12");
}

void certificate_integrity() {
  std::size_t emitted = 0;
  for (unsigned long c = 2; c <= 500; ++c) {
    const auto check_one = [&](const Certificate& cert) {
      ++emitted;
      expect(check(cert), "C=" + std::to_string(c) + " " + std::string(kind_name(cert)) + " fails");
      expect(check(parse(serialize(cert))), "C=" + std::to_string(c) + " fails after round trip");
    };
    check_one(anth_certificate(c));
    if (square_by_search(c)) continue;
    for (const auto& outcome : {anth_proof(c), parity_proof(c), residue_prover(c)}) {
      if (const auto* p = std::get_if<Proved>(&outcome)) check_one(p->certificate);
    }
  }
  const auto certs = corpus::build(200);
  expect(certs.size() == 200, "corpus size");
  std::size_t mutations = 0, accepted = 0;
  for (const auto& cert : certs) {
    expect(check(cert), "corpus certificate fails");
    corpus::for_each_mutation(serialize(cert), [&](const std::string& text) {
      ++mutations;
      if (!corpus::rejected(text)) ++accepted;
    });
  }
  expect(accepted == 0, std::to_string(accepted) + " of " + std::to_string(mutations) + " mutations accepted");
  note = std::to_string(emitted) + " emitted certificates checked, " + std::to_string(mutations) +
         " mutations all rejected";
}

void periodicity_cross_checks() {
  for (unsigned long c = 2; c <= 500; ++c) {
    if (square_by_search(c)) continue;
    const std::string tag = "C=" + std::to_string(c);
    const auto t = anthyphairesis(make_sqrt(c), one(), 2 * c + 2);
    const auto period = t.period();
    expect(!period.empty(), tag + " empty period");
    expect(period.back() == 2 * t.quotients.front(), tag + " final quotient != 2 floor(sqrt C)");
    for (std::size_t i = 0, j = period.size() - 2; i + 1 < period.size() && i < j; ++i, --j) {
      expect(period[i] == period[j], tag + " period body not palindromic");
    }
    expect(t.steps_executed <= 2 * c + 2, tag + " recurrence after " + std::to_string(t.steps_executed));
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Theodorus table 3..17 inclusive, 12 checked incommensurable rows", 1.0, theodorus_table_range},
      {2, "sqrt C expansions for the table match exactly and the numeric oracle", 0, theodorus_expansions},
      {3, "residue prover: proved for 3..15 non-squares, inconclusive for 17", 0, residue_split_at_17},
      {4, "verdict = square test for C <= 500; 1000 rational pairs share a measure", 0,
       commensurability_consistency},
      {5, "scale invariance on 1000 triples up to 10^18", 5.0, scale_invariance_at_scale},
      {6, "remainders strictly decrease, 20 steps, non-square C <= 100", 0, remainder_law},
      {7, "side and diameter: d^2 - 2 s^2 = (-1)^n for n <= 50, (s_4, d_4) = (12, 17)", 0,
       side_and_diameter},
      {8, "certificate integrity: emitted pass, every +-1 mutation rejected", 0, certificate_integrity},
      {9, "periods for C <= 500: palindrome, closes with 2 floor(sqrt C), within 2C+2 steps", 10.0,
       periodicity_cross_checks},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    note.clear();
    try {
      criterion.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.detail;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && criterion.limit_seconds > 0 && seconds >= criterion.limit_seconds) {
      ok = false;
      detail = "took " + std::to_string(seconds) + " s, limit " + std::to_string(criterion.limit_seconds) + " s";
    }
    std::printf("%s  [%d] %s (%.3f s)\n", ok ? "PASS" : "FAIL", criterion.id, criterion.name, seconds);
    if (!ok) {
      std::printf("      %s\n", detail.c_str());
      ++failed;
    } else if (!note.empty()) {
      std::printf("      %s\n", note.c_str());
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
