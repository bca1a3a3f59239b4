#include "anth/certificate.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "anth/error.hpp"
#include "anth/surd.hpp"

namespace anth {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Enumeration over Z_M x Z_M is only offered for small moduli.
constexpr unsigned kMaxModulus = 1024;

constexpr std::array<std::pair<CongruenceRule, std::string_view>, 7> kRuleNames{{
    {CongruenceRule::ClassResidue, "class_residue"},
    {CongruenceRule::SquareSet, "square_set"},
    {CongruenceRule::Descent, "descent"},
    {CongruenceRule::NEvenForcesMEven, "n_even_forces_m_even"},
    {CongruenceRule::MEvenForcesNEven, "m_even_forces_n_even"},
    {CongruenceRule::SolutionsForceMEven, "solutions_force_m_even"},
    {CongruenceRule::OddNNonSquare, "odd_n_nonsquare"},
}};

struct ResidueClass {
  unsigned modulus;
  unsigned residue;
  std::string_view label;
};

// The classes of the residue argument, each pinned to the modulus that defines it.
constexpr std::array<ResidueClass, 5> kClasses{{
    {4, 3, "4n+3"},
    {8, 5, "8k+5"},
    {4, 2, "4n+2"},
    {4, 0, "4n"},
    {8, 1, "8k+1"},
}};

std::vector<unsigned> square_residues(unsigned modulus) {
  std::set<unsigned> out;
  for (unsigned x = 0; x < modulus; ++x) out.insert(x * x % modulus);
  return {out.begin(), out.end()};
}

bool equals(const std::vector<Natural>& claimed, const std::vector<unsigned>& actual) {
  if (claimed.size() != actual.size()) return false;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (claimed[i] != actual[i]) return false;
  }
  return true;
}

// Every (m, n) mod M with m^2 = c n^2 (mod M) and guard(m, n) has even m
// (or even n when `want_n` is set).
template <typename Guard>
bool forces_even(unsigned c, unsigned modulus, bool want_n, Guard guard) {
  for (unsigned m = 0; m < modulus; ++m) {
    for (unsigned n = 0; n < modulus; ++n) {
      if ((m * m) % modulus != (c * (n * n % modulus)) % modulus) continue;
      if (!guard(m, n)) continue;
      if ((want_n ? n : m) % 2 != 0) return false;
    }
  }
  return true;
}

bool closes(const std::vector<CongruenceStep>& steps, const Natural& value) {
  auto has = [&](CongruenceRule rule) {
    return std::any_of(steps.begin(), steps.end(),
                       [&](const CongruenceStep& s) { return s.rule == rule && s.value == value; });
  };
  // n even => m even contradicts coprimality, so n is odd, and odd n admits no m.
  const bool odd_route = has(CongruenceRule::NEvenForcesMEven) && has(CongruenceRule::OddNNonSquare);
  // m is always even and m even forces n even: both even.
  const bool even_route =
      has(CongruenceRule::SolutionsForceMEven) && has(CongruenceRule::MEvenForcesNEven);
  return odd_route || even_route;
}

bool has_class_step(const std::vector<CongruenceStep>& steps, const Natural& value,
                    std::string_view label) {
  return std::any_of(steps.begin(), steps.end(), [&](const CongruenceStep& s) {
    if (s.rule != CongruenceRule::ClassResidue || s.value != value || s.residues.size() != 1) {
      return false;
    }
    return std::any_of(kClasses.begin(), kClasses.end(), [&](const ResidueClass& k) {
      return k.label == label && s.modulus == k.modulus && s.residues[0] == k.residue;
    });
  });
}

// A square_set step is only meaningful next to another step on the same modulus.
bool square_sets_used(const std::vector<CongruenceStep>& steps) {
  for (const auto& s : steps) {
    if (s.rule != CongruenceRule::SquareSet) continue;
    const bool used = std::any_of(steps.begin(), steps.end(), [&](const CongruenceStep& t) {
      return t.rule != CongruenceRule::SquareSet && t.rule != CongruenceRule::ClassResidue &&
             t.value == s.value && t.modulus == s.modulus;
    });
    if (!used) return false;
  }
  return true;
}

bool check_finite(const FiniteAnthCert& cert) {
  if (cert.quotients.empty()) throw MalformedCertificate("finite_anth with no quotients");
  if (cert.n.sign() <= 0 || cert.m <= cert.n) return false;
  Natural dividend = cert.m;
  Natural divisor = cert.n;
  for (std::size_t i = 0;; ++i) {
    if (i >= cert.quotients.size()) return false;
    const Natural quotient = dividend / divisor;
    const Natural remainder = dividend % divisor;
    if (quotient != cert.quotients[i]) return false;
    if (remainder.is_zero()) return i + 1 == cert.quotients.size() && divisor == cert.gcd;
    dividend = divisor;
    divisor = remainder;
  }
}

bool check_periodic(const PeriodicAnthCert& cert) {
  if (cert.period_quotients.empty()) throw MalformedCertificate("periodic_anth with empty period");
  if (cert.c < 2 || is_perfect_square(cert.c)) return false;
  if (cert.witness_state.d != cert.c) return false;
  const std::size_t pre = cert.preperiod_quotients.size();
  const std::size_t period = cert.period_quotients.size();
  if (cert.recurrence_offset != Natural(pre + period)) return false;

  QuadraticSurd witness(0, 1, cert.c);
  try {
    witness = QuadraticSurd(cert.witness_state.p, cert.witness_state.q, cert.witness_state.d);
  } catch (const DomainError&) {
    return false;
  }

  QuadraticSurd state(0, 1, cert.c);
  for (const Natural& expected : cert.preperiod_quotients) {
    AnthStep step = anth_step(state);
    if (step.quotient != expected) return false;
    state = std::move(step.next);
  }
  if (!(state == witness)) return false;
  for (std::size_t j = 0; j < period; ++j) {
    AnthStep step = anth_step(state);
    if (step.quotient != cert.period_quotients[j]) return false;
    state = std::move(step.next);
    // The period must be minimal: no earlier return to the witness.
    if ((state == witness) != (j + 1 == period)) return false;
  }
  return true;
}

bool check_steps(const std::vector<CongruenceStep>& steps) {
  if (steps.empty()) throw MalformedCertificate("no congruence steps");
  return std::all_of(steps.begin(), steps.end(), check_step) && square_sets_used(steps);
}

bool check_parity(const ParityCert& cert) {
  const Natural& k = cert.reduction_factor;
  if (k.sign() <= 0 || cert.c != 2 * k * k) return false;
  if (!check_steps(cert.steps)) return false;
  const Natural two = 2;
  for (const auto& s : cert.steps) {
    if (s.value != two) return false;
  }
  return closes(cert.steps, two);
}

bool check_residue(const ResidueDescentCert& cert) {
  const auto& chain = cert.descent_chain;
  if (chain.empty()) throw MalformedCertificate("empty descent chain");
  if (chain.front() != cert.c) return false;
  if (cert.class_label != residue_class_label(cert.c)) return false;
  if (!check_steps(cert.steps)) return false;
  for (const auto& s : cert.steps) {
    if (std::find(chain.begin(), chain.end(), s.value) == chain.end()) return false;
  }
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!has_class_step(cert.steps, chain[i], residue_class_label(chain[i]))) return false;
    if (i + 1 == chain.size()) break;
    const bool descended = std::any_of(cert.steps.begin(), cert.steps.end(), [&](const auto& s) {
      return s.rule == CongruenceRule::Descent && s.value == chain[i] && s.residues.size() == 1 &&
             s.residues[0] == chain[i + 1];
    });
    if (!descended) return false;
  }
  return closes(cert.steps, chain.back());
}

// ---------------------------------------------------------------------------
// JSON

std::string pointer(const std::string& base, const std::string& key) { return base + "/" + key; }

const json& field(const json& object, const std::string& key, const std::string& at) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError("missing field '" + key + "'", at);
  return *it;
}

void expect_keys(const json& object, std::initializer_list<std::string_view> keys,
                 const std::string& at) {
  if (!object.is_object()) throw ParseError("expected an object", at.empty() ? "/" : at);
  for (const auto& [key, value] : object.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ParseError("unknown field '" + key + "'", pointer(at, key));
    }
  }
  for (auto key : keys) field(object, std::string(key), at);
}

Integer read_integer(const json& object, const std::string& key, const std::string& at,
                     bool natural) {
  const json& value = field(object, key, at);
  const std::string where = pointer(at, key);
  if (!value.is_string()) throw ParseError("integers must be decimal strings", where);
  auto parsed = natural ? parse_natural(value.get<std::string>())
                        : parse_integer(value.get<std::string>());
  if (!parsed) throw ParseError("malformed integer \"" + value.get<std::string>() + "\"", where);
  return *parsed;
}

std::vector<Natural> read_naturals(const json& object, const std::string& key,
                                   const std::string& at) {
  const json& value = field(object, key, at);
  const std::string where = pointer(at, key);
  if (!value.is_array()) throw ParseError("expected an array", where);
  std::vector<Natural> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string item_at = pointer(where, std::to_string(i));
    if (!value[i].is_string()) throw ParseError("integers must be decimal strings", item_at);
    auto parsed = parse_natural(value[i].get<std::string>());
    if (!parsed) throw ParseError("malformed integer", item_at);
    out.push_back(std::move(*parsed));
  }
  return out;
}

ordered_json write_naturals(const std::vector<Natural>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

ordered_json write_steps(const std::vector<CongruenceStep>& steps) {
  ordered_json out = ordered_json::array();
  for (const auto& s : steps) {
    out.push_back({{"rule", rule_name(s.rule)},
                   {"value", s.value.str()},
                   {"modulus", s.modulus.str()},
                   {"residues", write_naturals(s.residues)}});
  }
  return out;
}

std::vector<CongruenceStep> read_steps(const json& object, const std::string& at) {
  const json& value = field(object, "steps", at);
  const std::string where = pointer(at, "steps");
  if (!value.is_array()) throw ParseError("expected an array", where);
  std::vector<CongruenceStep> steps;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string step_at = pointer(where, std::to_string(i));
    const json& item = value[i];
    expect_keys(item, {"rule", "value", "modulus", "residues"}, step_at);
    const json& rule = item["rule"];
    if (!rule.is_string()) throw ParseError("rule must be a string", pointer(step_at, "rule"));
    auto found = std::find_if(kRuleNames.begin(), kRuleNames.end(),
                              [&](const auto& entry) { return entry.second == rule.get<std::string>(); });
    if (found == kRuleNames.end()) throw ParseError("unknown rule", pointer(step_at, "rule"));
    Natural value = read_integer(item, "value", step_at, true);
    Natural modulus = read_integer(item, "modulus", step_at, true);
    std::vector<Natural> residues = read_naturals(item, "residues", step_at);
    CongruenceStep step{found->first, std::move(value), std::move(modulus), std::move(residues)};
    if (step.modulus < 2 || step.modulus > kMaxModulus) {
      throw SemanticError("modulus at " + step_at + " must lie in [2, " +
                          std::to_string(kMaxModulus) + "]");
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace

std::string_view rule_name(CongruenceRule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "unknown";
}

std::string_view kind_name(const Certificate& cert) {
  constexpr std::array<std::string_view, 4> names{"finite_anth", "periodic_anth", "parity",
                                                  "residue_descent"};
  return names[cert.index()];
}

std::string residue_class_label(const Natural& c) {
  switch (static_cast<unsigned>(mod_floor(c, 8))) {
    case 3:
    case 7:
      return "4n+3";
    case 5:
      return "8k+5";
    case 2:
    case 6:
      return "4n+2";
    case 0:
    case 4:
      return "4n";
    default:
      return "8k+1";
  }
}

bool check_step(const CongruenceStep& step) {
  if (step.modulus < 2 || step.modulus > kMaxModulus) {
    throw MalformedCertificate("modulus " + step.modulus.str() + " out of range");
  }
  const auto modulus = static_cast<unsigned>(step.modulus);
  const auto c = static_cast<unsigned>(mod_floor(step.value, step.modulus));
  const bool even_modulus = modulus % 2 == 0;
  switch (step.rule) {
    case CongruenceRule::ClassResidue: {
      if (step.residues.size() != 1) return false;
      const bool is_class = std::any_of(kClasses.begin(), kClasses.end(), [&](const auto& k) {
        return k.modulus == modulus && step.residues[0] == k.residue;
      });
      return is_class && step.residues[0] == c;
    }
    case CongruenceRule::SquareSet:
      return equals(step.residues, square_residues(modulus));
    case CongruenceRule::Descent:
      return modulus == 4 && step.residues.size() == 1 && step.residues[0].sign() > 0 &&
             step.value == 4 * step.residues[0] &&
             forces_even(0, 4, false, [](unsigned, unsigned) { return true; });
    case CongruenceRule::NEvenForcesMEven:
      return even_modulus && forces_even(c, modulus, false, [](unsigned, unsigned n) { return n % 2 == 0; });
    case CongruenceRule::MEvenForcesNEven:
      return even_modulus && forces_even(c, modulus, true, [](unsigned m, unsigned) { return m % 2 == 0; });
    case CongruenceRule::SolutionsForceMEven:
      return even_modulus && forces_even(c, modulus, false, [](unsigned, unsigned) { return true; });
    case CongruenceRule::OddNNonSquare: {
      if (!even_modulus) return false;
      std::set<unsigned> targets;
      for (unsigned n = 1; n < modulus; n += 2) targets.insert(c * (n * n % modulus) % modulus);
      if (!equals(step.residues, {targets.begin(), targets.end()})) return false;
      const auto squares = square_residues(modulus);
      return std::none_of(targets.begin(), targets.end(), [&](unsigned t) {
        return std::find(squares.begin(), squares.end(), t) != squares.end();
      });
    }
  }
  return false;
}

bool check(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, FiniteAnthCert>) return check_finite(c);
        if constexpr (std::is_same_v<T, PeriodicAnthCert>) return check_periodic(c);
        if constexpr (std::is_same_v<T, ParityCert>) return check_parity(c);
        if constexpr (std::is_same_v<T, ResidueDescentCert>) return check_residue(c);
      },
      cert);
}

std::string serialize(const Certificate& cert) {
  ordered_json doc;
  doc["kind"] = kind_name(cert);
  doc["version"] = 1;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, FiniteAnthCert>) {
          doc["m"] = c.m.str();
          doc["n"] = c.n.str();
          doc["quotients"] = write_naturals(c.quotients);
          doc["gcd"] = c.gcd.str();
        } else if constexpr (std::is_same_v<T, PeriodicAnthCert>) {
          doc["C"] = c.c.str();
          doc["preperiod_quotients"] = write_naturals(c.preperiod_quotients);
          doc["period_quotients"] = write_naturals(c.period_quotients);
          doc["witness_state"] = {{"P", c.witness_state.p.str()},
                                  {"Q", c.witness_state.q.str()},
                                  {"D", c.witness_state.d.str()}};
          doc["recurrence_offset"] = c.recurrence_offset.str();
        } else if constexpr (std::is_same_v<T, ParityCert>) {
          doc["C"] = c.c.str();
          doc["reduction_factor"] = c.reduction_factor.str();
          doc["steps"] = write_steps(c.steps);
        } else {
          doc["C"] = c.c.str();
          doc["class_label"] = c.class_label;
          doc["descent_chain"] = write_naturals(c.descent_chain);
          doc["steps"] = write_steps(c.steps);
        }
      },
      cert);
  return doc.dump(2) + "\n";
}

Certificate parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON: " + std::string(e.what()), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw ParseError("certificate must be a JSON object", "/");
  const json& kind = field(doc, "kind", "");
  if (!kind.is_string()) throw ParseError("kind must be a string", "/kind");
  const json& version = field(doc, "version", "");
  if (!version.is_number_integer()) throw ParseError("version must be an integer", "/version");
  if (version.get<long long>() != 1) throw SemanticError("unsupported certificate version");

  const std::string k = kind.get<std::string>();
  if (k == "finite_anth") {
    expect_keys(doc, {"kind", "version", "m", "n", "quotients", "gcd"}, "");
    Natural m = read_integer(doc, "m", "", true);
    Natural n = read_integer(doc, "n", "", true);
    std::vector<Natural> quotients = read_naturals(doc, "quotients", "");
    Natural gcd = read_integer(doc, "gcd", "", true);
    return FiniteAnthCert{std::move(m), std::move(n), std::move(quotients), std::move(gcd)};
  }
  if (k == "periodic_anth") {
    expect_keys(doc, {"kind", "version", "C", "preperiod_quotients", "period_quotients",
                      "witness_state", "recurrence_offset"},
                "");
    const json& w = doc["witness_state"];
    expect_keys(w, {"P", "Q", "D"}, "/witness_state");
    Integer p = read_integer(w, "P", "/witness_state", false);
    Integer q = read_integer(w, "Q", "/witness_state", false);
    Natural d = read_integer(w, "D", "/witness_state", true);
    WitnessState witness{std::move(p), std::move(q), std::move(d)};
    if (witness.q.is_zero()) throw SemanticError("witness_state has Q = 0");
    if (witness.d.is_zero() || is_perfect_square(witness.d)) {
      throw SemanticError("witness_state radicand must be a positive non-square");
    }
    if (!((witness.d - witness.p * witness.p) % witness.q).is_zero()) {
      throw SemanticError("witness_state violates Q | D - P^2");
    }
    Natural c = read_integer(doc, "C", "", true);
    std::vector<Natural> preperiod = read_naturals(doc, "preperiod_quotients", "");
    std::vector<Natural> period = read_naturals(doc, "period_quotients", "");
    Natural offset = read_integer(doc, "recurrence_offset", "", true);
    return PeriodicAnthCert{std::move(c), std::move(preperiod), std::move(period),
                            std::move(witness), std::move(offset)};
  }
  if (k == "parity") {
    expect_keys(doc, {"kind", "version", "C", "reduction_factor", "steps"}, "");
    Natural c = read_integer(doc, "C", "", true);
    Natural factor = read_integer(doc, "reduction_factor", "", true);
    std::vector<CongruenceStep> steps = read_steps(doc, "");
    return ParityCert{std::move(c), std::move(factor), std::move(steps)};
  }
  if (k == "residue_descent") {
    expect_keys(doc, {"kind", "version", "C", "class_label", "descent_chain", "steps"}, "");
    const json& label = doc["class_label"];
    if (!label.is_string()) throw ParseError("class_label must be a string", "/class_label");
    const std::string label_text = label.get<std::string>();
    const bool known = std::any_of(kClasses.begin(), kClasses.end(),
                                   [&](const auto& c) { return c.label == label_text; });
    if (!known) throw SemanticError("unknown residue class '" + label_text + "'");
    Natural c = read_integer(doc, "C", "", true);
    std::vector<Natural> chain = read_naturals(doc, "descent_chain", "");
    std::vector<CongruenceStep> steps = read_steps(doc, "");
    return ResidueDescentCert{std::move(c), label_text, std::move(chain), std::move(steps)};
  }
  throw ParseError("unknown certificate kind '" + k + "'", "/kind");
}

}  // namespace anth
