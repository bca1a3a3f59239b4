#include "anth/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "anth/certificate.hpp"
#include "anth/convergents.hpp"
#include "anth/engine.hpp"
#include "anth/error.hpp"
#include "anth/euclid.hpp"
#include "anth/reconstructions.hpp"
#include "anth/surd.hpp"

namespace anth::cli {

namespace {

using nlohmann::ordered_json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::optional<std::size_t> max_steps;
};

Natural natural_arg(const std::string& text, const char* what) {
  auto value = parse_natural(text);
  if (!value) throw DomainError(std::string(what) + " must be a natural number, got '" + text + "'");
  return *value;
}

Rational rational_arg(const std::string& text) {
  auto value = Rational::parse(text);
  if (!value) throw DomainError("expected a fraction p/q, got '" + text + "'");
  return *value;
}

ordered_json naturals_json(std::span<const Natural> values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

std::string join(std::span<const Natural> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + values[i].str();
  return out;
}

ordered_json trace_json(const AnthTrace& trace) {
  ordered_json termination;
  if (trace.is_finite()) {
    termination = {{"kind", "finite"}};
  } else {
    const auto& p = trace.periodic();
    termination = {{"kind", "eventually_periodic"},
                   {"preperiod_len", std::to_string(p.preperiod_len)},
                   {"period_len", std::to_string(p.period_len)},
                   {"witness_state",
                    {{"P", p.witness_state.p().str()},
                     {"Q", p.witness_state.q().str()},
                     {"D", p.witness_state.d().str()}}}};
  }
  return {{"quotients", naturals_json(trace.quotients)},
          {"termination", termination},
          {"steps_executed", std::to_string(trace.steps_executed)}};
}

ordered_json verdict_json(const Verdict& v) {
  if (const auto* c = std::get_if<Commensurable>(&v)) {
    return {{"kind", "commensurable"},
            {"m", c->m.str()},
            {"n", c->n.str()},
            {"common_measure_in_b", c->measure_in_b.str()}};
  }
  return {{"kind", "incommensurable"}, {"certificate_kind", Incommensurable::certificate_kind}};
}

std::string termination_text(const AnthTrace& trace) {
  if (trace.is_finite()) return "finite after " + std::to_string(trace.steps_executed) + " divisions";
  const auto& p = trace.periodic();
  return "eventually periodic, preperiod " + std::to_string(p.preperiod_len) + ", period " +
         std::to_string(p.period_len) + ", witness " + p.witness_state.str() + " recurs at step " +
         std::to_string(p.preperiod_len + p.period_len);
}

std::string verdict_text(const Verdict& v) {
  if (const auto* c = std::get_if<Commensurable>(&v)) {
    return "Commensurable: a = " + c->m.str() + "·c, b = " + c->n.str() + "·c with c = b/" +
           c->n.str();
  }
  return "Incommensurable (anthyphairesis is infinite)";
}

std::string step_text(const CongruenceStep& s) {
  const std::string v = s.value.str();
  const std::string m = s.modulus.str();
  const std::string set = "{" + join(s.residues) + "}";
  switch (s.rule) {
    case CongruenceRule::ClassResidue:
      return v + " ≡ " + join(s.residues) + " (mod " + m + ")";
    case CongruenceRule::SquareSet:
      return "squares mod " + m + " = " + set;
    case CongruenceRule::Descent:
      return v + " = 4·" + join(s.residues) + ": m² ≡ 0 (mod 4) so m = 2m' and m'² = " +
             join(s.residues) + "·n²";
    case CongruenceRule::NEvenForcesMEven:
      return "m² = " + v + "·n²: n even forces m even (mod " + m + "), so coprime n is odd";
    case CongruenceRule::MEvenForcesNEven:
      return "m² = " + v + "·n²: m even forces n even (mod " + m + ")";
    case CongruenceRule::SolutionsForceMEven:
      return "m² = " + v + "·n² forces m even (mod " + m + ")";
    case CongruenceRule::OddNNonSquare:
      return "n odd gives m² ≡ " + set + " (mod " + m + "), none of them a square";
  }
  return "?";
}

void print_certificate_text(std::ostream& out, const Certificate& cert) {
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, FiniteAnthCert>) {
          out << "  m = " << c.m << ", n = " << c.n << ", quotients [" << join(c.quotients)
              << "], gcd " << c.gcd << "\n";
        } else if constexpr (std::is_same_v<T, PeriodicAnthCert>) {
          out << "  preperiod [" << join(c.preperiod_quotients) << "], period ["
              << join(c.period_quotients) << "]\n"
              << "  witness (" << c.witness_state.p << "+√" << c.witness_state.d << ")/"
              << c.witness_state.q << " recurs at step " << c.recurrence_offset << "\n";
        } else {
          if constexpr (std::is_same_v<T, ParityCert>) {
            out << "  C = 2·" << c.reduction_factor << "², so √C rational would make √2 rational\n";
          } else {
            out << "  class " << c.class_label << ", descent " << [&] {
              std::string chain;
              for (std::size_t i = 0; i < c.descent_chain.size(); ++i) {
                chain += (i ? " → " : "") + c.descent_chain[i].str();
              }
              return chain;
            }() << "\n";
          }
          for (std::size_t i = 0; i < c.steps.size(); ++i) {
            out << "  " << (i + 1) << ". " << step_text(c.steps[i]) << "\n";
          }
          out << "  contradiction: m and n would be both even and coprime\n";
        }
      },
      cert);
}

void verify_or_throw(const Certificate& cert) {
  if (!check(cert)) throw InternalError("emitted certificate failed its own check");
}

// ---------------------------------------------------------------------------

int cmd_anth(Context& ctx, const std::string& c_text) {
  const Natural c = natural_arg(c_text, "C");
  const Magnitude side = make_sqrt(c);
  const AnthTrace trace = anthyphairesis(side, Rational(1), ctx.max_steps);
  const Verdict v = verdict(trace);
  if (ctx.json) {
    ordered_json doc = {{"C", c.str()}, {"is_square", is_perfect_square(c)}};
    doc["trace"] = trace_json(trace);
    doc["verdict"] = verdict_json(v);
    ctx.out << doc.dump(2) << "\n";
  } else {
    ctx.out << "√" << c << " = " << trace.str() << "\n"
            << "termination: " << termination_text(trace) << "\n"
            << "verdict: " << verdict_text(v) << "\n";
  }
  return kOk;
}

int cmd_pair(Context& ctx, const std::string& a_text, const std::string& b_text) {
  const Rational a = rational_arg(a_text);
  const Rational b = rational_arg(b_text);
  const AnthTrace trace = anthyphairesis(a, b, ctx.max_steps);
  const Verdict v = verdict(trace);
  const auto& c = std::get<Commensurable>(v);
  const Rational measure = c.measure_in_b * b;
  if (ctx.json) {
    ordered_json doc = {{"a", a.str()}, {"b", b.str()}};
    doc["trace"] = trace_json(trace);
    doc["verdict"] = verdict_json(v);
    doc["common_measure"] = measure.str();
    ctx.out << doc.dump(2) << "\n";
  } else {
    ctx.out << "Anth(" << a.str() << ", " << b.str() << ") = " << trace.str() << "\n"
            << "verdict: " << verdict_text(v) << "\n"
            << "common measure: " << measure.str() << "\n";
  }
  return kOk;
}

int cmd_gcd(Context& ctx, const std::string& m_text, const std::string& n_text, bool with_trace) {
  const Natural m = natural_arg(m_text, "M");
  const Natural n = natural_arg(n_text, "N");
  const Natural g = gcd_of(m, n);
  std::vector<DivisionStep> chain;
  if (with_trace && !m.is_zero() && !n.is_zero() && m != n) {
    chain = (m > n ? anth_nat(m, n) : anth_nat(n, m)).chain;
  }
  if (ctx.json) {
    ordered_json doc = {{"m", m.str()}, {"n", n.str()}, {"gcd", g.str()}};
    if (with_trace) {
      ordered_json steps = ordered_json::array();
      for (const auto& s : chain) {
        steps.push_back({{"dividend", s.dividend.str()},
                         {"quotient", s.quotient.str()},
                         {"divisor", s.divisor.str()},
                         {"remainder", s.remainder.str()}});
      }
      doc["chain"] = steps;
    }
    ctx.out << doc.dump(2) << "\n";
    return kOk;
  }
  for (const auto& s : chain) {
    ctx.out << s.dividend << " = " << s.quotient << "·" << s.divisor << " + " << s.remainder << "\n";
  }
  ctx.out << "gcd(" << m << ", " << n << ") = " << g << "\n";
  return kOk;
}

int cmd_convergents(Context& ctx, const std::string& c_text, std::size_t count) {
  const Natural c = natural_arg(c_text, "C");
  const AnthTrace trace = anthyphairesis(make_sqrt(c), Rational(1), ctx.max_steps);
  std::vector<Natural> quotients;
  for (std::size_t i = 0; i < count; ++i) {
    auto q = trace.quotient_at(i);
    if (!q) break;
    quotients.push_back(std::move(*q));
  }
  if (quotients.size() < count) {
    throw DomainError("√" + c.str() + " has only " + std::to_string(quotients.size()) +
                      " quotients");
  }
  const auto list = convergents(quotients, count);
  if (ctx.json) {
    ordered_json rows = ordered_json::array();
    for (const auto& cv : list) {
      rows.push_back({{"index", std::to_string(cv.index)},
                      {"p", cv.p.str()},
                      {"q", cv.q.str()},
                      {"pell_residual", pell_residual(cv.p, cv.q, c).str()}});
    }
    ctx.out << ordered_json{{"C", c.str()}, {"convergents", rows}}.dump(2) << "\n";
    return kOk;
  }
  ctx.out << "convergents of √" << c << " = " << trace.str() << "\n";
  for (const auto& cv : list) {
    ctx.out << std::setw(4) << cv.index << "  " << cv.p << "/" << cv.q
            << "  p²-" << c << "q² = " << pell_residual(cv.p, cv.q, c) << "\n";
  }
  return kOk;
}

int cmd_certify(Context& ctx, const std::string& c_text, const std::string& method) {
  const Natural c = natural_arg(c_text, "C");
  if (c < 2) throw DomainError("C must be at least 2");

  if (method == "oracle") {
    const bool irrational = modern_oracle(c);
    if (ctx.json) {
      ctx.out << ordered_json{{"C", c.str()}, {"method", "oracle"}, {"irrational", irrational}}.dump(2)
              << "\n";
    } else {
      ctx.out << "C=" << c << " method=oracle: √" << c << " is "
              << (irrational ? "irrational" : "rational") << "\n";
    }
    return kOk;
  }

  ProofOutcome outcome = NotApplicable{"C is a perfect square"};
  if (method == "anth") {
    // Squares get the commensurability chain instead of a proof of infinitude.
    outcome = is_perfect_square(c) ? ProofOutcome{Proved{anth_certificate(c, ctx.max_steps)}}
                                   : anth_proof(c, ctx.max_steps);
  } else if (method == "parity") {
    if (!is_perfect_square(c)) outcome = parity_proof(c);
  } else {
    if (!is_perfect_square(c)) outcome = residue_prover(c);
  }

  if (const auto* proved = std::get_if<Proved>(&outcome)) verify_or_throw(proved->certificate);

  if (ctx.json) {
    if (const auto* proved = std::get_if<Proved>(&outcome)) {
      ctx.out << serialize(proved->certificate);
    } else {
      const bool inconclusive = std::holds_alternative<Inconclusive>(outcome);
      const std::string reason = inconclusive ? std::get<Inconclusive>(outcome).reason
                                              : std::get<NotApplicable>(outcome).reason;
      ctx.out << ordered_json{{"C", c.str()},
                              {"method", method},
                              {"outcome", inconclusive ? "inconclusive" : "not_applicable"},
                              {"reason", reason}}
                     .dump(2)
              << "\n";
    }
  } else {
    ctx.out << "C=" << c << " method=" << method << ": " << describe(outcome) << "\n";
    if (const auto* proved = std::get_if<Proved>(&outcome)) {
      print_certificate_text(ctx.out, proved->certificate);
    }
  }
  return std::holds_alternative<Inconclusive>(outcome) ? kInconclusive : kOk;
}

int cmd_check(Context& ctx, const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot read " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  const Certificate cert = parse(buffer.str());
  const bool ok = check(cert);
  if (ctx.json) {
    ctx.out << ordered_json{{"file", path}, {"kind", kind_name(cert)}, {"valid", ok}}.dump(2) << "\n";
  } else {
    ctx.out << path << ": " << kind_name(cert) << " certificate "
            << (ok ? "valid" : "REJECTED") << "\n";
  }
  return ok ? kOk : kInvalidInput;
}

std::string short_outcome(const ProofOutcome& outcome) {
  if (const auto* p = std::get_if<Proved>(&outcome)) {
    return "proved(" + std::string(kind_name(p->certificate)) + ")";
  }
  if (const auto* i = std::get_if<Inconclusive>(&outcome)) return "inconclusive(" + i->reason + ")";
  return "-";
}

ordered_json outcome_json(const ProofOutcome& outcome) {
  if (const auto* p = std::get_if<Proved>(&outcome)) {
    return {{"outcome", "proved"}, {"certificate_kind", kind_name(p->certificate)}};
  }
  if (const auto* i = std::get_if<Inconclusive>(&outcome)) {
    return {{"outcome", "inconclusive"}, {"reason", i->reason}};
  }
  return {{"outcome", "not_applicable"}, {"reason", std::get<NotApplicable>(outcome).reason}};
}

int cmd_table(Context& ctx, const std::string& from_text, const std::string& to_text) {
  const Natural from = natural_arg(from_text, "--from");
  const Natural to = natural_arg(to_text, "--to");
  const auto rows = theodorus_table(from, to, ctx.max_steps);
  for (const auto& row : rows) {
    verify_or_throw(row.anth_certificate);
    for (const auto* o : {&row.parity, &row.residue}) {
      if (const auto* p = std::get_if<Proved>(o)) verify_or_throw(p->certificate);
    }
  }

  if (ctx.json) {
    ordered_json list = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json anth = trace_json(row.trace);
      anth["verdict"] = verdict_json(row.verdict);
      anth["certificate_kind"] = kind_name(row.anth_certificate);
      anth["certificate_checked"] = true;
      list.push_back({{"C", row.c.str()},
                      {"is_square", row.is_square},
                      {"anth", anth},
                      {"parity", outcome_json(row.parity)},
                      {"residue", outcome_json(row.residue)},
                      {"oracle_irrational", row.oracle}});
    }
    ctx.out << ordered_json{{"from", from.str()}, {"to", to.str()}, {"rows", list}}.dump(2) << "\n";
    return kOk;
  }

  ctx.out << std::left << std::setw(5) << "C" << std::setw(8) << "square" << std::setw(28)
          << "anthyphairesis" << std::setw(18) << "verdict" << std::setw(16) << "parity"
          << std::setw(26) << "residue"
          << "oracle\n";
  for (const auto& row : rows) {
    const bool incommensurable = std::holds_alternative<Incommensurable>(row.verdict);
    ctx.out << std::setw(5) << row.c.str() << std::setw(8) << (row.is_square ? "yes" : "no")
            << std::setw(28) << row.trace.str() << std::setw(18)
            << (incommensurable ? "incommensurable" : "commensurable") << std::setw(16)
            << short_outcome(row.parity) << std::setw(26) << short_outcome(row.residue)
            << (row.oracle ? "irrational" : "rational") << "\n";
  }
  return kOk;
}

std::optional<std::size_t> max_steps_from_env() {
  const char* raw = std::getenv("ANTH_MAX_STEPS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  auto value = parse_natural(raw);
  if (!value || value->is_zero() || *value > std::numeric_limits<std::size_t>::max()) {
    throw DomainError(std::string("ANTH_MAX_STEPS must be a positive integer, got '") + raw + "'");
  }
  return static_cast<std::size_t>(*value);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anthyphairesis of magnitudes and incommensurability certificates", "anth"};
  app.require_subcommand(1);
  bool json = false;

  std::string c_text, a_text, b_text, m_text, n_text, path, method = "anth";
  std::string from_text = "2", to_text = "17";
  bool with_trace = false;
  std::size_t count = 10;

  auto* anth_cmd = app.add_subcommand("anth", "Anthyphairesis of √C to the unit");
  anth_cmd->add_option("C", c_text, "radicand")->required();
  anth_cmd->add_flag("--json", json, "emit one JSON document");

  auto* pair_cmd = app.add_subcommand("pair", "Anthyphairesis of two rational magnitudes a > b");
  pair_cmd->add_option("A", a_text, "fraction p/q")->required();
  pair_cmd->add_option("B", b_text, "fraction p/q")->required();
  pair_cmd->add_flag("--json", json, "emit one JSON document");

  auto* gcd_cmd = app.add_subcommand("gcd", "Greatest common divisor by mutual division");
  gcd_cmd->add_option("M", m_text)->required();
  gcd_cmd->add_option("N", n_text)->required();
  gcd_cmd->add_flag("--trace", with_trace, "print the division chain");
  gcd_cmd->add_flag("--json", json, "emit one JSON document");

  auto* conv_cmd = app.add_subcommand("convergents", "Convergents of √C with Pell residuals");
  conv_cmd->add_option("C", c_text)->required();
  conv_cmd->add_option("-n", count, "number of convergents")->check(CLI::PositiveNumber);
  conv_cmd->add_flag("--json", json, "emit one JSON document");

  auto* certify_cmd = app.add_subcommand("certify", "Prove √C incommensurable by one method");
  certify_cmd->add_option("C", c_text)->required();
  certify_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"anth", "parity", "residue", "oracle"}));
  certify_cmd->add_flag("--json", json, "emit the certificate document");

  auto* check_cmd = app.add_subcommand("check", "Replay a certificate document");
  check_cmd->add_option("FILE", path)->required();
  check_cmd->add_flag("--json", json, "emit one JSON document");

  auto* table_cmd = app.add_subcommand("table", "Every method for each C in [from, to]");
  table_cmd->add_option("--from", from_text, "first C (inclusive)");
  table_cmd->add_option("--to", to_text, "last C (inclusive)");
  table_cmd->add_flag("--json", json, "emit one JSON document");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    Context ctx{out, err, json, max_steps_from_env()};
    if (*anth_cmd) return cmd_anth(ctx, c_text);
    if (*pair_cmd) return cmd_pair(ctx, a_text, b_text);
    if (*gcd_cmd) return cmd_gcd(ctx, m_text, n_text, with_trace);
    if (*conv_cmd) return cmd_convergents(ctx, c_text, count);
    if (*certify_cmd) return cmd_certify(ctx, c_text, method);
    if (*check_cmd) return cmd_check(ctx, path);
    if (*table_cmd) return cmd_table(ctx, from_text, to_text);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const SemanticError& e) {
    err << "invalid certificate: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const MalformedCertificate& e) {
    err << "malformed certificate: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const BudgetError& e) {
    err << "internal failure: " << e.what() << "\n";
    return kInternalFailure;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return kInternalFailure;
  }
  return kInvalidInput;
}

}  // namespace anth::cli
