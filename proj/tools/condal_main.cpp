#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "condal/conditional_algebra.hpp"
#include "condal/errors.hpp"
#include "condal/json_io.hpp"
#include "condal/logic.hpp"
#include "condal/measure_free.hpp"
#include "condal/parser.hpp"
#include "condal/probability.hpp"
#include "condal/trees.hpp"

using nlohmann::json;
using namespace condal;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitCap = 3;

struct Session {
  AlgebraPtr algebra;
  bool json_out = false;
  std::uint64_t seed = 0;
  mutable CondAlgebraPtr calg_;

  const CondAlgebraPtr& calg() const {
    if (!calg_) calg_ = ConditionalAlgebra::make(algebra);
    return calg_;
  }
};

std::string perm_string(const AlgebraPtr& alg, const Perm& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += alg->atom_label(p[i]);
  }
  return s + ">";
}

json perm_json(const AlgebraPtr& alg, const Perm& p) {
  json out = json::array();
  for (auto v : p) out.push_back(alg->atom_label(v));
  return out;
}

void emit(const Session& s, const json& doc, const std::string& text) {
  if (s.json_out)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

// ---------------------------------------------------------------- atoms

int cmd_atoms(const Session& s, const std::string& cond, bool tree) {
  const auto& alg = s.algebra;
  const int n = alg->atom_count();
  const auto& calg = s.calg();
  json doc;
  std::string text;

  doc["atom_count"] = n;
  doc["conditional_atom_count"] = calg->atom_count();
  doc["element_count_log2"] = calg->atom_count();
  text += std::to_string(calg->atom_count()) + " conditional atoms, |C(A)| = 2^" +
          std::to_string(calg->atom_count());
  if (calg->atom_count() <= 62) {
    std::uint64_t count = std::uint64_t{1} << calg->atom_count();
    doc["element_count"] = std::to_string(count);
    text += " = " + std::to_string(count);
  }
  text += "\n";

  if (cond.empty()) {
    json atoms = json::array();
    text += "atoms as permutations:\n";
    for (std::uint64_t r = 0; r < calg->atom_count(); ++r) {
      Perm p = calg->atom_perm(r);
      atoms.push_back({{"rank", r}, {"perm", perm_json(alg, p)}});
      text += "  " + std::to_string(r) + ": " + perm_string(alg, p) + "\n";
    }
    doc["atoms"] = atoms;
  } else {
    CondPtr f = parse_validated(cond, alg);
    CElement e = to_element(*f, calg);
    doc["conditional"] = cond;
    doc["count"] = e.count();
    json ranks = json::array();
    text += "atoms below " + cond + ": " + std::to_string(e.count()) + "\n";
    for (auto r : e.ranks()) {
      ranks.push_back(r);
      text += "  " + std::to_string(r) + ": " +
              perm_string(alg, calg->atom_perm(r)) + "\n";
    }
    doc["atoms_below"] = ranks;
    if (f->kind == CondFormula::Kind::Basic) {
      Event a = truth_set(*f->phi, alg), b = truth_set(*f->psi, alg);
      doc["formula_count"] = count_atoms_below(a, b);
      text += "counting formula: " + std::to_string(count_atoms_below(a, b)) +
              "\n";
    }
  }
  if (tree) {
    std::string rendered = render_tree(build_atom_tree(alg));
    doc["tree"] = rendered;
    text += rendered;
  }
  emit(s, doc, text);
  return kExitTrue;
}

// ---------------------------------------------------------------- query

struct ParsedBasic {
  bool is_basic = false;
  Event a, b;
};

ParsedBasic try_basic(const Session& s, const CondFormula& f) {
  if (f.kind != CondFormula::Kind::Basic) return {};
  return {true, truth_set(*f.phi, s.algebra), truth_set(*f.psi, s.algebra)};
}

int cmd_query_equal(const Session& s, const std::string& lhs,
                    const std::string& rhs) {
  CondPtr fl = parse_validated(lhs, s.algebra);
  CondPtr fr = parse_validated(rhs, s.algebra);
  ParsedBasic bl = try_basic(s, *fl), br = try_basic(s, *fr);
  bool verdict;
  std::string clause;
  if (bl.is_basic && br.is_basic) {
    verdict = equal_basic(bl.a, bl.b, br.a, br.b);
    if (verdict) {
      if (bl.b.leq(bl.a))
        clause = "both sides are the top conditional";
      else if (bl.a.meet(bl.b).is_bot())
        clause = "both sides are the bottom conditional";
      else
        clause = "equal consequent and antecedent after normalisation";
    } else {
      clause = "normalised pairs differ";
    }
  } else {
    verdict = to_element(*fl, s.calg()) == to_element(*fr, s.calg());
    clause = "semantic comparison of atom sets";
  }
  emit(s,
       json{{"query", "equal"},
            {"lhs", lhs},
            {"rhs", rhs},
            {"verdict", verdict},
            {"clause", clause}},
       std::string(verdict ? "true" : "false") + " (" + clause + ")\n");
  return verdict ? kExitTrue : kExitFalse;
}

int cmd_query_leq(const Session& s, const std::string& lhs,
                  const std::string& rhs) {
  CondPtr fl = parse_validated(lhs, s.algebra);
  CondPtr fr = parse_validated(rhs, s.algebra);
  ParsedBasic bl = try_basic(s, *fl), br = try_basic(s, *fr);
  bool verdict;
  std::string clause;
  if (bl.is_basic && br.is_basic) {
    auto guarded = leq_basic_guarded(bl.a, bl.b, br.a, br.b);
    if (guarded.has_value()) {
      verdict = *guarded;
      if (!verdict)
        clause = "guarded criterion refutes the inclusion";
      else if (br.b.leq(br.a))
        clause = "right side is the top conditional";
      else if (bl.a.meet(bl.b).is_bot())
        clause = "left side is the bottom conditional";
      else
        clause = "consequents nest and antecedents reverse-nest";
    } else {
      verdict = to_element(*fl, s.calg()).leq(to_element(*fr, s.calg()));
      clause = "guard not satisfied; semantic subset test used";
    }
  } else {
    verdict = to_element(*fl, s.calg()).leq(to_element(*fr, s.calg()));
    clause = "semantic comparison of atom sets";
  }
  emit(s,
       json{{"query", "leq"},
            {"lhs", lhs},
            {"rhs", rhs},
            {"verdict", verdict},
            {"clause", clause}},
       std::string(verdict ? "true" : "false") + " (" + clause + ")\n");
  return verdict ? kExitTrue : kExitFalse;
}

int cmd_query_eval(const Session& s, const std::string& term) {
  CondPtr f = parse_validated(term, s.algebra);
  CElement e = to_element(*f, s.calg());
  json ranks = json::array();
  std::string text = term + ": " + std::to_string(e.count()) + " atoms\n";
  for (auto r : e.ranks()) {
    ranks.push_back(r);
    text += "  " + std::to_string(r) + ": " +
            perm_string(s.algebra, s.calg()->atom_perm(r)) + "\n";
  }
  emit(s, json{{"query", "eval"}, {"term", term}, {"atoms", ranks}}, text);
  return kExitTrue;
}

// --------------------------------------------------------------- measure

struct LoadedMeasure {
  std::optional<EventMeasure> event;
  std::optional<CMeasure> conditional;
};

LoadedMeasure load_measure(const Session& s, const std::string& path) {
  json doc = load_json_file(path);
  LoadedMeasure out;
  if (doc.contains("conditional_weights")) {
    const json& w = doc.at("conditional_weights");
    std::vector<Rational> weights(s.calg()->atom_count());
    std::vector<bool> seen(weights.size(), false);
    for (auto it = w.begin(); it != w.end(); ++it) {
      std::uint64_t rank = std::stoull(it.key());
      if (rank >= weights.size())
        throw Error("conditional atom rank out of range: " + it.key());
      weights[rank] = parse_rational(it.value().get<std::string>());
      seen[rank] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i])
        throw Error("missing weight for conditional atom rank " +
                    std::to_string(i));
    out.conditional = CMeasure::make(s.calg(), std::move(weights));
  } else {
    out.event = measure_from_json(doc, s.algebra);
  }
  return out;
}

int cmd_measure_extend(const Session& s, const LoadedMeasure& m) {
  if (!m.event) throw Error("extend needs an event-measure file");
  CMeasure mu = canonical_extension(*m.event, s.calg());
  json atoms = json::array();
  std::string text;
  for (std::uint64_t r = 0; r < s.calg()->atom_count(); ++r) {
    Perm p = s.calg()->atom_perm(r);
    atoms.push_back({{"rank", r},
                     {"perm", perm_json(s.algebra, p)},
                     {"weight", rational_string(mu.atom_weight(r))}});
    text += std::to_string(r) + ": " + perm_string(s.algebra, p) + " -> " +
            rational_string(mu.atom_weight(r)) + "\n";
  }
  emit(s, json{{"extension", atoms}}, text);
  return kExitTrue;
}

int cmd_measure_value(const Session& s, const LoadedMeasure& m,
                      const std::string& term) {
  CondPtr f = parse_validated(term, s.algebra);
  CMeasure mu = m.conditional ? *m.conditional
                              : canonical_extension(*m.event, s.calg());
  Rational value = mu.of(to_element(*f, s.calg()));
  emit(s, json{{"term", term}, {"value", rational_string(value)}},
       rational_string(value) + "\n");
  return kExitTrue;
}

int cmd_measure_separable(const Session& s, const LoadedMeasure& m) {
  if (s.algebra->atom_count() > 6)
    std::cerr << "warning: the chain-rule scan is exponential; above 6 atoms "
                 "expect a long run\n";
  CMeasure mu = m.conditional ? *m.conditional
                              : canonical_extension(*m.event, s.calg());
  auto witness = separability_witness(mu);
  if (!witness) {
    emit(s, json{{"separable", true}}, "separable: true\n");
    return kExitTrue;
  }
  json doc{{"separable", false},
           {"witness",
            {{"a", event_to_json(witness->a)},
             {"b", event_to_json(witness->b)},
             {"c", event_to_json(witness->c)},
             {"lhs", rational_string(witness->lhs)},
             {"rhs", rational_string(witness->rhs)}}}};
  std::string text = "separable: false\nwitness: a=" + witness->a.to_string() +
                     " b=" + witness->b.to_string() +
                     " c=" + witness->c.to_string() + "; mu(a|c) = " +
                     rational_string(witness->lhs) + " but mu(a|b)*mu(b|c) = " +
                     rational_string(witness->rhs) + "\n";
  emit(s, doc, text);
  return kExitFalse;
}

int cmd_measure_cp_check(const Session& s, const LoadedMeasure& m) {
  TwoPlaceAssignment cp =
      m.conditional ? TwoPlaceAssignment::from_cmeasure_basics(*m.conditional)
                    : TwoPlaceAssignment::from_event_measure(*m.event);
  CpAxiomReport report = check_cp_axioms(cp);
  auto line = [](const char* name, const CpAxiomReport::Axiom& a) {
    std::string t = std::string(name) + ": " + (a.pass ? "pass" : "FAIL");
    if (!a.pass) t += "  [" + a.witness + "]";
    return t + "\n";
  };
  json doc{{"cp1", report.cp1.pass},
           {"cp2", report.cp2.pass},
           {"cp3", report.cp3.pass},
           {"cp4", report.cp4.pass}};
  if (!report.cp1.pass) doc["cp1_witness"] = report.cp1.witness;
  if (!report.cp2.pass) doc["cp2_witness"] = report.cp2.witness;
  if (!report.cp3.pass) doc["cp3_witness"] = report.cp3.witness;
  if (!report.cp4.pass) doc["cp4_witness"] = report.cp4.witness;
  emit(s, doc,
       line("CP1", report.cp1) + line("CP2", report.cp2) +
           line("CP3", report.cp3) + line("CP4", report.cp4));
  return report.all_pass() ? kExitTrue : kExitFalse;
}

// ---------------------------------------------------------------- entail

int cmd_entail_query(const Session& s, const KnowledgeBase& kb,
                     const std::string& query, Engine engine) {
  CondPtr f = parse_validated(query, kb.algebra());
  EntailResult res = entails(kb, *f, engine);
  if (res.entailed) {
    emit(s, json{{"entailed", true}, {"query", query}}, "entailed: true\n");
    return kExitTrue;
  }
  json doc{{"entailed", false},
           {"query", query},
           {"witness", perm_json(kb.algebra(), *res.witness)}};
  emit(s, doc,
       "entailed: false\nwitness: " +
           perm_string(kb.algebra(), *res.witness) + "\n");
  return kExitFalse;
}

int cmd_entail_nmc(const Session& s, const KnowledgeBase& kb,
                   const std::string& request, Engine engine) {
  auto bar = request.find("|~");
  if (bar == std::string::npos)
    throw Error("expected \"phi |~ psi\", got '" + request + "'");
  PropPtr phi = parse_prop(request.substr(0, bar));
  PropPtr psi = parse_prop(request.substr(bar + 2));
  bool holds = nm_consequence(kb, phi, psi, engine);
  emit(s, json{{"holds", holds}, {"query", request}},
       std::string("holds: ") + (holds ? "true" : "false") + "\n");
  return holds ? kExitTrue : kExitFalse;
}

int cmd_entail_klm(const Session& s, const KnowledgeBase& kb) {
  KlmReport report = klm_harness(kb, s.seed);
  json rules = json::array();
  std::string text;
  for (const auto& r : report.rules) {
    json jr{{"rule", r.rule}, {"checked", r.checked}, {"pass", r.pass}};
    if (!r.pass) jr["counterexample"] = r.counterexample;
    rules.push_back(jr);
    text += r.rule + ": " + (r.pass ? "pass" : "FAIL") + " (" +
            std::to_string(r.checked) + " instances)";
    if (!r.pass) text += "\n  counterexample: " + r.counterexample;
    text += "\n";
  }
  emit(s, json{{"rules", rules}, {"preferential", report.preferential()}},
       text);
  return report.preferential() ? kExitTrue : kExitFalse;
}

// --------------------------------------------------------------- compare

int cmd_compare(const Session& s, const std::string& lhs,
                const std::string& rhs) {
  CondPtr fl = parse_validated(lhs, s.algebra);
  CondPtr fr = parse_validated(rhs, s.algebra);
  ParsedBasic bl = try_basic(s, *fl), br = try_basic(s, *fr);
  if (!bl.is_basic || !br.is_basic)
    throw Error("compare works on basic conditionals");

  CElement el = atoms_below_basic(s.calg(), bl.a, bl.b);
  CElement er = atoms_below_basic(s.calg(), br.a, br.b);
  std::string alg_rel = el == er          ? "="
                        : el.leq(er)      ? "<"
                        : er.leq(el)      ? ">"
                                          : "incomparable";
  auto il = to_interval(bl.a, bl.b), ir = to_interval(br.a, br.b);
  std::string int_rel = il == ir                 ? "="
                        : interval_leq(il, ir)   ? "<"
                        : interval_leq(ir, il)   ? ">"
                                                 : "incomparable";
  emit(s,
       json{{"lhs", lhs},
            {"rhs", rhs},
            {"conditional_algebra", alg_rel},
            {"interval", int_rel}},
       "conditional-algebra order: " + alg_rel + "\ninterval order: " +
           int_rel + "\n");
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean algebras of conditionals: exact construction, "
               "probability, and entailment"};
  app.require_subcommand(1);

  std::string output_mode = "text";
  std::uint64_t seed = 0;
  app.add_option("--output", output_mode, "Output mode: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Seed for sampled checks");

  std::string algebra_file, measure_file, kb_file, cond, lhs, rhs, term,
      query;
  bool tree = false;
  std::string engine_name = "fast";

  auto* atoms = app.add_subcommand("atoms", "Atom structure of C(A)");
  atoms->add_option("--algebra", algebra_file)->required();
  atoms->add_option("--cond", cond, "List only the atoms below this term");
  atoms->add_flag("--tree", tree, "Render the chained-conditional tree");

  auto* q = app.add_subcommand("query", "Equality, order and evaluation");
  auto* q_equal = q->add_subcommand("equal");
  auto* q_leq = q->add_subcommand("leq");
  auto* q_eval = q->add_subcommand("eval");
  for (auto* sub : {q_equal, q_leq}) {
    sub->add_option("--algebra", algebra_file)->required();
    sub->add_option("lhs", lhs)->required();
    sub->add_option("rhs", rhs)->required();
  }
  q_eval->add_option("--algebra", algebra_file)->required();
  q_eval->add_option("term", term)->required();
  q->require_subcommand(1);

  auto* m = app.add_subcommand("measure", "Exact probabilities on C(A)");
  auto* m_extend = m->add_subcommand("extend");
  auto* m_value = m->add_subcommand("measure");
  auto* m_sep = m->add_subcommand("separable");
  auto* m_cp = m->add_subcommand("cp-check");
  for (auto* sub : {m_extend, m_value, m_sep, m_cp}) {
    sub->add_option("--algebra", algebra_file)->required();
    sub->add_option("--measure", measure_file)->required();
  }
  m_value->add_option("term", term)->required();
  m->require_subcommand(1);

  auto* e = app.add_subcommand("entail", "Entailment and |~ queries");
  e->add_option("--kb", kb_file)->required();
  e->add_option("--engine", engine_name)
      ->check(CLI::IsMember({"fast", "brute"}));
  e->add_option("query", query, "Conditional formula to test");
  auto* e_nmc = e->add_subcommand("nmc", "Nonmonotonic consequence");
  e_nmc->add_option("query", query, "\"phi |~ psi\"")->required();
  auto* e_klm = e->add_subcommand("klm", "System-P rule report");

  auto* cmp = app.add_subcommand("compare",
                                 "Algebra order next to interval order");
  cmp->add_option("--algebra", algebra_file)->required();
  cmp->add_option("lhs", lhs)->required();
  cmp->add_option("rhs", rhs)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    Session session;
    session.json_out = output_mode == "json";
    session.seed = seed;

    if (atoms->parsed() || q->parsed() || m->parsed() || cmp->parsed())
      session.algebra = algebra_from_json(load_json_file(algebra_file));

    if (atoms->parsed()) return cmd_atoms(session, cond, tree);
    if (q_equal->parsed()) return cmd_query_equal(session, lhs, rhs);
    if (q_leq->parsed()) return cmd_query_leq(session, lhs, rhs);
    if (q_eval->parsed()) return cmd_query_eval(session, term);
    if (m->parsed()) {
      LoadedMeasure lm = load_measure(session, measure_file);
      if (m_extend->parsed()) return cmd_measure_extend(session, lm);
      if (m_value->parsed()) return cmd_measure_value(session, lm, term);
      if (m_sep->parsed()) return cmd_measure_separable(session, lm);
      if (m_cp->parsed()) return cmd_measure_cp_check(session, lm);
    }
    if (e->parsed()) {
      KnowledgeBase kb = kb_from_json(load_json_file(kb_file));
      session.algebra = kb.algebra();
      Engine engine = engine_name == "brute" ? Engine::brute : Engine::fast;
      if (e_nmc->parsed()) return cmd_entail_nmc(session, kb, query, engine);
      if (e_klm->parsed()) return cmd_entail_klm(session, kb);
      if (query.empty())
        throw Error("entail needs a query or a subcommand (nmc, klm)");
      return cmd_entail_query(session, kb, query, engine);
    }
    if (cmp->parsed()) return cmd_compare(session, lhs, rhs);
    throw Error("no command selected");
  } catch (const CapExceeded& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitCap;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
}
