#include "condal/logic.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>

#include "condal/errors.hpp"
#include "condal/parser.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace condal {

namespace {

void walk_basics(const CondFormula& f,
                 const std::function<void(const CondFormula&)>& visit) {
  switch (f.kind) {
    case CondFormula::Kind::Basic:
      visit(f);
      return;
    case CondFormula::Kind::Not:
      walk_basics(*f.lhs, visit);
      return;
    default:
      walk_basics(*f.lhs, visit);
      walk_basics(*f.rhs, visit);
      return;
  }
}

}  // namespace

void validate_formula(const CondFormula& f, const AlgebraPtr& algebra) {
  walk_basics(f, [&](const CondFormula& basic) {
    Event ante = truth_set(*basic.psi, algebra);
    if (ante.is_bot())
      throw Error("unsatisfiable antecedent in (" + to_string(*basic.phi) +
                  " | " + to_string(*basic.psi) + ")");
  });
}

CondPtr parse_validated(std::string_view src, const AlgebraPtr& algebra) {
  CondPtr f = parse_cond(src);
  validate_formula(*f, algebra);
  return f;
}

TermPtr to_term(const CondFormula& f, const AlgebraPtr& algebra) {
  switch (f.kind) {
    case CondFormula::Kind::Basic:
      return CondTerm::mk_basic(truth_set(*f.phi, algebra),
                                truth_set(*f.psi, algebra));
    case CondFormula::Kind::Not:
      return CondTerm::mk_not(to_term(*f.lhs, algebra));
    case CondFormula::Kind::And:
      return CondTerm::mk_and(to_term(*f.lhs, algebra),
                              to_term(*f.rhs, algebra));
    case CondFormula::Kind::Or:
      return CondTerm::mk_or(to_term(*f.lhs, algebra),
                             to_term(*f.rhs, algebra));
    case CondFormula::Kind::Imp:
      return CondTerm::mk_or(CondTerm::mk_not(to_term(*f.lhs, algebra)),
                             to_term(*f.rhs, algebra));
    case CondFormula::Kind::Iff: {
      TermPtr l = to_term(*f.lhs, algebra), r = to_term(*f.rhs, algebra);
      return CondTerm::mk_or(
          CondTerm::mk_and(l, r),
          CondTerm::mk_and(CondTerm::mk_not(l), CondTerm::mk_not(r)));
    }
  }
  throw Error("malformed conditional formula");
}

CElement to_element(const CondFormula& f, const CondAlgebraPtr& calg,
                    Exec exec) {
  return eval_term(calg, *to_term(f, calg->base()), exec);
}

bool eval_interp(const AlgebraPtr& algebra, const Interp& e,
                 const CondFormula& f) {
  validate_perm(algebra->atom_count(), e);
  auto eval = [&](const CondFormula& g, auto&& self) -> bool {
    switch (g.kind) {
      case CondFormula::Kind::Basic: {
        Event phi = truth_set(*g.phi, algebra);
        Event psi = truth_set(*g.psi, algebra);
        for (auto v : e)
          if (psi.contains_atom(v)) return phi.contains_atom(v);
        throw Error("unsatisfiable antecedent in (" + to_string(*g.phi) +
                    " | " + to_string(*g.psi) + ")");
      }
      case CondFormula::Kind::Not:
        return !self(*g.lhs, self);
      case CondFormula::Kind::And:
        return self(*g.lhs, self) && self(*g.rhs, self);
      case CondFormula::Kind::Or:
        return self(*g.lhs, self) || self(*g.rhs, self);
      case CondFormula::Kind::Imp:
        return !self(*g.lhs, self) || self(*g.rhs, self);
      case CondFormula::Kind::Iff:
        return self(*g.lhs, self) == self(*g.rhs, self);
    }
    throw Error("malformed conditional formula");
  };
  return eval(f, eval);
}

PropPtr event_formula(const Event& e) {
  const auto& alg = e.algebra();
  if (e.is_bot()) return PropFormula::mk_bot();
  if (e.is_top()) return PropFormula::mk_top();
  PropPtr out;
  for (int i : e.atoms_below()) {
    PropPtr minterm;
    if (alg->is_lindenbaum()) {
      for (int v = 0; v < alg->variable_count(); ++v) {
        PropPtr lit = PropFormula::mk_var(alg->variables()[v]);
        if (!alg->valuation(i, v)) lit = PropFormula::mk_not(lit);
        minterm = minterm ? PropFormula::mk_and(minterm, lit) : lit;
      }
    } else {
      minterm = PropFormula::mk_var(alg->atom_label(i));
    }
    out = out ? PropFormula::mk_or(out, minterm) : minterm;
  }
  return out;
}

KnowledgeBase::KnowledgeBase(AlgebraPtr algebra, std::vector<CondPtr> formulas)
    : algebra_(std::move(algebra)), formulas_(std::move(formulas)) {
  for (const auto& f : formulas_) validate_formula(*f, algebra_);
}

KnowledgeBase KnowledgeBase::from_strings(
    AlgebraPtr algebra, const std::vector<std::string>& sources) {
  std::vector<CondPtr> fs;
  fs.reserve(sources.size());
  for (const auto& s : sources) fs.push_back(parse_cond(s));
  return KnowledgeBase(std::move(algebra), std::move(fs));
}

const CondAlgebraPtr& KnowledgeBase::calgebra() const {
  if (!calg_) calg_ = ConditionalAlgebra::make(algebra_);
  return calg_;
}

void KnowledgeBase::add(CondPtr formula) {
  validate_formula(*formula, algebra_);
  formulas_.push_back(std::move(formula));
}

int engine_atom_cap(Engine engine) {
  return engine == Engine::fast ? 8 : 4;
}

namespace {

// Smallest rank whose interpretation models every formula in the
// knowledge base but not the query, or -1. Chunked scan over the rank
// space; parallel runs reduce to the same minimum.
std::int64_t first_countermodel(const KnowledgeBase& kb,
                                const CondFormula& query,
                                [[maybe_unused]] Exec exec) {
  const AlgebraPtr& alg = kb.algebra();
  const int n = alg->atom_count();
  const std::uint64_t total = factorial(n);
  // Resolve the event leaves once; per-interpretation evaluation then
  // only scans bit masks.
  std::vector<TermPtr> kb_terms;
  for (const auto& f : kb.formulas()) kb_terms.push_back(to_term(*f, alg));
  TermPtr q = to_term(query, alg);

  auto eval_t = [](const CondTerm& t, const Perm& e, auto&& self) -> bool {
    switch (t.kind) {
      case CondTerm::Kind::Basic:
        for (auto v : e)
          if (t.b.contains_atom(v)) return t.a.meet(t.b).contains_atom(v);
        throw Error("unsatisfiable antecedent");
      case CondTerm::Kind::Not:
        return !self(*t.lhs, e, self);
      case CondTerm::Kind::And:
        return self(*t.lhs, e, self) && self(*t.rhs, e, self);
      case CondTerm::Kind::Or:
        return self(*t.lhs, e, self) || self(*t.rhs, e, self);
    }
    return false;
  };

  constexpr std::uint64_t kChunk = 1024;
  const std::int64_t chunks =
      static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::int64_t best = static_cast<std::int64_t>(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(min : best) \
    if (exec == Exec::parallel && chunks > 1)
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t hi = std::min(lo + kChunk, total);
    Perm e = perm_unrank(n, lo);
    for (std::uint64_t r = lo; r < hi; ++r) {
      bool models_kb = true;
      for (const auto& t : kb_terms)
        if (!eval_t(*t, e, eval_t)) {
          models_kb = false;
          break;
        }
      if (models_kb && !eval_t(*q, e, eval_t)) {
        best = std::min(best, static_cast<std::int64_t>(r));
        break;
      }
      if (r + 1 < hi) std::next_permutation(e.begin(), e.end());
    }
  }
  return best == static_cast<std::int64_t>(total) ? -1 : best;
}

}  // namespace

EntailResult entails(const KnowledgeBase& kb, const CondFormula& query,
                     Engine engine, Exec exec) {
  const int n = kb.algebra()->atom_count();
  if (n > engine_atom_cap(engine))
    throw CapExceeded(
        std::string(engine == Engine::brute ? "brute" : "fast") +
        " engine supports at most " +
        std::to_string(engine_atom_cap(engine)) + " atoms; this algebra has " +
        std::to_string(n));
  validate_formula(query, kb.algebra());

  if (engine == Engine::brute) {
    std::int64_t r = first_countermodel(kb, query, exec);
    if (r < 0) return {true, std::nullopt};
    return {false, perm_unrank(n, static_cast<std::uint64_t>(r))};
  }

  const CondAlgebraPtr& calg = kb.calgebra();
  CElement premises = calg->top();
  for (const auto& f : kb.formulas())
    premises = premises.meet(to_element(*f, calg, exec));
  CElement target = to_element(query, calg, exec);
  DynBitset gap = premises.bits() & ~target.bits();
  std::int64_t first = gap.find_first();
  if (first < 0) return {true, std::nullopt};
  return {false, perm_unrank(n, static_cast<std::uint64_t>(first))};
}

SatResult satisfiable(const AlgebraPtr& algebra, const CondFormula& f) {
  const int n = algebra->atom_count();
  auto witness_starting_at = [&](int v) {
    Interp e;
    e.push_back(static_cast<std::uint8_t>(v));
    for (int u = 0; u < n; ++u)
      if (u != v) e.push_back(static_cast<std::uint8_t>(u));
    return e;
  };
  if (f.kind == CondFormula::Kind::Basic) {
    // classical reduction: (phi|psi) is satisfiable iff phi /\ psi is
    Event both = truth_set(*f.phi, algebra).meet(truth_set(*f.psi, algebra));
    if (both.is_bot()) return {false, std::nullopt};
    return {true, witness_starting_at(both.atoms_below().front())};
  }
  validate_formula(f, algebra);
  if (n > engine_atom_cap(Engine::fast))
    throw CapExceeded("satisfiability of compound formulas is capped at " +
                      std::to_string(engine_atom_cap(Engine::fast)) +
                      " atoms");
  auto calg = ConditionalAlgebra::make(algebra);
  CElement e = to_element(f, calg);
  std::int64_t first = e.bits().find_first();
  if (first < 0) return {false, std::nullopt};
  return {true, calg->atom_perm(static_cast<std::uint64_t>(first))};
}

bool nm_consequence(const KnowledgeBase& kb, const PropPtr& phi,
                    const PropPtr& psi, Engine engine) {
  if (truth_set(*phi, kb.algebra()).is_bot())
    throw Error("the antecedent of |~ must be satisfiable");
  return entails(kb, *CondFormula::mk_basic(psi, phi), engine).entailed;
}

namespace {

struct NmCache {
  const KnowledgeBase& kb;
  std::vector<signed char> memo;  // -1 unknown, 0 false, 1 true
  explicit NmCache(const KnowledgeBase& k)
      : kb(k), memo(std::size_t{1} << (2 * k.algebra()->atom_count()), -1) {}

  // x |~ y over event bit patterns; x must be nonempty.
  bool holds(std::uint32_t x, std::uint32_t y) {
    const int n = kb.algebra()->atom_count();
    auto& slot = memo[(static_cast<std::size_t>(x) << n) | y];
    if (slot < 0) {
      CondPtr q =
          CondFormula::mk_basic(event_formula(kb.algebra()->from_bits(y)),
                                event_formula(kb.algebra()->from_bits(x)));
      slot = entails(kb, *q).entailed ? 1 : 0;
    }
    return slot == 1;
  }
};

std::string render_nm(const AlgebraPtr& alg, std::uint32_t x,
                      std::uint32_t y) {
  return to_string(*event_formula(alg->from_bits(x))) + " |~ " +
         to_string(*event_formula(alg->from_bits(y)));
}

}  // namespace

const KlmRuleReport& KlmReport::rule(const std::string& name) const {
  for (const auto& r : rules)
    if (r.rule == name) return r;
  throw Error("unknown rule '" + name + "'");
}

KlmReport klm_harness(const KnowledgeBase& kb, std::uint64_t seed,
                      int samples) {
  const AlgebraPtr& alg = kb.algebra();
  const int n = alg->atom_count();
  const std::uint32_t top = alg->top_mask();
  NmCache nm(kb);

  KlmReport report;
  auto add_rule = [&](const std::string& name) -> std::size_t {
    report.rules.push_back(KlmRuleReport{name, 0, true, ""});
    return report.rules.size() - 1;
  };
  auto fail = [&](std::size_t idx, const std::string& instance) {
    auto& r = report.rules[idx];
    if (r.pass) {
      r.pass = false;
      r.counterexample = instance;
    }
  };

  // Instances: exhaustive over event triples when the algebra is small,
  // otherwise seeded sampling.
  std::vector<std::array<std::uint32_t, 3>> triples;
  if (n <= 4) {
    for (std::uint32_t a = 0; a <= top; ++a)
      for (std::uint32_t b = 0; b <= top; ++b)
        for (std::uint32_t c = 0; c <= top; ++c) triples.push_back({a, b, c});
  } else {
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    for (int i = 0; i < samples; ++i)
      triples.push_back({static_cast<std::uint32_t>(rng() % (top + 1)),
                         static_cast<std::uint32_t>(rng() % (top + 1)),
                         static_cast<std::uint32_t>(rng() % (top + 1))});
  }

  std::size_t reflexivity = add_rule("Reflexivity");
  for (std::uint32_t x = 1; x <= top; ++x) {
    ++report.rules[reflexivity].checked;
    if (!nm.holds(x, x)) fail(reflexivity, render_nm(alg, x, x));
  }

  std::size_t lle = add_rule("Left Logical Equivalence");
  std::size_t rw = add_rule("Right Weakening");
  std::size_t cut = add_rule("Cut");
  std::size_t orr = add_rule("OR");
  std::size_t andr = add_rule("AND");
  std::size_t cm = add_rule("Cautious Monotony");
  std::size_t rm = add_rule("Rational Monotonicity");

  for (const auto& [a, b, c] : triples) {
    // LLE: logically equivalent antecedents yield the same consequences.
    if (a != 0) {
      ++report.rules[lle].checked;
      PropPtr f1 = event_formula(alg->from_bits(a));
      PropPtr f2 = PropFormula::mk_not(PropFormula::mk_not(f1));
      PropPtr cons = event_formula(alg->from_bits(c));
      bool v1 = entails(kb, *CondFormula::mk_basic(cons, f1)).entailed;
      bool v2 = entails(kb, *CondFormula::mk_basic(cons, f2)).entailed;
      if (v1 != v2)
        fail(lle, render_nm(alg, a, c) + " changes under a double-negated antecedent");
    }
    // RW: c |~ a implies c |~ a\/b.
    if (c != 0) {
      ++report.rules[rw].checked;
      if (nm.holds(c, a) && !nm.holds(c, a | b))
        fail(rw, render_nm(alg, c, a) + " but not " + render_nm(alg, c, a | b));
    }
    // Cut: a |~ b and a/\b |~ c imply a |~ c.
    if (a != 0 && (a & b) != 0) {
      ++report.rules[cut].checked;
      if (nm.holds(a, b) && nm.holds(a & b, c) && !nm.holds(a, c))
        fail(cut, render_nm(alg, a, b) + ", " + render_nm(alg, a & b, c) +
                      " but not " + render_nm(alg, a, c));
    }
    // OR: a |~ c and b |~ c imply a\/b |~ c.
    if (a != 0 && b != 0) {
      ++report.rules[orr].checked;
      if (nm.holds(a, c) && nm.holds(b, c) && !nm.holds(a | b, c))
        fail(orr, render_nm(alg, a, c) + ", " + render_nm(alg, b, c) +
                      " but not " + render_nm(alg, a | b, c));
    }
    // AND: a |~ b and a |~ c imply a |~ b/\c.
    if (a != 0) {
      ++report.rules[andr].checked;
      if (nm.holds(a, b) && nm.holds(a, c) && !nm.holds(a, b & c))
        fail(andr, render_nm(alg, a, b) + ", " + render_nm(alg, a, c) +
                       " but not " + render_nm(alg, a, b & c));
    }
    // CM: a |~ b and a |~ c imply a/\b |~ c.
    if (a != 0 && (a & b) != 0) {
      ++report.rules[cm].checked;
      if (nm.holds(a, b) && nm.holds(a, c) && !nm.holds(a & b, c))
        fail(cm, render_nm(alg, a, b) + ", " + render_nm(alg, a, c) +
                     " but not " + render_nm(alg, a & b, c));
    }
    // RM: a |~ c and not a |~ ~b imply a/\b |~ c.
    if (a != 0 && (a & b) != 0) {
      ++report.rules[rm].checked;
      if (nm.holds(a, c) && !nm.holds(a, top & ~b) && !nm.holds(a & b, c))
        fail(rm, render_nm(alg, a, c) + "; not " +
                     render_nm(alg, a, top & ~b) + "; but not " +
                     render_nm(alg, a & b, c));
    }
  }
  return report;
}

KnowledgeBase complete_kb(const AlgebraPtr& algebra, const Interp& e) {
  validate_perm(algebra->atom_count(), e);
  const std::uint32_t top = algebra->top_mask();
  std::vector<CondPtr> formulas;
  for (std::uint32_t y = 1; y <= top; ++y) {
    std::uint32_t x = 0;
    for (;;) {  // canonical pairs x <= y
      CondPtr basic =
          CondFormula::mk_basic(event_formula(algebra->from_bits(x)),
                                event_formula(algebra->from_bits(y)));
      if (eval_interp(algebra, e, *basic)) formulas.push_back(basic);
      if (x == y) break;
      x = (x - y) & y;
    }
  }
  return KnowledgeBase(algebra, std::move(formulas));
}

}  // namespace condal
