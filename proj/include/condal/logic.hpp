#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condal/conditional_algebra.hpp"
#include "condal/exec.hpp"
#include "condal/formula.hpp"

namespace condal {

// An interpretation of the conditional language: a sequence of all atoms
// (valuations) of the algebra, pairwise distinct. A basic conditional
// (phi|psi) is true when the first valuation satisfying psi also
// satisfies phi.
using Interp = Perm;

// Parses a conditional formula and validates it against the algebra:
// identifiers must resolve and every antecedent must be satisfiable.
// (Nested bars are already a syntax error.)
CondPtr parse_validated(std::string_view src, const AlgebraPtr& algebra);

// Validation of an already-built formula (same checks as above).
void validate_formula(const CondFormula& f, const AlgebraPtr& algebra);

// The formula as an event-leaf term / as an element of C(A);
// -> and <-> are expanded into meet/join/complement.
TermPtr to_term(const CondFormula& f, const AlgebraPtr& algebra);
CElement to_element(const CondFormula& f, const CondAlgebraPtr& calg,
                    Exec exec = Exec::serial);

bool eval_interp(const AlgebraPtr& algebra, const Interp& e,
                 const CondFormula& f);

// A canonical propositional formula denoting the event (disjunction of
// its atoms' minterms / labels).
PropPtr event_formula(const Event& e);

// Finite set of conditional formulas over one algebra. The conditional
// algebra is built lazily and cached for the fast engine.
class KnowledgeBase {
 public:
  explicit KnowledgeBase(AlgebraPtr algebra,
                         std::vector<CondPtr> formulas = {});
  static KnowledgeBase from_strings(AlgebraPtr algebra,
                                    const std::vector<std::string>& sources);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<CondPtr>& formulas() const { return formulas_; }
  const CondAlgebraPtr& calgebra() const;

  void add(CondPtr formula);

 private:
  AlgebraPtr algebra_;
  std::vector<CondPtr> formulas_;
  mutable CondAlgebraPtr calg_;
};

// fast translates formulas to elements of C(A) and tests set inclusion;
// brute enumerates all n! interpretations. They agree, including on the
// reported witness (the lexicographically least interpretation modeling
// the knowledge base but not the query).
enum class Engine { fast, brute };

// Size caps: the fast engine builds n!-bit sets (n <= 8, i.e. three
// propositional variables); brute enumeration stops at n <= 4 (two
// variables, 24 interpretations).
int engine_atom_cap(Engine engine);

struct EntailResult {
  bool entailed;
  std::optional<Interp> witness;
};

EntailResult entails(const KnowledgeBase& kb, const CondFormula& query,
                     Engine engine = Engine::fast, Exec exec = Exec::serial);

struct SatResult {
  bool satisfiable;
  std::optional<Interp> witness;
};

// Basic conditionals reduce to classical satisfiability of phi /\ psi;
// compounds go through the conditional algebra.
SatResult satisfiable(const AlgebraPtr& algebra, const CondFormula& f);

// phi |~ psi: the knowledge base entails (psi | phi). phi must be
// satisfiable.
bool nm_consequence(const KnowledgeBase& kb, const PropPtr& phi,
                    const PropPtr& psi, Engine engine = Engine::fast);

struct KlmRuleReport {
  std::string rule;
  std::uint64_t checked = 0;
  bool pass = true;
  std::string counterexample;  // first failing instance, rendered
};

struct KlmReport {
  std::vector<KlmRuleReport> rules;
  // The seven System-P rules (everything except Rational Monotonicity).
  bool preferential() const {
    for (const auto& r : rules)
      if (r.rule != "Rational Monotonicity" && !r.pass) return false;
    return true;
  }
  const KlmRuleReport& rule(const std::string& name) const;
};

// Checks the System-P closure rules plus Rational Monotonicity for the
// consequence relation of the knowledge base. Exhaustive over all event
// triples when the algebra has at most 4 atoms, otherwise `samples`
// seeded random triples.
KlmReport klm_harness(const KnowledgeBase& kb, std::uint64_t seed = 0,
                      int samples = 2000);

// The maximal consistent set of basic conditionals true under e: one
// conditional per canonical pair (a <= b), kept when e models it. Its
// consequence relation is complete (conditional excluded middle holds).
KnowledgeBase complete_kb(const AlgebraPtr& algebra, const Interp& e);

}  // namespace condal
