#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "condal/errors.hpp"
#include "condal/logic.hpp"
#include "condal/parser.hpp"

using namespace condal;

namespace {

// The two-variable language; minterm atoms are
// 0: p/\q   1: p/\~q   2: ~p/\q   3: ~p/\~q
AlgebraPtr lang2() { return EventAlgebra::lindenbaum(2, {"p", "q"}); }

CondPtr rand_cond(const AlgebraPtr& alg, std::mt19937& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    const std::uint32_t top = alg->top_mask();
    std::uint32_t phi = rng() % (top + 1);
    std::uint32_t psi = 1 + rng() % top;  // satisfiable antecedent
    return CondFormula::mk_basic(event_formula(alg->from_bits(phi)),
                                 event_formula(alg->from_bits(psi)));
  }
  switch (rng() % 3) {
    case 0: return CondFormula::mk_not(rand_cond(alg, rng, depth - 1));
    case 1:
      return CondFormula::mk_and(rand_cond(alg, rng, depth - 1),
                                 rand_cond(alg, rng, depth - 1));
    default:
      return CondFormula::mk_or(rand_cond(alg, rng, depth - 1),
                                rand_cond(alg, rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("validated parsing") {
  auto alg = lang2();
  CondPtr f = parse_validated("(p | q)", alg);
  CHECK(f->kind == CondFormula::Kind::Basic);
  CHECK_THROWS_AS(parse_validated("(p | q /\\ ~q)", alg), Error);
  CHECK_THROWS_AS(parse_validated("((p|q) | r)", alg), ParseError);
  CHECK_THROWS_AS(parse_validated("(p | r)", alg), Error);  // unknown variable
}

TEST_CASE("interpretation evaluation") {
  auto alg = lang2();
  // (psi|psi) is true under every interpretation
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Interp e = perm_unrank(4, rng() % 24);
    std::uint32_t psi = 1 + rng() % 15;
    PropPtr f = event_formula(alg->from_bits(psi));
    CHECK(eval_interp(alg, e, *CondFormula::mk_basic(f, f)));
  }

  // the worked two-variable example: e = <a4, a2, a3, a1>
  Interp e{3, 1, 2, 0};
  CondPtr high = parse_validated("(p/\\q \\/ ~p/\\~q | T)", alg);
  CHECK(eval_interp(alg, e, *high));
  CondPtr low = parse_validated("(p/\\q | p/\\q \\/ ~p/\\q)", alg);
  CHECK_FALSE(eval_interp(alg, e, *low));
}

TEST_CASE("formulas translate to conditional-algebra elements") {
  auto alg = lang2();
  auto kb = KnowledgeBase(alg);
  const auto& calg = kb.calgebra();

  // (phi|psi) \/ (~phi|psi) is the top element (excluded middle)
  CondPtr em = parse_validated("(p | q) \\/ (~p | q)", alg);
  CHECK(to_element(*em, calg).is_top());

  // -> and <-> expand correctly
  CondPtr imp = parse_validated("(p|q) -> (p|q)", alg);
  CHECK(to_element(*imp, calg).is_top());
  CondPtr iff = parse_validated("(p|q) <-> ~(~p|q)", alg);
  CHECK(to_element(*iff, calg).is_top());
}

TEST_CASE("entailment: positive, negative, and the exact witness") {
  auto alg = lang2();

  // {(phi|psi)} entails (phi \/ chi | psi)
  auto kb1 = KnowledgeBase::from_strings(alg, {"(p | q)"});
  CHECK(entails(kb1, *parse_validated("(p \\/ ~q | q)", alg)).entailed);

  // the rational-monotonicity counterexample support:
  // {(a1 v a4 | T)} does not entail (a1 | a1 v a3)
  auto kb = KnowledgeBase::from_strings(alg, {"(p/\\q \\/ ~p/\\~q | T)"});
  auto verdict =
      entails(kb, *parse_validated("(p/\\q | p/\\q \\/ ~p/\\q)", alg));
  CHECK_FALSE(verdict.entailed);
  REQUIRE(verdict.witness.has_value());
  CHECK(*verdict.witness == Interp{3, 1, 2, 0});  // <a4,a2,a3,a1>

  // tautology from the empty knowledge base
  auto empty = KnowledgeBase(alg);
  CHECK(entails(empty, *parse_validated("(p|q) \\/ (~p|q)", alg)).entailed);
}

TEST_CASE("fast and brute engines agree, witnesses included") {
  auto alg = lang2();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<CondPtr> fs;
    for (std::uint32_t i = 0; i < 1 + rng() % 3; ++i)
      fs.push_back(rand_cond(alg, rng, 2));
    KnowledgeBase kb(alg, std::move(fs));
    CondPtr query = rand_cond(alg, rng, 2);
    EntailResult fast = entails(kb, *query, Engine::fast);
    EntailResult brute = entails(kb, *query, Engine::brute);
    CHECK(fast.entailed == brute.entailed);
    CHECK(fast.witness == brute.witness);
  }

  // caps: the brute engine refuses three-variable languages
  auto alg3 = EventAlgebra::lindenbaum(3);
  KnowledgeBase kb3(alg3);
  CHECK_THROWS_AS(entails(kb3, *parse_validated("(p|q)", alg3), Engine::brute),
                  CapExceeded);
  CHECK(entails(kb3, *parse_validated("(p|q) \\/ (~p|q)", alg3), Engine::fast)
            .entailed);
}

TEST_CASE("axioms and rules are sound under every interpretation") {
  auto alg = lang2();
  auto kb = KnowledgeBase(alg);
  const auto& calg = kb.calgebra();
  std::mt19937 rng(11);
  const std::uint32_t top = alg->top_mask();

  auto is_valid = [&](const CondPtr& f) {
    return to_element(*f, calg).is_top();
  };
  auto basic = [&](std::uint32_t phi, std::uint32_t psi) {
    return CondFormula::mk_basic(event_formula(alg->from_bits(phi)),
                                 event_formula(alg->from_bits(psi)));
  };

  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t phi = rng() % (top + 1);
    std::uint32_t delta = rng() % (top + 1);
    std::uint32_t psi = 1 + rng() % top;

    // (psi|psi)
    CHECK(is_valid(basic(psi, psi)));
    // ~(phi|psi) <-> (~phi|psi)
    CHECK(is_valid(CondFormula::mk_iff(CondFormula::mk_not(basic(phi, psi)),
                                       basic(top & ~phi, psi))));
    // (phi|psi) /\ (delta|psi) <-> (phi/\delta|psi)
    CHECK(is_valid(CondFormula::mk_iff(
        CondFormula::mk_and(basic(phi, psi), basic(delta, psi)),
        basic(phi & delta, psi))));
    // (phi|psi) <-> (phi/\psi|psi)
    CHECK(
        is_valid(CondFormula::mk_iff(basic(phi, psi), basic(phi & psi, psi))));
    // chaining: phi <= chi <= psi gives (phi|chi) /\ (chi|psi) <-> (phi|psi)
    std::uint32_t chi = (phi & psi) | (rng() % (top + 1) & psi);
    if (chi != 0 && psi != 0)
      CHECK(is_valid(CondFormula::mk_iff(
          CondFormula::mk_and(basic(phi & chi, chi), basic(chi, psi)),
          basic(phi & chi, psi))));
    // weakening rule: phi <= delta gives (phi|psi) -> (phi \/ delta|psi)
    CHECK(is_valid(
        CondFormula::mk_imp(basic(phi, psi), basic(phi | delta, psi))));
    // antecedent replacement under logical equivalence
    PropPtr pa = event_formula(alg->from_bits(psi));
    PropPtr pb = PropFormula::mk_not(PropFormula::mk_not(pa));
    CHECK(is_valid(CondFormula::mk_iff(
        CondFormula::mk_basic(event_formula(alg->from_bits(phi)), pa),
        CondFormula::mk_basic(event_formula(alg->from_bits(phi)), pb))));
  }
}

TEST_CASE("deduction-theorem shape") {
  auto alg = lang2();
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    CondPtr premise = rand_cond(alg, rng, 2);
    CondPtr extra = rand_cond(alg, rng, 2);
    CondPtr target = rand_cond(alg, rng, 2);
    KnowledgeBase small(alg, {premise});
    KnowledgeBase large(alg, {premise, extra});
    CHECK(entails(large, *target).entailed ==
          entails(small, *CondFormula::mk_imp(extra, target)).entailed);
  }
}

TEST_CASE("satisfiability") {
  auto alg = lang2();
  auto sat = [&](const char* s) { return satisfiable(alg, *parse_cond(s)); };
  CHECK(sat("(p | p \\/ q)").satisfiable);
  CHECK_FALSE(sat("(p /\\ ~p | q)").satisfiable);
  auto compound = sat("(p|T) /\\ (~p|T)");
  CHECK_FALSE(compound.satisfiable);
  auto ok = sat("(p|T) /\\ (q | ~p)");
  CHECK(ok.satisfiable);
  REQUIRE(ok.witness.has_value());
  CHECK(eval_interp(alg, *ok.witness, *parse_cond("(p|T) /\\ (q | ~p)")));
}

TEST_CASE("nonmonotonic consequence") {
  auto alg = lang2();
  auto empty = KnowledgeBase(alg);

  // reflexivity from the empty base
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint32_t x = 1 + rng() % 15;
    PropPtr f = event_formula(alg->from_bits(x));
    CHECK(nm_consequence(empty, f, f));
  }
  CHECK_THROWS_AS(
      nm_consequence(empty, PropFormula::mk_bot(), PropFormula::mk_top()),
      Error);

  // the worked single-conditional knowledge base
  auto kb = KnowledgeBase::from_strings(alg, {"(p/\\q \\/ ~p/\\~q | T)"});
  PropPtr a1 = parse_prop("p/\\q");
  PropPtr a14 = parse_prop("p/\\q \\/ ~p/\\~q");
  PropPtr a13 = parse_prop("p/\\q \\/ ~p/\\q");
  // T |~ a1 v a4 holds
  CHECK(nm_consequence(kb, PropFormula::mk_top(), a14));
  // a1 v a3 |~ a1 fails
  CHECK_FALSE(nm_consequence(kb, a13, a1));

  // cautious-monotony instances from any base
  for (int trial = 0; trial < 50; ++trial) {
    std::uint32_t a = 1 + rng() % 15, b = rng() % 16, c = rng() % 16;
    auto f = [&](std::uint32_t bits) {
      return event_formula(alg->from_bits(bits));
    };
    if ((a & b) == 0) continue;
    if (nm_consequence(kb, f(a), f(b)) && nm_consequence(kb, f(a), f(c)))
      CHECK(nm_consequence(kb, f(a & b), f(c)));
  }
}

TEST_CASE("System-P rules hold; Rational Monotonicity fails here") {
  auto alg = lang2();
  auto kb = KnowledgeBase::from_strings(alg, {"(p/\\q \\/ ~p/\\~q | T)"});
  KlmReport report = klm_harness(kb);
  CHECK(report.preferential());
  for (const char* rule :
       {"Reflexivity", "Left Logical Equivalence", "Right Weakening", "Cut",
        "OR", "AND", "Cautious Monotony"}) {
    CHECK(report.rule(rule).pass);
    CHECK(report.rule(rule).checked > 0);
  }
  CHECK_FALSE(report.rule("Rational Monotonicity").pass);

  // the specific failing instance: psi = T, phi = a1 v a4, chi = a1 v a3
  PropPtr a14 = parse_prop("p/\\q \\/ ~p/\\~q");
  PropPtr a13 = parse_prop("p/\\q \\/ ~p/\\q");
  PropPtr not_chi = parse_prop("p/\\~q \\/ ~p/\\~q");
  CHECK(nm_consequence(kb, PropFormula::mk_top(), a14));
  CHECK_FALSE(nm_consequence(kb, PropFormula::mk_top(), not_chi));
  CHECK_FALSE(nm_consequence(kb, a13, a14));
}

TEST_CASE("complete knowledge bases restore Rational Monotonicity and CEM") {
  auto alg = lang2();
  Interp e{1, 3, 0, 2};  // an arbitrary interpretation
  KnowledgeBase kb = complete_kb(alg, e);

  // sanity: its models are exactly {e}
  const auto& calg = kb.calgebra();
  CElement models = calg->top();
  for (const auto& f : kb.formulas())
    models = models.meet(to_element(*f, calg));
  REQUIRE(models.count() == 1);
  CHECK(calg->atom_perm(models.ranks()[0]) == e);

  KlmReport report = klm_harness(kb);
  CHECK(report.preferential());
  CHECK(report.rule("Rational Monotonicity").pass);

  // conditional excluded middle: phi |~ psi iff not (phi |~ ~psi)
  const std::uint32_t top = alg->top_mask();
  for (std::uint32_t x = 1; x <= top; ++x)
    for (std::uint32_t y = 0; y <= top; ++y) {
      PropPtr phi = event_formula(alg->from_bits(x));
      bool pos = nm_consequence(kb, phi, event_formula(alg->from_bits(y)));
      bool neg =
          nm_consequence(kb, phi, event_formula(alg->from_bits(top & ~y)));
      CHECK(pos == !neg);
    }
}

TEST_CASE("three-variable fast engine agrees with sampled interpretations") {
  // Full brute enumeration is capped below this size, so the fast
  // verdicts are cross-checked against sampled interpretations instead:
  // entailed queries admit no sampled countermodel, and reported
  // witnesses really are countermodels.
  auto alg = EventAlgebra::lindenbaum(3);
  std::mt19937 rng(19);
  const std::uint32_t top = alg->top_mask();
  const std::uint64_t total = factorial(alg->atom_count());
  for (int trial = 0; trial < 25; ++trial) {
    KnowledgeBase kb(alg);
    for (std::uint32_t i = 0; i < 1 + rng() % 2; ++i)
      kb.add(CondFormula::mk_basic(
          event_formula(alg->from_bits(rng() % (top + 1))),
          event_formula(alg->from_bits(1 + rng() % top))));
    CondPtr q = CondFormula::mk_or(
        CondFormula::mk_basic(event_formula(alg->from_bits(rng() % (top + 1))),
                              event_formula(alg->from_bits(1 + rng() % top))),
        CondFormula::mk_not(CondFormula::mk_basic(
            event_formula(alg->from_bits(rng() % (top + 1))),
            event_formula(alg->from_bits(1 + rng() % top)))));
    EntailResult res = entails(kb, *q, Engine::fast);
    auto models_kb = [&](const Interp& e) {
      for (const auto& f : kb.formulas())
        if (!eval_interp(alg, e, *f)) return false;
      return true;
    };
    if (res.entailed) {
      for (int s = 0; s < 400; ++s) {
        Interp e = perm_unrank(alg->atom_count(), rng() % total);
        if (models_kb(e)) CHECK(eval_interp(alg, e, *q));
      }
    } else {
      REQUIRE(res.witness.has_value());
      CHECK(models_kb(*res.witness));
      CHECK_FALSE(eval_interp(alg, *res.witness, *q));
    }
  }
}
