#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "condal/errors.hpp"
#include "condal/event_algebra.hpp"
#include "condal/parser.hpp"

using namespace condal;

TEST_CASE("algebra construction and lattice size") {
  auto alg = EventAlgebra::make(3);
  CHECK(alg->atom_count() == 3);
  // 2^3 = 8 distinct events
  CHECK(alg->top().bits() == 0b111);
  CHECK(alg->bot().bits() == 0);

  auto one = EventAlgebra::make(1);
  CHECK(one->top().bits() == 1);

  auto four = EventAlgebra::make(4);
  CHECK(four->top().bits() == 0b1111);

  CHECK_THROWS_AS(EventAlgebra::make(0), Error);
  CHECK_THROWS_AS(EventAlgebra::make(2, {"a", "a"}), Error);
  CHECK_THROWS_AS(EventAlgebra::make(2, {"a", ""}), Error);
  CHECK_THROWS_AS(EventAlgebra::make(99), CapExceeded);
}

TEST_CASE("event operations are bitwise") {
  auto alg = EventAlgebra::make(3, {"w1", "w2", "w3"});
  Event a = alg->from_atoms({0, 1});  // w1 v w2
  Event b = alg->from_atoms({1, 2});  // w2 v w3

  CHECK(a.meet(a.complement()).is_bot());
  CHECK(a.join(a.complement()).is_top());
  CHECK(a.meet(b) == alg->atom(1));
  CHECK(a.join(b).is_top());
  CHECK(alg->atom(1).leq(a));
  CHECK_FALSE(a.leq(b));
  CHECK(alg->top().atoms_below() == std::vector<int>{0, 1, 2});
  CHECK(alg->atom(2).is_atom());
  CHECK_FALSE(a.is_atom());
  CHECK(alg->from_labels({"w1", "w3"}).bits() == 0b101);
  CHECK_THROWS_AS(alg->from_labels({"nope"}), Error);

  auto other = EventAlgebra::make(3);
  CHECK_THROWS_AS(a.meet(other->top()), Error);
  CHECK_THROWS_AS((void)(a == other->top()), Error);
}

TEST_CASE("boolean identities hold exhaustively for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    auto alg = EventAlgebra::make(n);
    const std::uint32_t top = alg->top().bits();
    for (std::uint32_t x = 0; x <= top; ++x) {
      for (std::uint32_t y = 0; y <= top; ++y) {
        Event a = alg->from_bits(x), b = alg->from_bits(y);
        CHECK(a.meet(b).complement() == a.complement().join(b.complement()));
        CHECK(a.join(b).complement() == a.complement().meet(b.complement()));
        CHECK(a.meet(a.join(b)) == a);
        CHECK(a.join(a.meet(b)) == a);
        for (std::uint32_t z = 0; z <= top; ++z) {
          Event c = alg->from_bits(z);
          CHECK(a.meet(b.join(c)) == a.meet(b).join(a.meet(c)));
        }
      }
    }
  }
}

TEST_CASE("atoms form a partition") {
  auto alg = EventAlgebra::make(4);
  Event join = alg->bot();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j)
      CHECK(alg->atom(i).meet(alg->atom(j)).is_bot());
    join = join.join(alg->atom(i));
  }
  CHECK(join.is_top());
}

TEST_CASE("lindenbaum algebras") {
  auto l2 = EventAlgebra::lindenbaum(2);
  CHECK(l2->atom_count() == 4);
  CHECK(l2->is_lindenbaum());
  // all-true minterm first, variable 0 most significant
  CHECK(l2->atom_label(0) == "p/\\q");
  CHECK(l2->atom_label(1) == "p/\\~q");
  CHECK(l2->atom_label(2) == "~p/\\q");
  CHECK(l2->atom_label(3) == "~p/\\~q");

  CHECK(EventAlgebra::lindenbaum(1)->atom_count() == 2);
  CHECK(EventAlgebra::lindenbaum(3)->atom_count() == 8);
  CHECK_THROWS_AS(EventAlgebra::lindenbaum(0), Error);
}

TEST_CASE("truth sets follow the truth table") {
  auto l2 = EventAlgebra::lindenbaum(2, {"p", "q"});
  auto ts = [&](const char* s) { return truth_set(*parse_prop(s), l2); };

  CHECK(ts("p /\\ q") == l2->atom(0));  // the minterm itself
  CHECK(ts("T").is_top());
  CHECK(ts("F").is_bot());
  // p holds at the two atoms whose valuation makes p true
  CHECK(ts("p") == l2->from_atoms({0, 1}));
  CHECK(ts("q") == l2->from_atoms({0, 2}));
  CHECK(ts("p -> q") == ts("~p \\/ q"));
  CHECK(ts("p <-> q") == l2->from_atoms({0, 3}));
  CHECK_THROWS_AS(ts("r"), Error);

  // identifiers in a plain algebra name atoms
  auto alg = EventAlgebra::make(3, {"u", "v", "w"});
  CHECK(truth_set(*parse_prop("u \\/ w"), alg) == alg->from_atoms({0, 2}));
}

TEST_CASE("truth_set is a homomorphism") {
  auto l3 = EventAlgebra::lindenbaum(3);
  std::mt19937 rng(7);
  auto rand_formula = [&](auto&& self, int depth) -> PropPtr {
    int pick = static_cast<int>(rng() % (depth > 0 ? 6 : 3));
    switch (pick) {
      case 0: return PropFormula::mk_var(l3->variables()[rng() % 3]);
      case 1: return PropFormula::mk_top();
      case 2: return PropFormula::mk_bot();
      case 3: return PropFormula::mk_not(self(self, depth - 1));
      case 4:
        return PropFormula::mk_and(self(self, depth - 1), self(self, depth - 1));
      default:
        return PropFormula::mk_or(self(self, depth - 1), self(self, depth - 1));
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    PropPtr f = rand_formula(rand_formula, 3);
    PropPtr g = rand_formula(rand_formula, 3);
    Event tf = truth_set(*f, l3), tg = truth_set(*g, l3);
    CHECK(truth_set(*PropFormula::mk_and(f, g), l3) == tf.meet(tg));
    CHECK(truth_set(*PropFormula::mk_or(f, g), l3) == tf.join(tg));
    CHECK(truth_set(*PropFormula::mk_not(f), l3) == tf.complement());
  }
}
