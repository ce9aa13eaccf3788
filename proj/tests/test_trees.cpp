#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "condal/errors.hpp"
#include "condal/trees.hpp"

using namespace condal;

namespace {

CondAlgebraPtr calg(int n) {
  return ConditionalAlgebra::make(EventAlgebra::make(n));
}

}  // namespace

TEST_CASE("atom tree leaf counts") {
  CHECK(tree_leaf_count(build_atom_tree(EventAlgebra::make(4))) == 24);
  CHECK(tree_leaf_count(build_atom_tree(EventAlgebra::make(2))) == 2);
  CHECK(tree_leaf_count(build_atom_tree(EventAlgebra::make(3))) == 6);
  CHECK(tree_leaf_count(build_atom_tree(EventAlgebra::make(1))) == 1);
}

TEST_CASE("tree paths enumerate exactly the conditional atoms") {
  for (int n = 1; n <= 5; ++n) {
    auto alg = EventAlgebra::make(n);
    auto tree = build_atom_tree(alg);
    auto paths = tree_paths(tree);
    REQUIRE(paths.size() == factorial(n));
    // the tree is an independent oracle for rank order
    for (std::size_t r = 0; r < paths.size(); ++r)
      CHECK(paths[r] == perm_unrank(n, r));
  }
}

TEST_CASE("children share their antecedent and drop the parent atom") {
  auto alg = EventAlgebra::make(4);
  auto tree = build_atom_tree(alg);
  auto walk = [&](const AtomTreeNode& node, auto&& self) -> void {
    Event expected = node.antecedent.meet(alg->atom(node.atom).complement());
    for (const auto& child : node.children) {
      CHECK(child.antecedent == expected);
      CHECK(child.atom != node.atom);
      self(child, self);
    }
  };
  for (const auto& r : tree.roots) {
    CHECK(r.antecedent.is_top());
    walk(r, walk);
  }
}

TEST_CASE("tree rendering") {
  auto alg = EventAlgebra::make(2, {"a", "b"});
  CHECK(render_tree(build_atom_tree(alg)) ==
        "(T | T)\n  (a | T)\n  (b | T)\n");
  auto three = render_tree(build_atom_tree(EventAlgebra::make(3)));
  CHECK(three.find("(w2 | ~w1)") != std::string::npos);
  CHECK(three.find("(w3 | ~w1/\\~w2)") == std::string::npos);  // depth n-1 stops at level 2
}

TEST_CASE("blocks of a prefix") {
  auto c5 = calg(5);
  // the five-atom worked example: [[a5, a1]] has 3! = 6 atoms
  CHECK(block(c5, std::vector<std::uint8_t>{4, 0}).members.count() == 6);
  CHECK(block(c5, std::vector<std::uint8_t>{4, 2, 3, 0}).members.count() == 1);
  // a full prefix pins one atom
  std::vector<std::uint8_t> full{2, 0, 4, 1, 3};
  auto b = block(c5, full);
  CHECK(b.members.count() == 1);
  CHECK(c5->atom_perm(b.members.ranks()[0]) == full);
  CHECK_THROWS_AS(block(c5, std::vector<std::uint8_t>{1, 1}), Error);

  // |[[prefix of length t]]| = (n-t)! exhaustively for n <= 5
  for (int n = 1; n <= 5; ++n) {
    auto cn = calg(n);
    std::vector<std::uint8_t> prefix;
    auto rec = [&](auto&& self) -> void {
      auto blk = block(cn, prefix);
      CHECK(blk.members.count() ==
            factorial(n - static_cast<int>(prefix.size())));
      // members are exactly the permutations extending the prefix
      for (auto r : blk.members.ranks()) {
        Perm p = cn->atom_perm(r);
        CHECK(std::equal(prefix.begin(), prefix.end(), p.begin()));
      }
      if (static_cast<int>(prefix.size()) == n) return;
      for (std::uint8_t v = 0; v < n; ++v) {
        if (std::find(prefix.begin(), prefix.end(), v) != prefix.end())
          continue;
        prefix.push_back(v);
        self(self);
        prefix.pop_back();
      }
    };
    rec(rec);
  }
}

TEST_CASE("S_j blocks partition the atoms below (alpha|b)") {
  auto c5 = calg(5);
  auto base = c5->base();

  // b = a1 v a2, target a1: |S_5| = 6+2+2+1+1 = 12
  Event b = base->from_atoms({0, 1});
  auto s = s_blocks(c5, 0, b);
  REQUIRE(s.size() == 5);
  CHECK(s[4].count() == 12);
  // S_1 = all atoms starting with the target: (n-1)!
  CHECK(s[0].count() == 24);
  // S_j is empty when atom j <= b
  CHECK(s[1].is_bot());

  // the explicit block decomposition of S_5
  CElement expected = block(c5, std::vector<std::uint8_t>{4, 0}).members;
  for (std::vector<std::uint8_t> pre :
       {std::vector<std::uint8_t>{4, 2, 0}, std::vector<std::uint8_t>{4, 3, 0},
        std::vector<std::uint8_t>{4, 2, 3, 0},
        std::vector<std::uint8_t>{4, 3, 2, 0}})
    expected = expected.join(block(c5, pre).members);
  CHECK(s[4] == expected);

  CHECK_THROWS_AS(s_blocks(c5, 2, b), Error);  // target not below b

  // partition property, exhaustive over b and target for n <= 5
  for (int n = 2; n <= 5; ++n) {
    auto cn = calg(n);
    auto bn = cn->base();
    const std::uint32_t top = bn->top().bits();
    for (std::uint32_t y = 1; y <= top; ++y) {
      Event ev = bn->from_bits(y);
      for (int t = 0; t < n; ++t) {
        if (!bn->atom(t).leq(ev)) continue;
        auto blocks = s_blocks(cn, t, ev);
        CElement join = cn->bot();
        for (int j = 0; j < n; ++j) {
          for (int k = j + 1; k < n; ++k)
            CHECK(blocks[j].meet(blocks[k]).is_bot());
          join = join.join(blocks[j]);
          if (j != t && bn->atom(j).leq(ev)) CHECK(blocks[j].is_bot());
        }
        CHECK(join == atoms_below_basic(cn, bn->atom(t), ev));
      }
    }
  }
}
