#pragma once

#include <string>
#include <vector>

#include "condal/conditional_algebra.hpp"

namespace condal {

// Node of the atom tree: the basic conditional (atom | antecedent).
// Children of a node all share the antecedent parent.antecedent /\ ~atom.
struct AtomTreeNode {
  int atom;          // index into the base algebra's atoms
  Event antecedent;  // top at level 1
  std::vector<AtomTreeNode> children;
};

// The tree whose root-to-leaf paths are exactly the atoms of C(A):
// depth n-1, n!/(n-k)! nodes at level k, n! leaves.
struct AtomTree {
  AlgebraPtr algebra;
  std::vector<AtomTreeNode> roots;  // the level-1 nodes (atom_i | T)
};

AtomTree build_atom_tree(const AlgebraPtr& algebra);

std::uint64_t tree_leaf_count(const AtomTree& tree);

// Root-to-leaf paths extended by the one missing atom, as full
// permutations, in the order the tree generates them (depth first,
// children by atom index). This order coincides with lexicographic rank
// order and the test suite relies on that as an independent oracle.
std::vector<Perm> tree_paths(const AtomTree& tree);

// Indented text rendering, one node per line.
std::string render_tree(const AtomTree& tree);

// The block of atoms whose permutation starts with `prefix`.
struct Block {
  std::vector<std::uint8_t> prefix;
  CElement members;  // (n - |prefix|)! atoms
};

Block block(const CondAlgebraPtr& algebra,
            std::span<const std::uint8_t> prefix);

// The S_j decomposition of at<=(target|b): entry j holds the atoms below
// (target|b) whose permutation starts with atom j. Requires target <= b.
std::vector<CElement> s_blocks(const CondAlgebraPtr& algebra, int target_atom,
                               const Event& b);

}  // namespace condal
