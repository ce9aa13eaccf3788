#include "condal/trees.hpp"

#include "condal/errors.hpp"

namespace condal {

namespace {

void grow(const AlgebraPtr& alg, AtomTreeNode& node, std::uint32_t used,
          int depth_left) {
  if (depth_left <= 0) return;
  const int n = alg->atom_count();
  Event child_ante = node.antecedent.meet(alg->atom(node.atom).complement());
  for (int j = 0; j < n; ++j) {
    if (used & (std::uint32_t{1} << j)) continue;
    AtomTreeNode child{j, child_ante, {}};
    grow(alg, child, used | (std::uint32_t{1} << j), depth_left - 1);
    node.children.push_back(std::move(child));
  }
}

void collect_paths(const AtomTreeNode& node, Perm& path, std::uint32_t used,
                   int n, std::vector<Perm>& out) {
  path.push_back(static_cast<std::uint8_t>(node.atom));
  used |= std::uint32_t{1} << node.atom;
  if (node.children.empty()) {
    Perm full = path;
    for (int v = 0; v < n; ++v)
      if (!(used & (std::uint32_t{1} << v)))
        full.push_back(static_cast<std::uint8_t>(v));
    out.push_back(std::move(full));
  } else {
    for (const auto& child : node.children)
      collect_paths(child, path, used, n, out);
  }
  path.pop_back();
}

void render_node(const AtomTreeNode& node, const AlgebraPtr& alg, int indent,
                 std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += "(" + alg->atom_label(node.atom) + " | ";
  if (node.antecedent.is_top()) {
    out += "T";
  } else {
    // antecedents along a path are conjunctions of negated atoms
    Event negated = node.antecedent.complement();
    bool first = true;
    for (int v = 0; v < alg->atom_count(); ++v) {
      if (!negated.contains_atom(v)) continue;
      if (!first) out += "/\\";
      out += "~" + alg->atom_label(v);
      first = false;
    }
  }
  out += ")\n";
  for (const auto& child : node.children)
    render_node(child, alg, indent + 1, out);
}

}  // namespace

AtomTree build_atom_tree(const AlgebraPtr& algebra) {
  AtomTree tree{algebra, {}};
  const int n = algebra->atom_count();
  for (int i = 0; i < n; ++i) {
    AtomTreeNode root{i, algebra->top(), {}};
    grow(algebra, root, std::uint32_t{1} << i, n - 2);
    tree.roots.push_back(std::move(root));
  }
  return tree;
}

std::uint64_t tree_leaf_count(const AtomTree& tree) {
  std::uint64_t leaves = 0;
  auto count = [&](const AtomTreeNode& node, auto&& self) -> void {
    if (node.children.empty()) {
      ++leaves;
      return;
    }
    for (const auto& c : node.children) self(c, self);
  };
  for (const auto& r : tree.roots) count(r, count);
  return leaves;
}

std::vector<Perm> tree_paths(const AtomTree& tree) {
  std::vector<Perm> out;
  Perm path;
  const int n = tree.algebra->atom_count();
  for (const auto& r : tree.roots) collect_paths(r, path, 0, n, out);
  return out;
}

std::string render_tree(const AtomTree& tree) {
  std::string out = "(T | T)\n";
  for (const auto& r : tree.roots) render_node(r, tree.algebra, 1, out);
  return out;
}

Block block(const CondAlgebraPtr& algebra,
            std::span<const std::uint8_t> prefix) {
  const int n = algebra->n();
  auto [lo, hi] = prefix_rank_range(n, prefix);
  DynBitset bits(algebra->atom_count());
  for (std::uint64_t r = lo; r < hi; ++r) bits.set(r);
  return Block{std::vector<std::uint8_t>(prefix.begin(), prefix.end()),
               algebra->element(std::move(bits))};
}

std::vector<CElement> s_blocks(const CondAlgebraPtr& algebra, int target_atom,
                               const Event& b) {
  const auto& base = algebra->base();
  if (b.algebra() != base)
    throw Error("event does not belong to this conditional algebra's base");
  if (b.is_bot()) throw Error("conditional with bottom antecedent");
  if (target_atom < 0 || target_atom >= algebra->n())
    throw Error("atom index out of range");
  if (!base->atom(target_atom).leq(b))
    throw Error("target atom must lie below the antecedent");
  CElement below = atoms_below_basic(algebra, base->atom(target_atom), b);
  std::vector<CElement> out;
  out.reserve(static_cast<std::size_t>(algebra->n()));
  for (int j = 0; j < algebra->n(); ++j) {
    std::uint8_t first[] = {static_cast<std::uint8_t>(j)};
    out.push_back(below.meet(block(algebra, first).members));
  }
  return out;
}

}  // namespace condal
