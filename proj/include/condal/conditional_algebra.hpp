#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "condal/bitset.hpp"
#include "condal/event_algebra.hpp"
#include "condal/exec.hpp"
#include "condal/perm.hpp"

namespace condal {

class ConditionalAlgebra;
using CondAlgebraPtr = std::shared_ptr<const ConditionalAlgebra>;

// The Boolean algebra of conditionals C(A) of a finite event algebra A,
// represented semantically: its n! atoms are the permutations of at(A),
// numbered by lexicographic Lehmer rank, and an element is the set of
// atom ranks below it. The free-algebra quotient itself is never built;
// the atoms theorem makes this representation isomorphic to it.
class ConditionalAlgebra
    : public std::enable_shared_from_this<ConditionalAlgebra> {
 public:
  static CondAlgebraPtr make(AlgebraPtr base);

  const AlgebraPtr& base() const { return base_; }
  int n() const { return base_->atom_count(); }
  std::uint64_t atom_count() const { return atom_count_; }  // n!

  Perm atom_perm(std::uint64_t rank) const;
  std::uint64_t atom_rank(std::span<const std::uint8_t> perm) const;

  class CElement element(DynBitset bits) const;
  class CElement bot() const;
  class CElement top() const;
  class CElement atom_element(std::uint64_t rank) const;
  class CElement from_ranks(const std::vector<std::uint64_t>& ranks) const;

 private:
  explicit ConditionalAlgebra(AlgebraPtr base);

  AlgebraPtr base_;
  std::uint64_t atom_count_;
};

// An element of C(A): bit r set iff the atom of rank r lies below it.
// Boolean structure is plain set algebra on the bits.
class CElement {
 public:
  CElement() = default;
  CElement(CondAlgebraPtr algebra, DynBitset bits);

  const CondAlgebraPtr& algebra() const { return algebra_; }
  const DynBitset& bits() const { return bits_; }

  CElement meet(const CElement& o) const;
  CElement join(const CElement& o) const;
  CElement complement() const;
  bool leq(const CElement& o) const;

  bool is_bot() const { return bits_.none(); }
  bool is_top() const { return bits_.count() == bits_.size(); }
  std::uint64_t count() const { return bits_.count(); }
  bool contains(std::uint64_t rank) const { return bits_.test(rank); }
  std::vector<std::uint64_t> ranks() const { return bits_.set_indices(); }

  bool operator==(const CElement& o) const;
  bool operator!=(const CElement& o) const { return !(*this == o); }

 private:
  CondAlgebraPtr algebra_;
  DynBitset bits_;
};

// Term over basic conditionals with event leaves; evaluation is set
// algebra on atom sets, leaves via atoms_below_basic.
struct CondTerm;
using TermPtr = std::shared_ptr<const CondTerm>;
struct CondTerm {
  enum class Kind { Basic, Not, And, Or };
  Kind kind;
  Event a, b;  // Basic only; b != bot enforced at evaluation
  TermPtr lhs, rhs;

  static TermPtr mk_basic(Event a, Event b);
  static TermPtr mk_not(TermPtr t);
  static TermPtr mk_and(TermPtr l, TermPtr r);
  static TermPtr mk_or(TermPtr l, TermPtr r);
};

// The element (a|b) of C(A): the set of permutation atoms whose first
// entry below b lies below a /\ b. The consequent is silently normalised
// to a /\ b. Throws on b = bot or on events foreign to the algebra.
CElement atoms_below_basic(const CondAlgebraPtr& alg, const Event& a,
                           const Event& b, Exec exec = Exec::serial);

CElement eval_term(const CondAlgebraPtr& alg, const CondTerm& term,
                   Exec exec = Exec::serial);

// Decides (a|b) = (c|d) by the syntactic criterion: both top, both
// bottom, or a/\b = c/\d and b = d.
bool equal_basic(const Event& a, const Event& b, const Event& c,
                 const Event& d);

// Decides (a|b) <= (c|d) under the side condition c/\d <= b; returns
// nullopt when the guard fails (callers then fall back to the semantic
// subset test).
std::optional<bool> leq_basic_guarded(const Event& a, const Event& b,
                                      const Event& c, const Event& d);

// Subset test on atom sets; total, used as the guard-free fallback.
bool leq_semantic(const CondAlgebraPtr& alg, const Event& a, const Event& b,
                  const Event& c, const Event& d);

// If t equals some basic conditional, returns the canonical pair (a, b)
// with a <= b (top is (T,T), bottom (F,T)); otherwise nullopt.
std::optional<std::pair<Event, Event>> recognize_basic(const CElement& t);

// Number of distinct basic conditionals: 2 + sum_{r=2}^{n} C(n,r)(2^r-2).
std::uint64_t count_basic(int n);

// |at<=(a|b)| by the counting formula n! * |at<=(a/\b)| / |at<=(b)|.
std::uint64_t count_atoms_below(const Event& a, const Event& b);

// Rank range [lo, hi) of the permutations extending `prefix`; they are
// contiguous in lexicographic order and hi - lo = (n - |prefix|)!.
std::pair<std::uint64_t, std::uint64_t> prefix_rank_range(
    int n, std::span<const std::uint8_t> prefix);

// The partition Part_i: one block per length-i sequence of distinct
// atoms, in lexicographic sequence order. i = 0 gives the trivial
// partition {top}; i = n-1 the atoms.
std::vector<CElement> part_i(const CondAlgebraPtr& alg, int i);

}  // namespace condal
