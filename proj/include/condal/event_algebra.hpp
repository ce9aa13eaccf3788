#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "condal/formula.hpp"

namespace condal {

class EventAlgebra;
using AlgebraPtr = std::shared_ptr<const EventAlgebra>;

// An event of a finite atomic Boolean algebra: bit i set iff atom i lies
// below the event. Events remember their algebra; operations on events
// from different algebras are rejected rather than coerced.
class Event {
 public:
  Event() = default;
  Event(AlgebraPtr algebra, std::uint32_t bits);

  const AlgebraPtr& algebra() const { return algebra_; }
  std::uint32_t bits() const { return bits_; }

  Event meet(const Event& o) const;
  Event join(const Event& o) const;
  Event complement() const;
  Event minus(const Event& o) const { return meet(o.complement()); }
  // Material implication this -> o.
  Event implies(const Event& o) const { return complement().join(o); }
  bool leq(const Event& o) const;

  bool is_bot() const { return bits_ == 0; }
  bool is_top() const;
  bool is_atom() const;
  int atom_count() const;
  bool contains_atom(int i) const { return (bits_ >> i) & 1u; }
  std::vector<int> atoms_below() const;

  bool operator==(const Event& o) const;
  bool operator!=(const Event& o) const { return !(*this == o); }

  // Sorted atom-label list, e.g. "{w1,w3}"; "{}" for bot.
  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  std::uint32_t bits_ = 0;
};

// A finite atomic Boolean algebra given by its n named atoms. Immutable
// after construction; identity (for cross-algebra checks) is object
// identity. The default cap on n is 8 (n! = 40320 conditional atoms) and
// can be raised at runtime via set_atom_cap or CONDAL_MAX_ATOMS.
class EventAlgebra : public std::enable_shared_from_this<EventAlgebra> {
 public:
  // Plain algebra with n atoms. Empty `labels` means w1..wn.
  static AlgebraPtr make(int n, std::vector<std::string> labels = {});

  // Lindenbaum algebra of m propositional variables: 2^m atoms, one per
  // valuation. Atoms are ordered with the all-true valuation first and
  // variable 0 most significant, matching the usual minterm numbering
  // (for {p,q}: p/\q, p/\~q, ~p/\q, ~p/\~q).
  static AlgebraPtr lindenbaum(int m, std::vector<std::string> names = {});

  int atom_count() const { return n_; }
  const std::vector<std::string>& atom_labels() const { return labels_; }
  const std::string& atom_label(int i) const { return labels_[i]; }
  int atom_index(std::string_view label) const;  // -1 when unknown

  bool is_lindenbaum() const { return !vars_.empty(); }
  int variable_count() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& variables() const { return vars_; }
  int variable_index(std::string_view name) const;  // -1 when unknown
  // Truth of variable v under the valuation that atom i stands for.
  bool valuation(int atom, int var) const;

  // Bit mask with one bit per atom; the bits of the top event.
  std::uint32_t top_mask() const {
    return n_ >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n_) - 1;
  }

  Event bot() const;
  Event top() const;
  Event atom(int i) const;
  Event from_bits(std::uint32_t bits) const;
  Event from_atoms(const std::vector<int>& atoms) const;
  Event from_labels(const std::vector<std::string>& labels) const;

  static int atom_cap();
  static void set_atom_cap(int cap);

 private:
  EventAlgebra(int n, std::vector<std::string> labels,
               std::vector<std::string> vars);

  int n_;
  std::vector<std::string> labels_;
  std::vector<std::string> vars_;  // empty for plain algebras
};

// Event of the formula: bit i set iff the valuation behind atom i
// satisfies the formula. In a plain algebra an identifier names an atom
// and holds exactly at that atom; in a Lindenbaum algebra identifiers
// are the propositional variables.
Event truth_set(const PropFormula& formula, const AlgebraPtr& algebra);

}  // namespace condal
