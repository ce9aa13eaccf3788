#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condal/conditional_algebra.hpp"
#include "condal/exec.hpp"
#include "condal/rational.hpp"

namespace condal {

// Strictly positive exact-rational probability on an event algebra.
// Positivity is a constructor invariant: the canonical extension is only
// defined for positive P.
class EventMeasure {
 public:
  static EventMeasure make(AlgebraPtr algebra, std::vector<Rational> weights);
  static EventMeasure uniform(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Rational& atom_weight(int i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational of(const Event& e) const;

 private:
  EventMeasure(AlgebraPtr algebra, std::vector<Rational> weights);

  AlgebraPtr algebra_;
  std::vector<Rational> weights_;
};

// P(a /\ b) / P(b), exact. b must not be bottom.
Rational cond_prob(const EventMeasure& p, const Event& a, const Event& b);

// Probability on C(A) as a weight per conditional atom (nonnegative,
// sum exactly 1). Measures of elements are always derived from the atom
// weights, never cached.
class CMeasure {
 public:
  static CMeasure make(CondAlgebraPtr algebra, std::vector<Rational> weights);

  const CondAlgebraPtr& algebra() const { return algebra_; }
  const Rational& atom_weight(std::uint64_t rank) const {
    return weights_[rank];
  }
  const std::vector<Rational>& weights() const { return weights_; }
  bool is_positive() const;

  Rational of(const CElement& t) const;
  // Measure of the basic conditional (a|b).
  Rational of_basic(const Event& a, const Event& b) const;

 private:
  CMeasure(CondAlgebraPtr algebra, std::vector<Rational> weights);

  CondAlgebraPtr algebra_;
  std::vector<Rational> weights_;
};

// The canonical extension mu_P: the atom of permutation <a1,...,an> gets
// the telescoping product P(a1) * P(a2|~a1) * ... ; by the agreement
// theorem mu_P(a|b) = P(a/\b)/P(b) for every basic conditional.
CMeasure canonical_extension(const EventMeasure& p,
                             CondAlgebraPtr calg = nullptr);

// A failed chain-rule instance: mu(a|c) != mu(a|b) * mu(b|c) for
// a <= b <= c.
struct ChainRuleWitness {
  Event a, b, c;
  Rational lhs, rhs;
};

// Scans all chained triples a <= b <= c (b, c nonbottom) in ascending
// bit-pattern order and returns the first violation; nullopt means the
// measure is separable. The parallel path reports the identical witness.
std::optional<ChainRuleWitness> separability_witness(const CMeasure& mu,
                                                     Exec exec = Exec::serial);

inline bool is_separable(const CMeasure& mu, Exec exec = Exec::serial) {
  return !separability_witness(mu, exec).has_value();
}

// Total two-place map A x A' -> rationals, checked against CP1-CP4.
class TwoPlaceAssignment {
 public:
  static TwoPlaceAssignment from_event_measure(const EventMeasure& p);
  static TwoPlaceAssignment from_cmeasure_basics(const CMeasure& mu);
  static TwoPlaceAssignment constant(AlgebraPtr algebra, Rational value);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Rational& at(const Event& a, const Event& b) const;
  void set(const Event& a, const Event& b, Rational value);

 private:
  explicit TwoPlaceAssignment(AlgebraPtr algebra);

  AlgebraPtr algebra_;
  std::vector<Rational> table_;  // indexed (b.bits << n) | a.bits
};

struct CpAxiomReport {
  struct Axiom {
    bool pass = true;
    std::string witness;  // first violating instance, rendered
  };
  Axiom cp1, cp2, cp3, cp4;
  bool all_pass() const {
    return cp1.pass && cp2.pass && cp3.pass && cp4.pass;
  }
};

CpAxiomReport check_cp_axioms(const TwoPlaceAssignment& cp);

// Moves eps of mass from atom1 to atom2. Both atoms must start with the
// same base atom (lie below the same (alpha|T)) and eps must satisfy
// 0 < eps < min(mu(atom1), 1 - mu(atom2)) / 2. The result agrees with mu
// on every basic conditional but is no canonical extension.
CMeasure perturb(const CMeasure& mu, std::uint64_t atom1, std::uint64_t atom2,
                 const Rational& eps);

// A positive measure that agrees with canonical_extension(p) on every
// basic conditional (hence is separable) yet differs from it on some
// atom. Such measures exist iff the basic-conditional indicator vectors
// do not span the whole atom space, which holds for n >= 4; for n <= 3
// every positive separable measure is canonical and this throws.
// Found by moving mass along an exact null-space direction of the
// basic-indicator matrix. Supported up to n = 5 (the elimination is
// dense).
CMeasure separable_noncanonical_measure(const EventMeasure& p,
                                        CondAlgebraPtr calg = nullptr);

// Closed-form measure of the block [[prefix]] under the canonical
// extension of p: P(a_{i1}) * P(a_{i2})/P(~a_{i1}) * ...
Rational block_measure(const EventMeasure& p,
                       std::span<const std::uint8_t> prefix);

// The measure's restriction to A|T read back as an event measure:
// P(alpha_i) = mu(alpha_i | T). Throws if that restriction is not
// strictly positive.
EventMeasure restrict_to_events(const CMeasure& mu);

// Two separable measures whose midpoint fails the chain rule, witnessing
// that separable probabilities are not convex (needs n >= 3).
struct NonconvexWitness {
  CMeasure first, second, midpoint;
  ChainRuleWitness violation;
};

NonconvexWitness find_nonconvex_witness(const CondAlgebraPtr& algebra);

}  // namespace condal
