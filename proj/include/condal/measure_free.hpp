#pragma once

#include <vector>

#include "condal/event_algebra.hpp"

namespace condal {

// The three-valued view of a conditional: the interval of events
// [a /\ b, b -> a]. The pair determines (a /\ b, b) uniquely, the
// antecedent being lower \/ ~upper (top for the singleton [a, a], which
// is the plain event a).
class IntervalConditional {
 public:
  static IntervalConditional from_pair(const Event& a, const Event& b);

  const Event& lower() const { return lower_; }
  const Event& upper() const { return upper_; }
  Event consequent() const { return lower_; }  // canonical a <= b form
  Event antecedent() const { return lower_.join(upper_.complement()); }

  bool operator==(const IntervalConditional& o) const {
    return lower_ == o.lower_ && upper_ == o.upper_;
  }
  bool operator!=(const IntervalConditional& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  IntervalConditional(Event lower, Event upper);

  Event lower_, upper_;
};

inline IntervalConditional to_interval(const Event& a, const Event& b) {
  return IntervalConditional::from_pair(a, b);
}

IntervalConditional interval_not(const IntervalConditional& x);

// Quasi-conjunction ((b->a) /\ (d->c) | b \/ d); total, and the glue of
// the subset-entailment below.
IntervalConditional quasi_conj(const IntervalConditional& x,
                               const IntervalConditional& y);
IntervalConditional quasi_disj(const IntervalConditional& x,
                               const IntervalConditional& y);

// The interval-based conjunction (a /\ c | (~a/\b) \/ (~c/\d) \/ (b/\d));
// its interval is the pointwise meet of the operands' intervals. Partial:
// throws when the computed antecedent is bottom (e.g. (T|b) with (T|~b)).
IntervalConditional gn_conj(const IntervalConditional& x,
                            const IntervalConditional& y);
IntervalConditional gn_disj(const IntervalConditional& x,
                            const IntervalConditional& y);

// Componentwise order: lower <= lower and upper <= upper. Equivalent to
// quasi_conj(x, y) == x.
bool interval_leq(const IntervalConditional& x, const IntervalConditional& y);

// Entailment in the style of the measure-free setting: the target is a
// member of the base, or some nonempty subset of the base has its
// quasi-conjunction below the target. Exhaustive over subsets; the base
// is capped at 12 conditionals.
bool dp_entails(const std::vector<IntervalConditional>& base,
                const IntervalConditional& target);

}  // namespace condal
