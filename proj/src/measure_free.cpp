#include "condal/measure_free.hpp"

#include "condal/errors.hpp"

namespace condal {

IntervalConditional::IntervalConditional(Event lower, Event upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {}

IntervalConditional IntervalConditional::from_pair(const Event& a,
                                                   const Event& b) {
  if (a.algebra() != b.algebra())
    throw Error("operands belong to different event algebras");
  if (b.is_bot()) throw Error("conditional with bottom antecedent");
  return IntervalConditional(a.meet(b), b.implies(a));
}

std::string IntervalConditional::to_string() const {
  return "(" + consequent().to_string() + " | " + antecedent().to_string() +
         ")";
}

IntervalConditional interval_not(const IntervalConditional& x) {
  return IntervalConditional::from_pair(x.consequent().complement(),
                                        x.antecedent());
}

IntervalConditional quasi_conj(const IntervalConditional& x,
                               const IntervalConditional& y) {
  return IntervalConditional::from_pair(x.upper().meet(y.upper()),
                                        x.antecedent().join(y.antecedent()));
}

IntervalConditional quasi_disj(const IntervalConditional& x,
                               const IntervalConditional& y) {
  return interval_not(quasi_conj(interval_not(x), interval_not(y)));
}

IntervalConditional gn_conj(const IntervalConditional& x,
                            const IntervalConditional& y) {
  const Event a = x.consequent(), b = x.antecedent();
  const Event c = y.consequent(), d = y.antecedent();
  Event ante = a.complement().meet(b).join(c.complement().meet(d)).join(
      b.meet(d));
  return IntervalConditional::from_pair(a.meet(c), ante);
}

IntervalConditional gn_disj(const IntervalConditional& x,
                            const IntervalConditional& y) {
  return interval_not(gn_conj(interval_not(x), interval_not(y)));
}

bool interval_leq(const IntervalConditional& x,
                  const IntervalConditional& y) {
  return x.lower().leq(y.lower()) && x.upper().leq(y.upper());
}

bool dp_entails(const std::vector<IntervalConditional>& base,
                const IntervalConditional& target) {
  if (base.size() > 12)
    throw CapExceeded("subset entailment is capped at 12 conditionals, got " +
                      std::to_string(base.size()));
  for (const auto& k : base)
    if (k == target) return true;
  const std::size_t subsets = std::size_t{1} << base.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    IntervalConditional folded = target;  // overwritten below
    bool first = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      folded = first ? base[i] : quasi_conj(folded, base[i]);
      first = false;
    }
    if (interval_leq(folded, target)) return true;
  }
  return false;
}

}  // namespace condal
