#include "condal/conditional_algebra.hpp"

#include <algorithm>

#include "condal/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace condal {

namespace {

// Chunk size for the parallel rank-space scans; a multiple of 64 so each
// chunk owns whole words of the result bitset.
constexpr std::uint64_t kChunk = 4096;

void check_base_event(const CondAlgebraPtr& alg, const Event& e) {
  if (e.algebra() != alg->base())
    throw Error("event does not belong to this conditional algebra's base");
}

// Conditional algebras are canonical for their base: two instances over
// the same base object are interchangeable.
void check_same_calgebra(const CElement& a, const CElement& b) {
  if (a.algebra()->base() != b.algebra()->base())
    throw Error("operands belong to different conditional algebras");
}

}  // namespace

ConditionalAlgebra::ConditionalAlgebra(AlgebraPtr base)
    : base_(std::move(base)), atom_count_(factorial(base_->atom_count())) {}

CondAlgebraPtr ConditionalAlgebra::make(AlgebraPtr base) {
  if (!base) throw Error("null base algebra");
  return CondAlgebraPtr(new ConditionalAlgebra(std::move(base)));
}

Perm ConditionalAlgebra::atom_perm(std::uint64_t rank) const {
  return perm_unrank(n(), rank);
}

std::uint64_t ConditionalAlgebra::atom_rank(
    std::span<const std::uint8_t> perm) const {
  if (static_cast<int>(perm.size()) != n())
    throw Error("permutation length does not match the algebra");
  return perm_rank(perm);
}

CElement ConditionalAlgebra::element(DynBitset bits) const {
  return CElement(shared_from_this(), std::move(bits));
}

CElement ConditionalAlgebra::bot() const {
  return element(DynBitset(atom_count_));
}

CElement ConditionalAlgebra::top() const {
  DynBitset b(atom_count_);
  b.set_all();
  return element(std::move(b));
}

CElement ConditionalAlgebra::atom_element(std::uint64_t rank) const {
  if (rank >= atom_count_) throw Error("atom rank out of range");
  DynBitset b(atom_count_);
  b.set(rank);
  return element(std::move(b));
}

CElement ConditionalAlgebra::from_ranks(
    const std::vector<std::uint64_t>& ranks) const {
  DynBitset b(atom_count_);
  for (auto r : ranks) {
    if (r >= atom_count_) throw Error("atom rank out of range");
    b.set(r);
  }
  return element(std::move(b));
}

CElement::CElement(CondAlgebraPtr algebra, DynBitset bits)
    : algebra_(std::move(algebra)), bits_(std::move(bits)) {
  if (bits_.size() != algebra_->atom_count())
    throw Error("bit vector length does not match the conditional algebra");
}

CElement CElement::meet(const CElement& o) const {
  check_same_calgebra(*this, o);
  return CElement(algebra_, bits_ & o.bits_);
}

CElement CElement::join(const CElement& o) const {
  check_same_calgebra(*this, o);
  return CElement(algebra_, bits_ | o.bits_);
}

CElement CElement::complement() const { return CElement(algebra_, ~bits_); }

bool CElement::leq(const CElement& o) const {
  check_same_calgebra(*this, o);
  return bits_.is_subset_of(o.bits_);
}

bool CElement::operator==(const CElement& o) const {
  check_same_calgebra(*this, o);
  return bits_ == o.bits_;
}

TermPtr CondTerm::mk_basic(Event a, Event b) {
  auto t = std::make_shared<CondTerm>();
  t->kind = Kind::Basic;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
TermPtr CondTerm::mk_not(TermPtr x) {
  auto t = std::make_shared<CondTerm>();
  t->kind = Kind::Not;
  t->lhs = std::move(x);
  return t;
}
TermPtr CondTerm::mk_and(TermPtr l, TermPtr r) {
  auto t = std::make_shared<CondTerm>();
  t->kind = Kind::And;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}
TermPtr CondTerm::mk_or(TermPtr l, TermPtr r) {
  auto t = std::make_shared<CondTerm>();
  t->kind = Kind::Or;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}

namespace {

// Fills bits[lo, hi) of the (a|b) atom set, walking the permutations of
// that rank range in lexicographic order.
void fill_below_basic(DynBitset& bits, int n, std::uint32_t bmask,
                      std::uint32_t abmask, std::uint64_t lo,
                      std::uint64_t hi) {
  Perm perm = perm_unrank(n, lo);
  for (std::uint64_t r = lo; r < hi; ++r) {
    for (int i = 0; i < n; ++i) {
      std::uint32_t bit = std::uint32_t{1} << perm[i];
      if (bmask & bit) {
        if (abmask & bit) bits.set(r);
        break;
      }
    }
    if (r + 1 < hi) std::next_permutation(perm.begin(), perm.end());
  }
}

}  // namespace

CElement atoms_below_basic(const CondAlgebraPtr& alg, const Event& a,
                           const Event& b, Exec exec) {
  check_base_event(alg, a);
  check_base_event(alg, b);
  if (b.is_bot()) throw Error("conditional with bottom antecedent");
  const int n = alg->n();
  const std::uint32_t bmask = b.bits();
  const std::uint32_t abmask = a.meet(b).bits();
  const std::uint64_t total = alg->atom_count();
  DynBitset bits(total);
  if (exec == Exec::parallel && total > kChunk) {
    const std::int64_t chunks =
        static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < chunks; ++c) {
      std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
      std::uint64_t hi = std::min(lo + kChunk, total);
      fill_below_basic(bits, n, bmask, abmask, lo, hi);
    }
  } else {
    fill_below_basic(bits, n, bmask, abmask, 0, total);
  }
  return alg->element(std::move(bits));
}

CElement eval_term(const CondAlgebraPtr& alg, const CondTerm& term,
                   Exec exec) {
  switch (term.kind) {
    case CondTerm::Kind::Basic:
      return atoms_below_basic(alg, term.a, term.b, exec);
    case CondTerm::Kind::Not:
      return eval_term(alg, *term.lhs, exec).complement();
    case CondTerm::Kind::And:
      return eval_term(alg, *term.lhs, exec).meet(eval_term(alg, *term.rhs, exec));
    case CondTerm::Kind::Or:
      return eval_term(alg, *term.lhs, exec).join(eval_term(alg, *term.rhs, exec));
  }
  throw Error("malformed conditional term");
}

bool equal_basic(const Event& a, const Event& b, const Event& c,
                 const Event& d) {
  if (b.is_bot() || d.is_bot())
    throw Error("conditional with bottom antecedent");
  const bool top1 = b.leq(a), top2 = d.leq(c);
  if (top1 || top2) return top1 && top2;
  const bool bot1 = a.meet(b).is_bot(), bot2 = c.meet(d).is_bot();
  if (bot1 || bot2) return bot1 && bot2;
  return a.meet(b) == c.meet(d) && b == d;
}

std::optional<bool> leq_basic_guarded(const Event& a, const Event& b,
                                      const Event& c, const Event& d) {
  if (b.is_bot() || d.is_bot())
    throw Error("conditional with bottom antecedent");
  if (!c.meet(d).leq(b)) return std::nullopt;  // guard c/\d <= b fails
  if (d.leq(c)) return true;                   // (c|d) = top
  if (a.meet(b).is_bot()) return true;         // (a|b) = bottom
  return a.meet(b).leq(c.meet(d)) && d.leq(b);
}

bool leq_semantic(const CondAlgebraPtr& alg, const Event& a, const Event& b,
                  const Event& c, const Event& d) {
  return atoms_below_basic(alg, a, b).leq(atoms_below_basic(alg, c, d));
}

std::optional<std::pair<Event, Event>> recognize_basic(const CElement& t) {
  const auto& alg = t.algebra();
  const auto& base = alg->base();
  const int n = alg->n();
  const std::uint64_t group = factorial(n - 1);
  std::uint32_t full = 0;   // atoms whose entire first-atom group is in t
  std::uint32_t empty = 0;  // atoms whose group misses t entirely
  for (int v = 0; v < n; ++v) {
    const std::uint64_t lo = static_cast<std::uint64_t>(v) * group;
    bool all = true, none = true;
    for (std::uint64_t r = lo; r < lo + group; ++r) {
      if (t.contains(r)) none = false;
      else all = false;
    }
    if (all) full |= std::uint32_t{1} << v;
    if (none) empty |= std::uint32_t{1} << v;
  }
  Event a = base->from_bits(full);
  Event b = base->from_bits(full | empty);
  if (b.is_bot()) return std::nullopt;
  if (atoms_below_basic(alg, a, b) != t) return std::nullopt;
  return std::make_pair(a, b);
}

std::uint64_t count_basic(int n) {
  if (n < 1) throw Error("atom count must be at least 1");
  std::uint64_t total = 2;
  for (int r = 2; r <= n; ++r) {
    std::uint64_t binom = 1;
    for (int i = 0; i < r; ++i) binom = binom * (n - i) / (i + 1);
    total += binom * ((std::uint64_t{1} << r) - 2);
  }
  return total;
}

std::uint64_t count_atoms_below(const Event& a, const Event& b) {
  if (b.is_bot()) throw Error("conditional with bottom antecedent");
  const Event ab = a.meet(b);
  const int n = b.algebra()->atom_count();
  const std::uint64_t k = static_cast<std::uint64_t>(ab.atom_count());
  const std::uint64_t m = static_cast<std::uint64_t>(b.atom_count());
  return factorial(n) / m * k;
}

std::pair<std::uint64_t, std::uint64_t> prefix_rank_range(
    int n, std::span<const std::uint8_t> prefix) {
  if (static_cast<int>(prefix.size()) > n)
    throw Error("prefix longer than the permutation length");
  std::uint32_t used = 0;
  std::uint64_t lo = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const std::uint8_t v = prefix[i];
    if (v >= n) throw Error("prefix entry out of range");
    if (used & (std::uint32_t{1} << v)) throw Error("repeated prefix entry");
    // Number of still-unused values smaller than v.
    int smaller = 0;
    for (int u = 0; u < v; ++u)
      if (!(used & (std::uint32_t{1} << u))) ++smaller;
    lo += static_cast<std::uint64_t>(smaller) *
          factorial(n - 1 - static_cast<int>(i));
    used |= std::uint32_t{1} << v;
  }
  return {lo, lo + factorial(n - static_cast<int>(prefix.size()))};
}

std::vector<CElement> part_i(const CondAlgebraPtr& alg, int i) {
  const int n = alg->n();
  if (i < 0 || i > n - 1) throw Error("partition level out of range");
  std::vector<CElement> blocks;
  // Enumerate length-i sequences of distinct atoms in lexicographic order.
  std::vector<std::uint8_t> seq;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(seq.size()) == i) {
      auto [lo, hi] = prefix_rank_range(n, seq);
      DynBitset bits(alg->atom_count());
      for (std::uint64_t r = lo; r < hi; ++r) bits.set(r);
      blocks.push_back(alg->element(std::move(bits)));
      return;
    }
    for (std::uint8_t v = 0; v < n; ++v) {
      if (std::find(seq.begin(), seq.end(), v) != seq.end()) continue;
      seq.push_back(v);
      self(self);
      seq.pop_back();
    }
  };
  rec(rec);
  return blocks;
}

}  // namespace condal
