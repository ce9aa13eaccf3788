#include "condal/probability.hpp"

#include <algorithm>

#include "condal/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace condal {

namespace {

void check_event(const AlgebraPtr& alg, const Event& e) {
  if (e.algebra() != alg)
    throw Error("event does not belong to the measure's algebra");
}

}  // namespace

EventMeasure::EventMeasure(AlgebraPtr algebra, std::vector<Rational> weights)
    : algebra_(std::move(algebra)), weights_(std::move(weights)) {}

EventMeasure EventMeasure::make(AlgebraPtr algebra,
                                std::vector<Rational> weights) {
  if (!algebra) throw Error("null algebra");
  if (static_cast<int>(weights.size()) != algebra->atom_count())
    throw Error("expected one weight per atom");
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w <= 0)
      throw Error("event measures must be strictly positive everywhere");
    sum += w;
  }
  if (sum != 1) throw Error("weights must sum to exactly 1, got " +
                            rational_string(sum));
  return EventMeasure(std::move(algebra), std::move(weights));
}

EventMeasure EventMeasure::uniform(AlgebraPtr algebra) {
  int n = algebra->atom_count();
  return make(std::move(algebra),
              std::vector<Rational>(n, Rational(1, n)));
}

Rational EventMeasure::of(const Event& e) const {
  check_event(algebra_, e);
  Rational sum = 0;
  for (int i = 0; i < algebra_->atom_count(); ++i)
    if (e.contains_atom(i)) sum += weights_[i];
  return sum;
}

Rational cond_prob(const EventMeasure& p, const Event& a, const Event& b) {
  if (b.is_bot()) throw Error("conditioning on bottom");
  return p.of(a.meet(b)) / p.of(b);
}

CMeasure::CMeasure(CondAlgebraPtr algebra, std::vector<Rational> weights)
    : algebra_(std::move(algebra)), weights_(std::move(weights)) {}

CMeasure CMeasure::make(CondAlgebraPtr algebra,
                        std::vector<Rational> weights) {
  if (!algebra) throw Error("null algebra");
  if (weights.size() != algebra->atom_count())
    throw Error("expected one weight per conditional atom");
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw Error("measure weights must be nonnegative");
    sum += w;
  }
  if (sum != 1) throw Error("weights must sum to exactly 1, got " +
                            rational_string(sum));
  return CMeasure(std::move(algebra), std::move(weights));
}

bool CMeasure::is_positive() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const Rational& w) { return w > 0; });
}

Rational CMeasure::of(const CElement& t) const {
  if (t.algebra()->base() != algebra_->base())
    throw Error("element does not belong to the measure's algebra");
  Rational sum = 0;
  t.bits().for_each_set([&](std::uint64_t r) { sum += weights_[r]; });
  return sum;
}

Rational CMeasure::of_basic(const Event& a, const Event& b) const {
  return of(atoms_below_basic(algebra_, a, b));
}

CMeasure canonical_extension(const EventMeasure& p, CondAlgebraPtr calg) {
  if (!calg)
    calg = ConditionalAlgebra::make(p.algebra());
  else if (calg->base() != p.algebra())
    throw Error("conditional algebra does not match the measure's base");
  const int n = calg->n();
  const std::uint64_t total = calg->atom_count();
  std::vector<Rational> weights(total);
  Perm perm = perm_unrank(n, 0);
  for (std::uint64_t r = 0; r < total; ++r) {
    // telescoping product of conditional probabilities along the chain
    Rational w = 1;
    Rational remaining = 1;
    for (int k = 0; k + 1 < n; ++k) {
      const Rational& pk = p.atom_weight(perm[k]);
      w *= pk / remaining;
      remaining -= pk;
    }
    weights[r] = std::move(w);
    if (r + 1 < total) std::next_permutation(perm.begin(), perm.end());
  }
  return CMeasure::make(std::move(calg), std::move(weights));
}

namespace {

// Measures of all basic conditionals (x|y) with x <= y, indexed
// (y << n) | x. Only subset slots are filled.
std::vector<Rational> pair_table(const CMeasure& mu,
                                 [[maybe_unused]] Exec exec) {
  const auto& calg = mu.algebra();
  const int n = calg->n();
  const std::uint32_t top = calg->base()->top_mask();
  std::vector<Rational> table(std::size_t{1} << (2 * n));
  const std::int64_t ys = static_cast<std::int64_t>(top);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
#endif
  for (std::int64_t yi = 1; yi <= ys; ++yi) {
    const std::uint32_t y = static_cast<std::uint32_t>(yi);
    const Event b = calg->base()->from_bits(y);
    // mu(x|y) for atoms x first, then by additivity over x's atoms
    std::vector<Rational> atom_vals(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      if ((y >> v) & 1u)
        atom_vals[v] = mu.of_basic(calg->base()->atom(v), b);
    std::uint32_t x = 0;
    do {
      Rational sum = 0;
      for (int v = 0; v < n; ++v)
        if ((x >> v) & 1u) sum += atom_vals[v];
      table[(static_cast<std::size_t>(y) << n) | x] = std::move(sum);
      x = (x - y) & y;  // next subset of y
    } while (x != 0);
  }
  return table;
}

}  // namespace

std::optional<ChainRuleWitness> separability_witness(const CMeasure& mu,
                                                     Exec exec) {
  const auto& calg = mu.algebra();
  const int n = calg->n();
  const std::uint32_t top = calg->base()->top_mask();
  const std::vector<Rational> table = pair_table(mu, exec);
  auto val = [&](std::uint32_t x, std::uint32_t y) -> const Rational& {
    return table[(static_cast<std::size_t>(y) << n) | x];
  };

  // Triples in ascending (a, b, c) bit-pattern order; first failure wins.
  std::uint64_t best = ~std::uint64_t{0};
  const std::int64_t as = static_cast<std::int64_t>(top);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(min : best) \
    if (exec == Exec::parallel)
#endif
  for (std::int64_t ai = 0; ai <= as; ++ai) {
    const std::uint32_t a = static_cast<std::uint32_t>(ai);
    std::uint64_t local = ~std::uint64_t{0};
    const std::uint32_t bspace = top & ~a;
    std::uint32_t bs = 0;
    for (;;) {
      const std::uint32_t b = a | bs;
      if (b != 0) {
        const std::uint32_t cspace = top & ~b;
        std::uint32_t cs = 0;
        for (;;) {
          const std::uint32_t c = b | cs;
          if (c != 0 && val(a, c) != val(a, b) * val(b, c)) {
            local = (static_cast<std::uint64_t>(b) << 32) | c;
            break;
          }
          if (cs == cspace) break;
          cs = (cs - cspace) & cspace;
        }
      }
      if (local != ~std::uint64_t{0} || bs == bspace) break;
      bs = (bs - bspace) & bspace;
    }
    if (local != ~std::uint64_t{0}) {
      const std::uint64_t key = (static_cast<std::uint64_t>(a) << 44) |
                                ((local >> 32) << 22) | (local & 0x3fffff);
      if (key < best) best = key;
    }
  }
  if (best == ~std::uint64_t{0}) return std::nullopt;
  const std::uint32_t a = static_cast<std::uint32_t>(best >> 44);
  const std::uint32_t b = static_cast<std::uint32_t>((best >> 22) & 0x3fffff);
  const std::uint32_t c = static_cast<std::uint32_t>(best & 0x3fffff);
  ChainRuleWitness w{calg->base()->from_bits(a), calg->base()->from_bits(b),
                     calg->base()->from_bits(c), val(a, c),
                     val(a, b) * val(b, c)};
  return w;
}

TwoPlaceAssignment::TwoPlaceAssignment(AlgebraPtr algebra)
    : algebra_(std::move(algebra)),
      table_(std::size_t{1} << (2 * algebra_->atom_count())) {}

TwoPlaceAssignment TwoPlaceAssignment::from_event_measure(
    const EventMeasure& p) {
  TwoPlaceAssignment cp(p.algebra());
  const int n = p.algebra()->atom_count();
  const std::uint32_t top = p.algebra()->top_mask();
  for (std::uint32_t y = 1; y <= top; ++y)
    for (std::uint32_t x = 0; x <= top; ++x)
      cp.table_[(static_cast<std::size_t>(y) << n) | x] =
          cond_prob(p, p.algebra()->from_bits(x), p.algebra()->from_bits(y));
  return cp;
}

TwoPlaceAssignment TwoPlaceAssignment::from_cmeasure_basics(
    const CMeasure& mu) {
  const auto& base = mu.algebra()->base();
  TwoPlaceAssignment cp(base);
  const int n = base->atom_count();
  const std::uint32_t top = base->top_mask();
  for (std::uint32_t y = 1; y <= top; ++y)
    for (std::uint32_t x = 0; x <= top; ++x)
      cp.table_[(static_cast<std::size_t>(y) << n) | x] =
          mu.of_basic(base->from_bits(x), base->from_bits(y));
  return cp;
}

TwoPlaceAssignment TwoPlaceAssignment::constant(AlgebraPtr algebra,
                                                Rational value) {
  TwoPlaceAssignment cp(std::move(algebra));
  for (auto& v : cp.table_) v = value;
  return cp;
}

const Rational& TwoPlaceAssignment::at(const Event& a, const Event& b) const {
  check_event(algebra_, a);
  check_event(algebra_, b);
  if (b.is_bot()) throw Error("conditioning on bottom");
  return table_[(static_cast<std::size_t>(b.bits()) << algebra_->atom_count()) |
                a.bits()];
}

void TwoPlaceAssignment::set(const Event& a, const Event& b, Rational value) {
  check_event(algebra_, a);
  check_event(algebra_, b);
  if (b.is_bot()) throw Error("conditioning on bottom");
  table_[(static_cast<std::size_t>(b.bits()) << algebra_->atom_count()) |
         a.bits()] = std::move(value);
}

CpAxiomReport check_cp_axioms(const TwoPlaceAssignment& cp) {
  const auto& alg = cp.algebra();
  const std::uint32_t top = alg->top_mask();
  CpAxiomReport report;

  auto ev = [&](std::uint32_t bits) { return alg->from_bits(bits); };

  // CP1: CP(b|b) = 1
  for (std::uint32_t y = 1; y <= top && report.cp1.pass; ++y) {
    if (cp.at(ev(y), ev(y)) != 1) {
      report.cp1.pass = false;
      report.cp1.witness = "CP(" + ev(y).to_string() + "|" +
                           ev(y).to_string() + ") = " +
                           rational_string(cp.at(ev(y), ev(y)));
    }
  }
  // CP2: additivity over disjoint consequents
  for (std::uint32_t y = 1; y <= top && report.cp2.pass; ++y)
    for (std::uint32_t x1 = 0; x1 <= top && report.cp2.pass; ++x1) {
      const std::uint32_t rest = top & ~x1;
      std::uint32_t x2 = 0;
      for (;;) {
        if (cp.at(ev(x1 | x2), ev(y)) != cp.at(ev(x1), ev(y)) + cp.at(ev(x2), ev(y))) {
          report.cp2.pass = false;
          report.cp2.witness = "a1=" + ev(x1).to_string() +
                               " a2=" + ev(x2).to_string() +
                               " b=" + ev(y).to_string();
          break;
        }
        if (x2 == rest) break;
        x2 = (x2 - rest) & rest;
      }
    }
  // CP3: CP(a|b) = CP(a/\b|b)
  for (std::uint32_t y = 1; y <= top && report.cp3.pass; ++y)
    for (std::uint32_t x = 0; x <= top; ++x)
      if (cp.at(ev(x), ev(y)) != cp.at(ev(x & y), ev(y))) {
        report.cp3.pass = false;
        report.cp3.witness =
            "a=" + ev(x).to_string() + " b=" + ev(y).to_string();
        break;
      }
  // CP4: chain rule over a <= b <= c
  for (std::uint32_t a = 0; a <= top && report.cp4.pass; ++a) {
    const std::uint32_t bspace = top & ~a;
    std::uint32_t bs = 0;
    for (;;) {
      const std::uint32_t b = a | bs;
      if (b != 0) {
        const std::uint32_t cspace = top & ~b;
        std::uint32_t cs = 0;
        for (;;) {
          const std::uint32_t c = b | cs;
          if (c != 0 &&
              cp.at(ev(a), ev(c)) != cp.at(ev(a), ev(b)) * cp.at(ev(b), ev(c))) {
            report.cp4.pass = false;
            report.cp4.witness = "a=" + ev(a).to_string() +
                                 " b=" + ev(b).to_string() +
                                 " c=" + ev(c).to_string();
            break;
          }
          if (cs == cspace) break;
          cs = (cs - cspace) & cspace;
        }
      }
      if (!report.cp4.pass || bs == bspace) break;
      bs = (bs - bspace) & bspace;
    }
  }
  return report;
}

CMeasure perturb(const CMeasure& mu, std::uint64_t atom1, std::uint64_t atom2,
                 const Rational& eps) {
  const auto& calg = mu.algebra();
  if (atom1 >= calg->atom_count() || atom2 >= calg->atom_count())
    throw Error("atom rank out of range");
  if (atom1 == atom2) throw Error("perturbation needs two distinct atoms");
  if (calg->atom_perm(atom1)[0] != calg->atom_perm(atom2)[0])
    throw Error("both atoms must lie below the same (alpha|T)");
  const Rational& w1 = mu.atom_weight(atom1);
  const Rational headroom = 1 - mu.atom_weight(atom2);
  Rational bound = std::min(w1, headroom) / 2;
  if (eps <= 0 || eps >= bound)
    throw Error("epsilon out of the admissible range (0, " +
                rational_string(bound) + ")");
  std::vector<Rational> weights = mu.weights();
  weights[atom1] -= eps;
  weights[atom2] += eps;
  return CMeasure::make(calg, std::move(weights));
}

CMeasure separable_noncanonical_measure(const EventMeasure& p,
                                        CondAlgebraPtr calg) {
  if (!calg) calg = ConditionalAlgebra::make(p.algebra());
  const int n = calg->n();
  if (n < 4)
    throw Error("basic conditionals determine every measure below 4 atoms; "
                "no such measure exists");
  if (n > 5) throw Error("dense null-space search is capped at 5 atoms");
  const std::uint64_t m = calg->atom_count();
  const std::uint32_t top = calg->base()->top_mask();

  // Indicator rows of all distinct basic conditionals.
  std::vector<DynBitset> seen;
  std::vector<std::vector<Rational>> rows;
  for (std::uint32_t y = 1; y <= top; ++y)
    for (std::uint32_t x = 0; x <= top; ++x) {
      CElement e = atoms_below_basic(calg, calg->base()->from_bits(x),
                                     calg->base()->from_bits(y));
      if (std::find(seen.begin(), seen.end(), e.bits()) != seen.end())
        continue;
      seen.push_back(e.bits());
      std::vector<Rational> row(m);
      e.bits().for_each_set([&](std::uint64_t r) { row[r] = 1; });
      rows.push_back(std::move(row));
    }

  // Exact row reduction; find one free column and build a null vector.
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const Rational lead = rows[rank][col];
    for (auto& v : rows[rank]) v /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col];
      for (std::size_t c = col; c < m; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::size_t free_col = m;
  for (std::size_t col = 0; col < m; ++col)
    if (std::find(pivot_col.begin(), pivot_col.end(), col) ==
        pivot_col.end()) {
      free_col = col;
      break;
    }
  if (free_col == m)
    throw Error("basic conditionals determine every measure on this algebra");
  std::vector<Rational> dir(m);
  dir[free_col] = 1;
  for (std::size_t r = 0; r < rank; ++r) dir[pivot_col[r]] = -rows[r][free_col];

  // Scale the direction so the shifted measure stays strictly positive.
  CMeasure mu = canonical_extension(p, calg);
  Rational budget = 1;
  for (std::uint64_t k = 0; k < m; ++k)
    if (dir[k] < 0) {
      Rational limit = mu.atom_weight(k) / -dir[k];
      if (limit < budget) budget = limit;
    }
  Rational t = budget / 2;
  std::vector<Rational> weights(m);
  for (std::uint64_t k = 0; k < m; ++k)
    weights[k] = mu.atom_weight(k) + t * dir[k];
  return CMeasure::make(calg, std::move(weights));
}

Rational block_measure(const EventMeasure& p,
                       std::span<const std::uint8_t> prefix) {
  const int n = p.algebra()->atom_count();
  std::uint32_t used = 0;
  Rational value = 1;
  Rational remaining = 1;
  for (auto v : prefix) {
    if (v >= n) throw Error("prefix entry out of range");
    if (used & (std::uint32_t{1} << v)) throw Error("repeated prefix entry");
    value *= p.atom_weight(v) / remaining;
    remaining -= p.atom_weight(v);
    used |= std::uint32_t{1} << v;
  }
  return value;
}

EventMeasure restrict_to_events(const CMeasure& mu) {
  const auto& calg = mu.algebra();
  const int n = calg->n();
  const std::uint64_t group = factorial(n - 1);
  std::vector<Rational> weights(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    Rational sum = 0;
    for (std::uint64_t r = static_cast<std::uint64_t>(v) * group;
         r < static_cast<std::uint64_t>(v + 1) * group; ++r)
      sum += mu.atom_weight(r);
    weights[v] = std::move(sum);
  }
  return EventMeasure::make(calg->base(), std::move(weights));
}

NonconvexWitness find_nonconvex_witness(const CondAlgebraPtr& algebra) {
  const int n = algebra->n();
  if (n < 3)
    throw Error("separable probabilities are convex below 3 atoms; "
                "no witness exists");
  // Deterministic candidate family of positive event measures.
  std::vector<EventMeasure> candidates;
  candidates.push_back(EventMeasure::uniform(algebra->base()));
  for (int bump = 0; bump < n; ++bump) {
    std::vector<Rational> w(static_cast<std::size_t>(n), Rational(1, n + 1));
    w[bump] = Rational(2, n + 1);
    candidates.push_back(EventMeasure::make(algebra->base(), std::move(w)));
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CMeasure mi = canonical_extension(candidates[i]);
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      CMeasure mj = canonical_extension(candidates[j]);
      std::vector<Rational> mid(mi.weights().size());
      for (std::size_t k = 0; k < mid.size(); ++k)
        mid[k] = (mi.atom_weight(k) + mj.atom_weight(k)) / 2;
      CMeasure midpoint = CMeasure::make(algebra, std::move(mid));
      auto violation = separability_witness(midpoint);
      if (violation && is_separable(mi) && is_separable(mj))
        return NonconvexWitness{std::move(mi), std::move(mj),
                                std::move(midpoint), std::move(*violation)};
    }
  }
  throw Error("no non-convexity witness found in the candidate family");
}

}  // namespace condal
