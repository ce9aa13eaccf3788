#include "condal/event_algebra.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <unordered_set>

#include "condal/errors.hpp"

namespace condal {

namespace {

// n! bit vectors explode quickly; 12 is where a single element would
// already take ~60 MB, so that is the absolute bound regardless of cap.
constexpr int kHardAtomBound = 12;

std::atomic<int> g_atom_cap{0};  // 0 = not yet initialised

int read_cap_from_env() {
  const char* env = std::getenv("CONDAL_MAX_ATOMS");
  if (!env) return 8;
  int v = std::atoi(env);
  return v >= 1 ? v : 8;
}

void check_same_algebra(const Event& a, const Event& b) {
  if (a.algebra() != b.algebra())
    throw Error("operands belong to different event algebras");
}

}  // namespace

int EventAlgebra::atom_cap() {
  int cap = g_atom_cap.load();
  if (cap == 0) {
    cap = std::min(read_cap_from_env(), kHardAtomBound);
    g_atom_cap.store(cap);
  }
  return cap;
}

void EventAlgebra::set_atom_cap(int cap) {
  if (cap < 1) throw Error("atom cap must be at least 1");
  g_atom_cap.store(std::min(cap, kHardAtomBound));
}

EventAlgebra::EventAlgebra(int n, std::vector<std::string> labels,
                           std::vector<std::string> vars)
    : n_(n), labels_(std::move(labels)), vars_(std::move(vars)) {}

AlgebraPtr EventAlgebra::make(int n, std::vector<std::string> labels) {
  if (n < 1) throw Error("an event algebra needs at least one atom");
  if (n > atom_cap())
    throw CapExceeded("atom count " + std::to_string(n) +
                      " exceeds the cap of " + std::to_string(atom_cap()) +
                      " (override with CONDAL_MAX_ATOMS)");
  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back("w" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels.size()) != n)
    throw Error("expected " + std::to_string(n) + " atom labels, got " +
                std::to_string(labels.size()));
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error("atom labels must be nonempty");
    if (!seen.insert(l).second) throw Error("duplicate atom label '" + l + "'");
  }
  return AlgebraPtr(new EventAlgebra(n, std::move(labels), {}));
}

AlgebraPtr EventAlgebra::lindenbaum(int m, std::vector<std::string> names) {
  if (m < 1) throw Error("a Lindenbaum algebra needs at least one variable");
  if (names.empty()) {
    static const char* defaults[] = {"p", "q", "r", "s"};
    for (int i = 0; i < m; ++i)
      names.push_back(i < 4 ? defaults[i] : "v" + std::to_string(i + 1));
  }
  if (static_cast<int>(names.size()) != m)
    throw Error("expected " + std::to_string(m) + " variable names");
  std::unordered_set<std::string> seen;
  for (const auto& v : names) {
    if (v.empty()) throw Error("variable names must be nonempty");
    if (!seen.insert(v).second)
      throw Error("duplicate variable name '" + v + "'");
  }
  if (m >= 31 || (1 << m) > atom_cap())
    throw CapExceeded("2^" + std::to_string(m) +
                      " valuation atoms exceed the cap of " +
                      std::to_string(atom_cap()));
  int n = 1 << m;
  // Atom i is the valuation encoded by (n-1-i): the all-true minterm comes
  // first and variable 0 is the most significant bit. Labels render the
  // minterms in the formula grammar.
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) {
    unsigned pattern = static_cast<unsigned>(n - 1 - i);
    std::string l;
    for (int v = 0; v < m; ++v) {
      if (v) l += "/\\";
      bool tr = (pattern >> (m - 1 - v)) & 1u;
      if (!tr) l += "~";
      l += names[v];
    }
    labels.push_back(std::move(l));
  }
  return AlgebraPtr(new EventAlgebra(n, std::move(labels), std::move(names)));
}

int EventAlgebra::atom_index(std::string_view label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  return -1;
}

int EventAlgebra::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

bool EventAlgebra::valuation(int atom, int var) const {
  int m = variable_count();
  unsigned pattern = static_cast<unsigned>(n_ - 1 - atom);
  return (pattern >> (m - 1 - var)) & 1u;
}

Event EventAlgebra::bot() const { return Event(shared_from_this(), 0); }

Event EventAlgebra::top() const {
  return Event(shared_from_this(), top_mask());
}

Event EventAlgebra::atom(int i) const {
  if (i < 0 || i >= n_) throw Error("atom index out of range");
  return Event(shared_from_this(), std::uint32_t{1} << i);
}

Event EventAlgebra::from_bits(std::uint32_t bits) const {
  return Event(shared_from_this(), bits);
}

Event EventAlgebra::from_atoms(const std::vector<int>& atoms) const {
  std::uint32_t bits = 0;
  for (int i : atoms) {
    if (i < 0 || i >= n_) throw Error("atom index out of range");
    bits |= std::uint32_t{1} << i;
  }
  return Event(shared_from_this(), bits);
}

Event EventAlgebra::from_labels(const std::vector<std::string>& labels) const {
  std::uint32_t bits = 0;
  for (const auto& l : labels) {
    int i = atom_index(l);
    if (i < 0) throw Error("unknown atom label '" + l + "'");
    bits |= std::uint32_t{1} << i;
  }
  return Event(shared_from_this(), bits);
}

Event::Event(AlgebraPtr algebra, std::uint32_t bits)
    : algebra_(std::move(algebra)), bits_(bits) {
  if (bits_ & ~algebra_->top_mask())
    throw Error("event bits outside the algebra's atom range");
}

Event Event::meet(const Event& o) const {
  check_same_algebra(*this, o);
  return Event(algebra_, bits_ & o.bits_);
}

Event Event::join(const Event& o) const {
  check_same_algebra(*this, o);
  return Event(algebra_, bits_ | o.bits_);
}

Event Event::complement() const {
  return Event(algebra_, ~bits_ & algebra_->top_mask());
}

bool Event::leq(const Event& o) const {
  check_same_algebra(*this, o);
  return (bits_ & ~o.bits_) == 0;
}

bool Event::is_top() const { return bits_ == algebra_->top_mask(); }

bool Event::is_atom() const { return std::has_single_bit(bits_); }

int Event::atom_count() const { return std::popcount(bits_); }

std::vector<int> Event::atoms_below() const {
  std::vector<int> out;
  for (int i = 0; i < algebra_->atom_count(); ++i)
    if (contains_atom(i)) out.push_back(i);
  return out;
}

bool Event::operator==(const Event& o) const {
  check_same_algebra(*this, o);
  return bits_ == o.bits_;
}

std::string Event::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : atoms_below()) {
    if (!first) s += ",";
    s += algebra_->atom_label(i);
    first = false;
  }
  return s + "}";
}

namespace {

bool eval_prop(const PropFormula& f, const EventAlgebra& alg, int atom) {
  switch (f.kind) {
    case PropFormula::Kind::Var: {
      if (alg.is_lindenbaum()) {
        int v = alg.variable_index(f.var);
        if (v < 0) throw Error("unknown variable '" + f.var + "'");
        return alg.valuation(atom, v);
      }
      int i = alg.atom_index(f.var);
      if (i < 0) throw Error("unknown atom label '" + f.var + "'");
      return i == atom;
    }
    case PropFormula::Kind::Top: return true;
    case PropFormula::Kind::Bot: return false;
    case PropFormula::Kind::Not: return !eval_prop(*f.lhs, alg, atom);
    case PropFormula::Kind::And:
      return eval_prop(*f.lhs, alg, atom) && eval_prop(*f.rhs, alg, atom);
    case PropFormula::Kind::Or:
      return eval_prop(*f.lhs, alg, atom) || eval_prop(*f.rhs, alg, atom);
    case PropFormula::Kind::Imp:
      return !eval_prop(*f.lhs, alg, atom) || eval_prop(*f.rhs, alg, atom);
    case PropFormula::Kind::Iff:
      return eval_prop(*f.lhs, alg, atom) == eval_prop(*f.rhs, alg, atom);
  }
  return false;
}

}  // namespace

Event truth_set(const PropFormula& formula, const AlgebraPtr& algebra) {
  std::uint32_t bits = 0;
  for (int i = 0; i < algebra->atom_count(); ++i)
    if (eval_prop(formula, *algebra, i)) bits |= std::uint32_t{1} << i;
  return algebra->from_bits(bits);
}

}  // namespace condal
