#include "condal/formula.hpp"

namespace condal {

namespace {

PropPtr prop_node(PropFormula::Kind k, std::string var, PropPtr a, PropPtr b) {
  auto n = std::make_shared<PropFormula>();
  n->kind = k;
  n->var = std::move(var);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

CondPtr cond_node(CondFormula::Kind k, PropPtr phi, PropPtr psi, CondPtr a,
                  CondPtr b) {
  auto n = std::make_shared<CondFormula>();
  n->kind = k;
  n->phi = std::move(phi);
  n->psi = std::move(psi);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

}  // namespace

PropPtr PropFormula::mk_var(std::string name) {
  return prop_node(Kind::Var, std::move(name), nullptr, nullptr);
}
PropPtr PropFormula::mk_top() { return prop_node(Kind::Top, {}, nullptr, nullptr); }
PropPtr PropFormula::mk_bot() { return prop_node(Kind::Bot, {}, nullptr, nullptr); }
PropPtr PropFormula::mk_not(PropPtr a) {
  return prop_node(Kind::Not, {}, std::move(a), nullptr);
}
PropPtr PropFormula::mk_and(PropPtr a, PropPtr b) {
  return prop_node(Kind::And, {}, std::move(a), std::move(b));
}
PropPtr PropFormula::mk_or(PropPtr a, PropPtr b) {
  return prop_node(Kind::Or, {}, std::move(a), std::move(b));
}
PropPtr PropFormula::mk_imp(PropPtr a, PropPtr b) {
  return prop_node(Kind::Imp, {}, std::move(a), std::move(b));
}
PropPtr PropFormula::mk_iff(PropPtr a, PropPtr b) {
  return prop_node(Kind::Iff, {}, std::move(a), std::move(b));
}

CondPtr CondFormula::mk_basic(PropPtr phi, PropPtr psi) {
  return cond_node(Kind::Basic, std::move(phi), std::move(psi), nullptr,
                   nullptr);
}
CondPtr CondFormula::mk_not(CondPtr a) {
  return cond_node(Kind::Not, nullptr, nullptr, std::move(a), nullptr);
}
CondPtr CondFormula::mk_and(CondPtr a, CondPtr b) {
  return cond_node(Kind::And, nullptr, nullptr, std::move(a), std::move(b));
}
CondPtr CondFormula::mk_or(CondPtr a, CondPtr b) {
  return cond_node(Kind::Or, nullptr, nullptr, std::move(a), std::move(b));
}
CondPtr CondFormula::mk_imp(CondPtr a, CondPtr b) {
  return cond_node(Kind::Imp, nullptr, nullptr, std::move(a), std::move(b));
}
CondPtr CondFormula::mk_iff(CondPtr a, CondPtr b) {
  return cond_node(Kind::Iff, nullptr, nullptr, std::move(a), std::move(b));
}

namespace {

// Precedence levels; higher binds tighter.
int prec(PropFormula::Kind k) {
  switch (k) {
    case PropFormula::Kind::Iff: return 1;
    case PropFormula::Kind::Imp: return 2;
    case PropFormula::Kind::Or: return 3;
    case PropFormula::Kind::And: return 4;
    default: return 5;
  }
}

std::string render(const PropFormula& f, int parent_prec) {
  auto wrap = [&](const std::string& s, int my_prec) {
    return my_prec < parent_prec ? "(" + s + ")" : s;
  };
  switch (f.kind) {
    case PropFormula::Kind::Var: return f.var;
    case PropFormula::Kind::Top: return "T";
    case PropFormula::Kind::Bot: return "F";
    case PropFormula::Kind::Not: return "~" + render(*f.lhs, 5);
    case PropFormula::Kind::And:
      return wrap(render(*f.lhs, 4) + " /\\ " + render(*f.rhs, 4), 4);
    case PropFormula::Kind::Or:
      return wrap(render(*f.lhs, 3) + " \\/ " + render(*f.rhs, 3), 3);
    case PropFormula::Kind::Imp:
      return wrap(render(*f.lhs, 3) + " -> " + render(*f.rhs, 2), 2);
    case PropFormula::Kind::Iff:
      return wrap(render(*f.lhs, 2) + " <-> " + render(*f.rhs, 2), 1);
  }
  return {};
}

std::string render_cond(const CondFormula& f, int parent_prec) {
  auto wrap = [&](const std::string& s, int my_prec) {
    return my_prec < parent_prec ? "(" + s + ")" : s;
  };
  switch (f.kind) {
    case CondFormula::Kind::Basic:
      return "(" + to_string(*f.phi) + " | " + to_string(*f.psi) + ")";
    case CondFormula::Kind::Not: return "~" + render_cond(*f.lhs, 5);
    case CondFormula::Kind::And:
      return wrap(render_cond(*f.lhs, 4) + " /\\ " + render_cond(*f.rhs, 4), 4);
    case CondFormula::Kind::Or:
      return wrap(render_cond(*f.lhs, 3) + " \\/ " + render_cond(*f.rhs, 3), 3);
    case CondFormula::Kind::Imp:
      return wrap(render_cond(*f.lhs, 3) + " -> " + render_cond(*f.rhs, 2), 2);
    case CondFormula::Kind::Iff:
      return wrap(render_cond(*f.lhs, 2) + " <-> " + render_cond(*f.rhs, 2), 1);
  }
  return {};
}

}  // namespace

std::string to_string(const PropFormula& f) { return render(f, 0); }
std::string to_string(const CondFormula& f) { return render_cond(f, 0); }

}  // namespace condal
