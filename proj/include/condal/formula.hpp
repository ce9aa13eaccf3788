#pragma once

#include <memory>
#include <string>

namespace condal {

struct PropFormula;
using PropPtr = std::shared_ptr<const PropFormula>;

// Propositional formula AST over named identifiers. Identifiers resolve
// against an algebra at evaluation time: atom labels in a plain algebra,
// variables in a Lindenbaum algebra.
struct PropFormula {
  enum class Kind { Var, Top, Bot, Not, And, Or, Imp, Iff };

  Kind kind;
  std::string var;     // Kind::Var only
  PropPtr lhs, rhs;    // Not uses lhs; binary kinds use both

  static PropPtr mk_var(std::string name);
  static PropPtr mk_top();
  static PropPtr mk_bot();
  static PropPtr mk_not(PropPtr a);
  static PropPtr mk_and(PropPtr a, PropPtr b);
  static PropPtr mk_or(PropPtr a, PropPtr b);
  static PropPtr mk_imp(PropPtr a, PropPtr b);
  static PropPtr mk_iff(PropPtr a, PropPtr b);
};

// Renders in the input grammar: ~  /\  \/  ->  <->  T  F.
std::string to_string(const PropFormula& f);

struct CondFormula;
using CondPtr = std::shared_ptr<const CondFormula>;

// Conditional formula AST: Boolean combinations of basic conditionals
// (phi | psi). The bar never nests; the parser rejects nested bars and
// logic-level validation additionally requires satisfiable antecedents.
struct CondFormula {
  enum class Kind { Basic, Not, And, Or, Imp, Iff };

  Kind kind;
  PropPtr phi, psi;    // Basic: (phi | psi), consequent phi, antecedent psi
  CondPtr lhs, rhs;

  static CondPtr mk_basic(PropPtr phi, PropPtr psi);
  static CondPtr mk_not(CondPtr a);
  static CondPtr mk_and(CondPtr a, CondPtr b);
  static CondPtr mk_or(CondPtr a, CondPtr b);
  static CondPtr mk_imp(CondPtr a, CondPtr b);
  static CondPtr mk_iff(CondPtr a, CondPtr b);
};

std::string to_string(const CondFormula& f);

}  // namespace condal
