#include "condal/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "condal/errors.hpp"

namespace condal {

namespace {

enum class Tok { Ident, Top, Bot, Not, And, Or, Imp, Iff, Bar, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '(') { out.push_back({Tok::LParen, "(", start}); ++i; continue; }
    if (c == ')') { out.push_back({Tok::RParen, ")", start}); ++i; continue; }
    if (c == '~') { out.push_back({Tok::Not, "~", start}); ++i; continue; }
    if (c == '|') { out.push_back({Tok::Bar, "|", start}); ++i; continue; }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '\\') {
      out.push_back({Tok::And, "/\\", start}); i += 2; continue;
    }
    if (c == '\\' && i + 1 < src.size() && src[i + 1] == '/') {
      out.push_back({Tok::Or, "\\/", start}); i += 2; continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Imp, "->", start}); i += 2; continue;
    }
    if (c == '<' && i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>') {
      out.push_back({Tok::Iff, "<->", start}); i += 3; continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_'))
        ++j;
      std::string word(src.substr(i, j - i));
      if (word == "T")
        out.push_back({Tok::Top, word, start});
      else if (word == "F")
        out.push_back({Tok::Bot, word, start});
      else
        out.push_back({Tok::Ident, word, start});
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class PropParser {
 public:
  explicit PropParser(const std::vector<Token>& toks) : toks_(toks) {}

  // Parses tokens [lo, hi) as a propositional formula.
  PropPtr parse(std::size_t lo, std::size_t hi) {
    pos_ = lo;
    end_ = hi;
    PropPtr f = iff();
    if (pos_ != end_)
      throw ParseError("unexpected token '" + toks_[pos_].text + "'",
                       toks_[pos_].pos);
    return f;
  }

 private:
  const Token& peek() const {
    return pos_ < end_ ? toks_[pos_] : toks_[end_ > 0 ? end_ : 0];
  }
  bool at_end() const { return pos_ >= end_; }
  const Token& take() { return toks_[pos_++]; }

  PropPtr iff() {
    PropPtr l = imp();
    while (!at_end() && peek().kind == Tok::Iff) {
      take();
      l = PropFormula::mk_iff(l, imp());
    }
    return l;
  }
  PropPtr imp() {
    PropPtr l = disj();
    if (!at_end() && peek().kind == Tok::Imp) {
      take();
      return PropFormula::mk_imp(l, imp());  // right-associative
    }
    return l;
  }
  PropPtr disj() {
    PropPtr l = conj();
    while (!at_end() && peek().kind == Tok::Or) {
      take();
      l = PropFormula::mk_or(l, conj());
    }
    return l;
  }
  PropPtr conj() {
    PropPtr l = unary();
    while (!at_end() && peek().kind == Tok::And) {
      take();
      l = PropFormula::mk_and(l, unary());
    }
    return l;
  }
  PropPtr unary() {
    if (at_end()) throw ParseError("formula ends unexpectedly", toks_[end_].pos);
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        take();
        return PropFormula::mk_not(unary());
      case Tok::Top: take(); return PropFormula::mk_top();
      case Tok::Bot: take(); return PropFormula::mk_bot();
      case Tok::Ident: take(); return PropFormula::mk_var(t.text);
      case Tok::LParen: {
        take();
        PropPtr f = iff();
        if (at_end() || peek().kind != Tok::RParen)
          throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::Bar:
        throw ParseError("nested conditional: '|' inside a formula", t.pos);
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0, end_ = 0;
};

// Conditional-level parser. A parenthesized group is classified by its
// bar structure: exactly one bar at group depth 0 makes it a basic
// conditional, none makes it a nested conditional expression or a plain
// propositional group, more than one is an error.
class CondParser {
 public:
  explicit CondParser(const std::vector<Token>& toks) : toks_(toks) {}

  CondPtr parse_all() {
    // A term with no bar anywhere is a plain proposition phi, read as (phi|T).
    bool has_bar = false;
    for (const auto& t : toks_)
      if (t.kind == Tok::Bar) has_bar = true;
    if (!has_bar) {
      PropPtr phi = PropParser(toks_).parse(0, toks_.size() - 1);
      return CondFormula::mk_basic(phi, PropFormula::mk_top());
    }
    pos_ = 0;
    CondPtr f = iff();
    if (toks_[pos_].kind != Tok::End)
      throw ParseError("unexpected token '" + toks_[pos_].text + "'",
                       toks_[pos_].pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  CondPtr iff() {
    CondPtr l = imp();
    while (peek().kind == Tok::Iff) {
      take();
      l = CondFormula::mk_iff(l, imp());
    }
    return l;
  }
  CondPtr imp() {
    CondPtr l = disj();
    if (peek().kind == Tok::Imp) {
      take();
      return CondFormula::mk_imp(l, imp());
    }
    return l;
  }
  CondPtr disj() {
    CondPtr l = conj();
    while (peek().kind == Tok::Or) {
      take();
      l = CondFormula::mk_or(l, conj());
    }
    return l;
  }
  CondPtr conj() {
    CondPtr l = unary();
    while (peek().kind == Tok::And) {
      take();
      l = CondFormula::mk_and(l, unary());
    }
    return l;
  }
  CondPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      take();
      return CondFormula::mk_not(unary());
    }
    if (t.kind == Tok::LParen) return group();
    throw ParseError("expected a conditional '(phi | psi)'", t.pos);
  }

  CondPtr group() {
    std::size_t open = pos_;
    take();  // '('
    // Find the matching ')' and any depth-0 bars inside.
    int depth = 0;
    std::size_t close = 0;
    std::vector<std::size_t> bars;
    bool deeper_bar = false;
    for (std::size_t i = pos_; toks_[i].kind != Tok::End; ++i) {
      if (toks_[i].kind == Tok::LParen) ++depth;
      else if (toks_[i].kind == Tok::RParen) {
        if (depth == 0) { close = i; break; }
        --depth;
      } else if (toks_[i].kind == Tok::Bar) {
        if (depth == 0) bars.push_back(i);
        else deeper_bar = true;
      }
    }
    if (close == 0)
      throw ParseError("expected ')'", toks_[open].pos);
    if (bars.size() > 1)
      throw ParseError("more than one '|' in a conditional", toks_[bars[1]].pos);
    if (bars.size() == 1) {
      // Basic conditional (phi | psi); neither side may mention the bar.
      if (deeper_bar)
        throw ParseError("nested conditional", first_deep_bar(pos_, close));
      PropParser pp(toks_);
      PropPtr phi = pp.parse(pos_, bars[0]);
      PropPtr psi = pp.parse(bars[0] + 1, close);
      pos_ = close + 1;
      return CondFormula::mk_basic(phi, psi);
    }
    // No top-level bar: a compound conditional group when bars occur
    // deeper, otherwise a plain propositional group read as (phi|T).
    if (deeper_bar) {
      CondPtr inner = iff();
      if (peek().kind != Tok::RParen)
        throw ParseError("expected ')'", peek().pos);
      take();
      return inner;
    }
    PropPtr phi = PropParser(toks_).parse(pos_, close);
    pos_ = close + 1;
    return CondFormula::mk_basic(phi, PropFormula::mk_top());
  }

  std::size_t first_deep_bar(std::size_t lo, std::size_t hi) const {
    int depth = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (toks_[i].kind == Tok::LParen) ++depth;
      else if (toks_[i].kind == Tok::RParen) --depth;
      else if (toks_[i].kind == Tok::Bar && depth > 0) return toks_[i].pos;
    }
    return toks_[hi].pos;
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

PropPtr parse_prop(std::string_view src) {
  auto toks = tokenize(src);
  return PropParser(toks).parse(0, toks.size() - 1);
}

CondPtr parse_cond(std::string_view src) {
  auto toks = tokenize(src);
  if (toks.size() == 1) throw ParseError("empty input", 0);
  return CondParser(toks).parse_all();
}

}  // namespace condal
