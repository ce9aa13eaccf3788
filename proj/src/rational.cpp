#include "condal/rational.hpp"

#include "condal/errors.hpp"

namespace condal {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  if (text.find('.') != std::string::npos ||
      text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos)
    throw Error("decimal literals are rejected, use \"p/q\": '" + text + "'");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw Error("bad rational literal '" + text + "'");
  }
}

std::string rational_string(const Rational& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

}  // namespace condal
