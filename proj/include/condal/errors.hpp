#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace condal {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an operation would exceed a configured size cap
// (atom cap, logic language cap, subset-search cap).
struct CapExceeded : Error {
  using Error::Error;
};

// Syntax error in a formula, conditional term or JSON document.
// `pos` is a 0-based character offset into the offending input.
struct ParseError : Error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
};

}  // namespace condal
