#pragma once

#include <stdexcept>
#include <string>

#include "cmtrace/trace_poly.hpp"

namespace cmtrace {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  size_t position;
};

/// Parses the expression grammar: rational literals p/q, the size symbol n,
/// tr(W) with W a product of X and Y using ^ and *, operators + - * and
/// parentheses, ^ with non-negative integer exponents, and the aliases
///   a = tr X, b = tr Y, c = (1/2) tr X^2, d = (1/2) tr Y^2, e = tr XY.
/// Round-trips with TracePolynomial::str().
TracePolynomial parse_trace_poly(const std::string& text);

/// Parses a coefficient expression in n alone (no trace factors).
NPoly parse_npoly(const std::string& text);

}  // namespace cmtrace
