#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cmtrace {

/// Exact rational numbers. All symbolic coefficients in the engine live in
/// this type (or in NPoly built on top of it); there is no floating-point
/// fallback anywhere on the symbolic side.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// n-choose-2 and friends show up in the reduction base cases.
inline Rational binom2(long n) { return rat(n * (n - 1), 2); }

}  // namespace cmtrace
