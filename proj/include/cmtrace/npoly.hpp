#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "cmtrace/rational.hpp"

namespace cmtrace {

/// Polynomial in the formal matrix-size symbol n with exact rational
/// coefficients. The size symbol is kept formal so that identities like
/// tr(XY[X,Y]) = n(n-1)/2 are single exact equalities; specializing n to a
/// concrete value is a separate evaluation step.
class NPoly {
 public:
  NPoly() = default;
  /*implicit*/ NPoly(const Rational& c);
  /*implicit*/ NPoly(long c) : NPoly(rat(c)) {}

  static NPoly var();                     // the symbol n
  static NPoly monomial(unsigned k, const Rational& c);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  /// Degree in n; -1 for the zero polynomial.
  int degree() const;
  const Rational& coeff(unsigned k) const;
  const std::map<unsigned, Rational>& coeffs() const { return coeffs_; }

  NPoly& operator+=(const NPoly& o);
  NPoly& operator-=(const NPoly& o);
  NPoly operator+(const NPoly& o) const;
  NPoly operator-(const NPoly& o) const;
  NPoly operator-() const;
  NPoly operator*(const NPoly& o) const;
  NPoly& operator*=(const NPoly& o);
  NPoly operator*(const Rational& c) const;
  /// Division by a nonzero rational scalar; always exact.
  NPoly operator/(const Rational& c) const;

  bool operator==(const NPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const NPoly& o) const { return !(*this == o); }
  bool operator<(const NPoly& o) const { return coeffs_ < o.coeffs_; }

  /// Quotient of exact polynomial division, or nullopt if the remainder is
  /// nonzero.
  std::optional<NPoly> divide_exact(const NPoly& d) const;
  /// Euclidean division: *this = q*d + r with deg r < deg d.
  void divmod(const NPoly& d, NPoly& q, NPoly& r) const;

  Rational eval(const Rational& n) const;
  std::complex<double> eval(const std::complex<double>& n) const;

  Rational leading_coeff() const;
  /// Content = gcd of the rational coefficients (positive), with the sign of
  /// the leading coefficient. Zero polynomial has content 0.
  Rational content() const;

  std::string str() const;

 private:
  void trim(unsigned k);
  std::map<unsigned, Rational> coeffs_;  // exponent -> nonzero coefficient
};

/// Monic gcd of two univariate polynomials over the rationals.
NPoly gcd(const NPoly& a, const NPoly& b);

}  // namespace cmtrace
