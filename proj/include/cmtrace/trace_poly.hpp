#pragma once

#include <map>
#include <string>
#include <vector>

#include "cmtrace/npoly.hpp"
#include "cmtrace/trace_word.hpp"

namespace cmtrace {

/// Product of trace factors: a multiset of non-empty cyclic words. The empty
/// product represents the constant 1; tr(id) factors are never stored (they
/// are folded into the coefficient as n at construction time).
class TraceProduct {
 public:
  TraceProduct() = default;
  explicit TraceProduct(std::vector<TraceWord> factors);

  const std::vector<TraceWord>& factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }
  int degree() const;
  std::pair<int, int> double_degree() const;
  int weight() const;
  bool all_sorted() const;

  /// Canonical term order: total degree first, then factor count, then the
  /// factor words lexicographically.
  bool operator<(const TraceProduct& o) const;
  bool operator==(const TraceProduct& o) const { return factors_ == o.factors_; }
  bool operator!=(const TraceProduct& o) const { return !(*this == o); }

  /// "tr(X^2*Y)*tr(X)" rendering; "1" for the empty product.
  std::string str() const;

 private:
  std::vector<TraceWord> factors_;  // sorted ascending
};

/// Linear combination of trace products over NPoly: the invariant trace
/// polynomials with the matrix size kept formal.
class TracePolynomial {
 public:
  TracePolynomial() = default;
  /*implicit*/ TracePolynomial(const NPoly& c);  // constant

  /// Single trace factor tr(w); an empty word contributes the constant n.
  static TracePolynomial trace(const TraceWord& w);
  /// One term. Empty factor words each contribute a factor n to the
  /// coefficient and are dropped.
  static TracePolynomial term(const std::vector<TraceWord>& factors,
                              const NPoly& coeff);

  bool is_zero() const { return terms_.empty(); }
  const std::map<TraceProduct, NPoly>& terms() const { return terms_; }
  /// Max term degree; -1 for zero.
  int degree() const;
  /// Weight if all terms agree, or nullopt.
  std::optional<int> homogeneous_weight() const;
  const NPoly& coeff(const TraceProduct& p) const;

  TracePolynomial& operator+=(const TracePolynomial& o);
  TracePolynomial& operator-=(const TracePolynomial& o);
  TracePolynomial operator+(const TracePolynomial& o) const;
  TracePolynomial operator-(const TracePolynomial& o) const;
  TracePolynomial operator-() const;
  TracePolynomial operator*(const TracePolynomial& o) const;
  TracePolynomial operator*(const NPoly& c) const;
  TracePolynomial operator/(const Rational& c) const;

  bool operator==(const TracePolynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const TracePolynomial& o) const { return !(*this == o); }

  void add_term(const TraceProduct& p, const NPoly& c);

  /// Byte-stable printer: terms in descending (degree, term order), each
  /// NPoly coefficient expanded into monomials in n.
  std::string str() const;

 private:
  std::map<TraceProduct, NPoly> terms_;  // no zero coefficients
};

/// Poisson bracket {tr v, tr w} induced by omega = tr(dX ^ dY), via the
/// splice rule: for every X in v and Y in w a positive spliced trace, for
/// every Y in v and X in w a negative one; empty spliced words contribute n.
TracePolynomial bracket_words(const TraceWord& v, const TraceWord& w);

/// Bilinear extension of bracket_words via the Leibniz rule over factors.
TracePolynomial bracket(const TracePolynomial& f, const TracePolynomial& g);

}  // namespace cmtrace
