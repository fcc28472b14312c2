#pragma once

#include <map>
#include <string>
#include <vector>

#include "cmtrace/closure.hpp"
#include "cmtrace/rational.hpp"

namespace cmtrace {

/// Monomial in the 2n variables x1..xn, y1..yn: exponents stored as
/// (x exponents, y exponents). Ordered graded-lexicographically.
struct CanonicalMono {
  std::vector<unsigned> ex, ey;

  int degree() const;
  bool is_constant() const { return degree() == 0; }
  bool operator<(const CanonicalMono& o) const;
  bool operator==(const CanonicalMono& o) const {
    return ex == o.ex && ey == o.ey;
  }
  std::string str() const;  // "x1^2*y2", "1" for the constant
};

/// Exact-rational polynomial on T*C^n with the canonical Poisson structure
/// {x_j, y_k} = delta_jk.
class CanonicalPoly {
 public:
  CanonicalPoly() = default;
  explicit CanonicalPoly(int n) : n_(n) {}

  static CanonicalPoly constant(int n, const Rational& c);
  /// x_k (axis 'x') or y_k (axis 'y'), k in [1, n].
  static CanonicalPoly variable(int n, char axis, int k);

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  const std::map<CanonicalMono, Rational>& terms() const { return terms_; }
  void add_term(const CanonicalMono& m, const Rational& c);

  CanonicalPoly operator+(const CanonicalPoly& o) const;
  CanonicalPoly operator-(const CanonicalPoly& o) const;
  CanonicalPoly operator-() const;
  CanonicalPoly operator*(const CanonicalPoly& o) const;
  CanonicalPoly operator*(const Rational& c) const;
  CanonicalPoly& operator+=(const CanonicalPoly& o);
  bool operator==(const CanonicalPoly& o) const { return terms_ == o.terms_; }

  /// d/dx_k or d/dy_k, k in [1, n].
  CanonicalPoly derivative(char axis, int k) const;

  /// Drops the constant term (Hamiltonians are defined up to a constant).
  CanonicalPoly modulo_constants() const;

  std::string str() const;  // descending graded-lex, "2*x1*y1 - 1/2"

 private:
  void check_same_n(const CanonicalPoly& o) const;
  int n_ = 0;
  std::map<CanonicalMono, Rational> terms_;  // no zero coefficients
};

/// sum_k df/dx_k dg/dy_k - df/dy_k dg/dx_k. Throws on dimension mismatch.
CanonicalPoly canonical_bracket(const CanonicalPoly& f, const CanonicalPoly& g);

/// Same grammar as the trace expressions but with variables x1..xn, y1..yn.
CanonicalPoly parse_canonical_poly(const std::string& src, int n);

/// Shear Hamiltonians: -x_k^{p+1}/(p+1) and y_k^{q+1}/(q+1) for degrees up
/// to the cap, plus the cross terms -x_j x_k and y_j y_k (j < k). A cap
/// below 2 still yields the quadratic family.
std::vector<CanonicalPoly> shear_generators(int n, int degree_cap);

/// Closure-engine context over the commutative monomial basis; brackets are
/// taken modulo constants.
class CanonicalCtx {
 public:
  using Key = CanonicalMono;
  using Elem = std::map<Key, RatFunc>;

  explicit CanonicalCtx(int n) : n_(n) {}

  Elem bracket(const Elem& a, const Elem& b) const;
  int degree(const Key& k) const { return k.degree(); }

  Elem to_elem(const CanonicalPoly& f) const;  // modulo constants

 private:
  int n_;
};

using CanonicalClosure = ClosureEngine<CanonicalCtx>;

struct CoverageReport {
  int n = 0;
  int budget = 0;
  std::vector<std::pair<CanonicalMono, bool>> verdicts;  // member?
  int missing = 0;
  CanonicalClosure::Stats stats;
  std::map<int, int> basis_by_degree;
};

/// Runs the closure of the shear generators and reports membership of every
/// nonconstant monomial of degree <= budget, modulo constants.
CoverageReport monomial_coverage(int n, int degree_budget, int slack = 2);

}  // namespace cmtrace
