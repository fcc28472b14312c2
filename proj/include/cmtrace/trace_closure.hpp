#pragma once

#include <memory>
#include <vector>

#include "cmtrace/closure.hpp"
#include "cmtrace/rank_one.hpp"
#include "cmtrace/trace_poly.hpp"

namespace cmtrace {

enum class ReductionMode { ambient, rank_one };

/// Closure-engine context for the invariant trace algebra. Brackets of basis
/// monomial pairs are cached (and reduced first, in rank-one mode); the
/// caches are shared across copies of the context.
class TraceCtx {
 public:
  using Key = TraceProduct;
  using Elem = std::map<Key, RatFunc>;

  explicit TraceCtx(ReductionMode mode);

  Elem bracket(const Elem& a, const Elem& b) const;
  int degree(const Key& k) const { return k.degree(); }
  ReductionMode mode() const { return mode_; }

  /// Coefficient-wise view of a polynomial; in rank-one mode the input is
  /// reduced first so every key is a product of sorted factors.
  Elem to_elem(const TracePolynomial& f) const;

 private:
  using PairResult = std::vector<std::pair<Key, NPoly>>;

  const PairResult& mono_bracket(const Key& p, const Key& q) const;

  ReductionMode mode_;
  std::shared_ptr<RankOneReducer> reducer_;
  mutable std::shared_ptr<std::map<std::pair<Key, Key>, PairResult>> cache_;
};

using TraceClosure = ClosureEngine<TraceCtx>;

/// Exact polynomial form of a closure element: the coefficients times their
/// common denominator. Used when printing and when comparing with symbolic
/// oracles up to scale.
TracePolynomial elem_to_poly_cleared(const TraceCtx::Elem& v);

/// The four-element generator set {tr Y, tr Y^2, tr X^3, (tr X)^2}.
std::vector<TracePolynomial> generators_f();

/// The power-trace family {tr X^i, tr Y^j, (tr X^i)^2, (tr Y^j)^2} truncated
/// so every member has degree <= budget.
std::vector<TracePolynomial> generators_d(int budget);

/// Every product of tr(X^p Y^q) factors with total degree in [1, budget]:
/// the desk-scale target family of the rank-one completeness statement.
std::vector<TracePolynomial> sorted_products_up_to(int budget);

/// Monomials a^i b^j c^k d^l e^p of total degree in [1, budget] in the
/// five-element alphabet a = tr X, b = tr Y, c = tr X^2 / 2, d = tr Y^2 / 2,
/// e = tr XY.
std::vector<TracePolynomial> alphabet_monomials_up_to(int budget);

/// e^p for p in [1, pmax].
std::vector<TracePolynomial> e_powers_up_to(int pmax);

}  // namespace cmtrace
