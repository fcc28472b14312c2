#pragma once

#include <map>
#include <string>

#include "cmtrace/trace_poly.hpp"

namespace cmtrace {

/// Result of a reduction: every trace factor has shape X^i Y^j. The leading
/// part collects the terms of maximal total degree; the rest are the
/// lower-degree corrections picked up on the rank-one locus.
struct ReducedForm {
  TracePolynomial value;
  TracePolynomial leading;
  TracePolynomial corrections;
};

/// Stage-one identity for a single trace word: tr(w) = tr(X^i Y^j) plus
/// explicit tr(W B) remainders, with no locus identity applied to the
/// B-traces. Each b_term is a coefficient and the letters of W (B last).
struct BTraceExpansion {
  TraceWord sorted;
  std::vector<std::pair<Rational, std::string>> b_terms;
};
BTraceExpansion expand_b_traces(const TraceWord& w);

/// Rewrites trace polynomials to the basis of products of tr(X^i Y^j),
/// valid on the locus rank([X,Y] + id) = 1 with B = [X,Y]:
///   - adjacent YX pairs are swapped to XY at the cost of a tr(..B..) term,
///   - tr(M B N B) factors through the rank-one identity
///     tr(MCNC) = tr(MC) tr(NC) applied to C = B + id,
///   - tr(X^i Y^j B) is resolved from the linear relation obtained by
///     differentiating tr((X + tY^j)^{i+1} B) = 0 at t = 0,
///   - base cases tr(X^k B) = 0, tr(Y^l B) = 0.
/// All rules are identities on the locus, so memoization is sound. Not
/// thread-safe; use one reducer per thread.
class RankOneReducer {
 public:
  /// Fully reduced form of tr(w).
  const TracePolynomial& reduce_word(const TraceWord& w);

  /// tr(m_left * m_right * B) on the rank-one locus, fully reduced (no B).
  TracePolynomial reduce_b(const std::string& m_left,
                           const std::string& m_right);

  ReducedForm reduce(const TracePolynomial& f);

  static bool is_normal(const TracePolynomial& f);

 private:
  /// tr(W B) for a linear word W, fully reduced.
  const TracePolynomial& trace_b(const std::string& w);
  /// Bubbles W to X^i Y^j in place, returning the accumulated corrections:
  /// tr(W_in B) = tr(X^i Y^j B) + corrections.
  TracePolynomial sort_corrections(std::string w);
  /// tr(M B N B) expanded via the rank-one factorization identity.
  TracePolynomial trace_bb(const std::string& m, const std::string& n);
  /// Fully reduced plain trace of a linear word (rotation-invariant).
  const TracePolynomial& reduce_linear(const std::string& w);

  std::map<std::string, TracePolynomial> word_memo_;     // key: canonical word
  std::map<std::string, TracePolynomial> trace_b_memo_;  // key: linear word
};

}  // namespace cmtrace
