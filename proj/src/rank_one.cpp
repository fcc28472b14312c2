#include "cmtrace/rank_one.hpp"

#include <algorithm>
#include <cassert>

namespace cmtrace {

namespace {

// First adjacent YX pair in a linear word, or npos.
size_t first_yx(const std::string& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == 'Y' && w[i + 1] == 'X') return i;
  return std::string::npos;
}

}  // namespace

BTraceExpansion expand_b_traces(const TraceWord& word) {
  BTraceExpansion out;
  auto [i, j] = word.double_degree();
  out.sorted = word_xy(i, j);
  std::string w = word.letters();
  std::map<std::string, Rational> acc;
  size_t t;
  while ((t = first_yx(w)) != std::string::npos) {
    // tr(M'YXN') = tr(M'XYN') - tr(N'M'B)
    std::string rest = w.substr(t + 2) + w.substr(0, t);
    acc[rest] -= 1;
    w[t] = 'X';
    w[t + 1] = 'Y';
  }
  for (auto& [letters, c] : acc)
    if (sgn(c) != 0) out.b_terms.emplace_back(c, letters + "B");
  return out;
}

bool RankOneReducer::is_normal(const TracePolynomial& f) {
  for (const auto& [p, c] : f.terms())
    if (!p.all_sorted()) return false;
  return true;
}

const TracePolynomial& RankOneReducer::reduce_linear(const std::string& w) {
  return reduce_word(TraceWord(w));
}

const TracePolynomial& RankOneReducer::reduce_word(const TraceWord& word) {
  const std::string& key = word.letters();
  auto it = word_memo_.find(key);
  if (it != word_memo_.end()) return it->second;

  TracePolynomial result;
  if (word.is_sorted()) {
    result = TracePolynomial::trace(word);
  } else {
    // tr(M'YXN') = tr(M'XYN') - tr(N'M'B); bubble until sorted.
    std::string w = key;
    TracePolynomial corr;
    size_t t;
    while ((t = first_yx(w)) != std::string::npos) {
      std::string m = w.substr(0, t);
      std::string rest = w.substr(t + 2);
      corr -= trace_b(rest + m);
      w[t] = 'X';
      w[t + 1] = 'Y';
    }
    auto [i, j] = word.double_degree();
    result = TracePolynomial::trace(word_xy(i, j)) + corr;
  }
  return word_memo_.emplace(key, std::move(result)).first->second;
}

const TracePolynomial& RankOneReducer::trace_b(const std::string& w) {
  auto it = trace_b_memo_.find(w);
  if (it != trace_b_memo_.end()) return it->second;

  TracePolynomial result;
  const auto x_count = std::count(w.begin(), w.end(), 'X');
  const auto y_count = static_cast<long>(w.size()) - x_count;
  if (x_count == 0 || y_count == 0) {
    // tr(X^k B) = 0 and tr(Y^l B) = 0.
    result = TracePolynomial();
  } else if (std::is_sorted(w.begin(), w.end())) {
    // W = X^i Y^j with i, j >= 1. Differentiating tr((X + tY^j)^{i+1} B) = 0
    // at t = 0 gives sum_{m=0}^{i} tr(X^{i-m} Y^j X^m B) = 0; each m >= 1
    // term equals tr(X^i Y^j B) plus corrections, so
    // (i+1) tr(X^i Y^j B) = -(sum of corrections).
    const long i = x_count, j = y_count;
    TracePolynomial total;
    for (long m = 1; m <= i; ++m) {
      std::string wm = std::string(i - m, 'X') + std::string(j, 'Y') +
                       std::string(m, 'X');
      total += sort_corrections(wm);
    }
    result = (-total) / rat(i + 1);
  } else {
    TracePolynomial corr = sort_corrections(w);
    std::string sorted = w;
    std::sort(sorted.begin(), sorted.end());
    result = trace_b(sorted) + corr;
  }
  return trace_b_memo_.emplace(w, std::move(result)).first->second;
}

TracePolynomial RankOneReducer::sort_corrections(std::string w) {
  // tr(M'YXN'B) = tr(M'XYN'B) - tr(M'BN'B); scan for the first YX pair,
  // swap, repeat. The inversion count strictly decreases.
  TracePolynomial corr;
  size_t t;
  while ((t = first_yx(w)) != std::string::npos) {
    corr -= trace_bb(w.substr(0, t), w.substr(t + 2));
    w[t] = 'X';
    w[t + 1] = 'Y';
  }
  return corr;
}

TracePolynomial RankOneReducer::trace_bb(const std::string& m,
                                         const std::string& n) {
  // With A = B + id of rank one, tr(MANA) = tr(MA) tr(NA) expands to
  // tr(MBNB) = tr(MB) tr(NB) + tr(M) tr(NB) + tr(MB) tr(N) + tr(M) tr(N)
  //          - tr(MNB) - tr(NMB) - tr(MN).
  // All arguments have degree deg(m) + deg(n) < the caller's word degree.
  const TracePolynomial& mb = trace_b(m);
  const TracePolynomial& nb = trace_b(n);
  TracePolynomial tm = m.empty() ? TracePolynomial(NPoly::var())
                                 : reduce_linear(m);
  TracePolynomial tn = n.empty() ? TracePolynomial(NPoly::var())
                                 : reduce_linear(n);
  TracePolynomial tmn = (m + n).empty() ? TracePolynomial(NPoly::var())
                                        : reduce_linear(m + n);
  return mb * nb + tm * nb + mb * tn + tm * tn - trace_b(m + n) -
         trace_b(n + m) - tmn;
}

TracePolynomial RankOneReducer::reduce_b(const std::string& m_left,
                                         const std::string& m_right) {
  return trace_b(m_left + m_right);
}

ReducedForm RankOneReducer::reduce(const TracePolynomial& f) {
  TracePolynomial value;
  for (const auto& [p, c] : f.terms()) {
    TracePolynomial prod = TracePolynomial(c);
    for (const auto& w : p.factors()) prod = prod * reduce_word(w);
    value += prod;
  }
  ReducedForm out;
  out.value = value;
  const int d = value.degree();
  for (const auto& [p, c] : value.terms()) {
    if (p.degree() == d)
      out.leading.add_term(p, c);
    else
      out.corrections.add_term(p, c);
  }
  return out;
}

}  // namespace cmtrace
