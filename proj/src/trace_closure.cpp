#include "cmtrace/trace_closure.hpp"

#include <functional>

namespace cmtrace {

TraceCtx::TraceCtx(ReductionMode mode)
    : mode_(mode),
      reducer_(std::make_shared<RankOneReducer>()),
      cache_(std::make_shared<std::map<std::pair<Key, Key>, PairResult>>()) {}

TraceCtx::Elem TraceCtx::to_elem(const TracePolynomial& f) const {
  TracePolynomial g =
      mode_ == ReductionMode::rank_one ? reducer_->reduce(f).value : f;
  Elem out;
  for (const auto& [p, c] : g.terms()) out.emplace(p, RatFunc(c));
  return out;
}

const TraceCtx::PairResult& TraceCtx::mono_bracket(const Key& p,
                                                   const Key& q) const {
  auto key = std::make_pair(p, q);
  auto it = cache_->find(key);
  if (it != cache_->end()) return it->second;
  TracePolynomial b =
      cmtrace::bracket(TracePolynomial::term(p.factors(), NPoly(1)),
                       TracePolynomial::term(q.factors(), NPoly(1)));
  if (mode_ == ReductionMode::rank_one) b = reducer_->reduce(b).value;
  PairResult r;
  for (const auto& [m, c] : b.terms()) r.emplace_back(m, c);
  return cache_->emplace(std::move(key), std::move(r)).first->second;
}

TraceCtx::Elem TraceCtx::bracket(const Elem& a, const Elem& b) const {
  Elem out;
  for (const auto& [p, cp] : a)
    for (const auto& [q, cq] : b) {
      if (p.is_constant() || q.is_constant()) continue;
      RatFunc c = cp * cq;
      for (const auto& [m, mc] : mono_bracket(p, q)) {
        RatFunc nv = c * RatFunc(mc);
        auto it = out.find(m);
        if (it == out.end()) {
          if (!nv.is_zero()) out.emplace(m, std::move(nv));
        } else {
          it->second += nv;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  return out;
}

TracePolynomial elem_to_poly_cleared(const TraceCtx::Elem& v) {
  NPoly den(1);
  for (const auto& [k, c] : v) {
    NPoly g = gcd(den, c.den());
    den = den * *c.den().divide_exact(g);
  }
  TracePolynomial out;
  for (const auto& [k, c] : v)
    out.add_term(k, c.num() * *den.divide_exact(c.den()));
  return out;
}

std::vector<TracePolynomial> generators_f() {
  auto tr = [](const std::string& w) {
    return TracePolynomial::trace(TraceWord(w));
  };
  return {tr("Y"), tr("YY"), tr("XXX"), tr("X") * tr("X")};
}

std::vector<TracePolynomial> generators_d(int budget) {
  std::vector<TracePolynomial> out;
  for (int i = 1; i <= budget; ++i) {
    out.push_back(TracePolynomial::trace(TraceWord(std::string(i, 'X'))));
    out.push_back(TracePolynomial::trace(TraceWord(std::string(i, 'Y'))));
  }
  for (int i = 1; 2 * i <= budget; ++i) {
    TracePolynomial px = TracePolynomial::trace(TraceWord(std::string(i, 'X')));
    TracePolynomial py = TracePolynomial::trace(TraceWord(std::string(i, 'Y')));
    out.push_back(px * px);
    out.push_back(py * py);
  }
  return out;
}

std::vector<TracePolynomial> sorted_products_up_to(int budget) {
  std::vector<TraceWord> words;
  for (int d = 1; d <= budget; ++d)
    for (int p = 0; p <= d; ++p) words.push_back(word_xy(p, d - p));
  std::vector<TracePolynomial> out;
  std::vector<TraceWord> current;
  std::function<void(size_t, int)> rec = [&](size_t start, int left) {
    if (!current.empty())
      out.push_back(TracePolynomial::term(current, NPoly(1)));
    for (size_t i = start; i < words.size(); ++i) {
      if (words[i].degree() > left) continue;
      current.push_back(words[i]);
      rec(i, left - words[i].degree());
      current.pop_back();
    }
  };
  rec(0, budget);
  return out;
}

std::vector<TracePolynomial> alphabet_monomials_up_to(int budget) {
  const TracePolynomial a = TracePolynomial::trace(TraceWord("X"));
  const TracePolynomial b = TracePolynomial::trace(TraceWord("Y"));
  const TracePolynomial c =
      TracePolynomial::trace(TraceWord("XX")) / rat(2);
  const TracePolynomial d =
      TracePolynomial::trace(TraceWord("YY")) / rat(2);
  const TracePolynomial e = TracePolynomial::trace(TraceWord("XY"));
  std::vector<TracePolynomial> out;
  for (int i = 0; i <= budget; ++i)
    for (int j = 0; i + j <= budget; ++j)
      for (int k = 0; i + j + 2 * k <= budget; ++k)
        for (int l = 0; i + j + 2 * k + 2 * l <= budget; ++l)
          for (int p = 0; i + j + 2 * (k + l + p) <= budget; ++p) {
            if (i + j + k + l + p == 0) continue;
            TracePolynomial m(NPoly(1));
            for (int t = 0; t < i; ++t) m = m * a;
            for (int t = 0; t < j; ++t) m = m * b;
            for (int t = 0; t < k; ++t) m = m * c;
            for (int t = 0; t < l; ++t) m = m * d;
            for (int t = 0; t < p; ++t) m = m * e;
            out.push_back(m);
          }
  return out;
}

std::vector<TracePolynomial> e_powers_up_to(int pmax) {
  const TracePolynomial e = TracePolynomial::trace(TraceWord("XY"));
  std::vector<TracePolynomial> out;
  TracePolynomial m(NPoly(1));
  for (int p = 1; p <= pmax; ++p) {
    m = m * e;
    out.push_back(m);
  }
  return out;
}

}  // namespace cmtrace
