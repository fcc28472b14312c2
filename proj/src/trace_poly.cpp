#include "cmtrace/trace_poly.hpp"

#include <algorithm>
#include <sstream>

namespace cmtrace {

TraceProduct::TraceProduct(std::vector<TraceWord> factors)
    : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
}

int TraceProduct::degree() const {
  int d = 0;
  for (const auto& w : factors_) d += w.degree();
  return d;
}

std::pair<int, int> TraceProduct::double_degree() const {
  int x = 0, y = 0;
  for (const auto& w : factors_) {
    auto [a, b] = w.double_degree();
    x += a;
    y += b;
  }
  return {x, y};
}

int TraceProduct::weight() const {
  auto [x, y] = double_degree();
  return x - y;
}

bool TraceProduct::all_sorted() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const TraceWord& w) { return w.is_sorted(); });
}

bool TraceProduct::operator<(const TraceProduct& o) const {
  int d = degree(), e = o.degree();
  if (d != e) return d < e;
  if (factors_.size() != o.factors_.size())
    return factors_.size() < o.factors_.size();
  return std::lexicographical_compare(factors_.begin(), factors_.end(),
                                      o.factors_.begin(), o.factors_.end());
}

std::string TraceProduct::str() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << "*";
    os << "tr(" << factors_[i].str() << ")";
  }
  return os.str();
}

TracePolynomial::TracePolynomial(const NPoly& c) {
  if (!c.is_zero()) terms_[TraceProduct()] = c;
}

TracePolynomial TracePolynomial::trace(const TraceWord& w) {
  return term({w}, NPoly(1));
}

TracePolynomial TracePolynomial::term(const std::vector<TraceWord>& factors,
                                      const NPoly& coeff) {
  NPoly c = coeff;
  std::vector<TraceWord> kept;
  for (const auto& w : factors) {
    if (w.empty())
      c *= NPoly::var();  // tr(id) = n
    else
      kept.push_back(w);
  }
  TracePolynomial f;
  f.add_term(TraceProduct(std::move(kept)), c);
  return f;
}

int TracePolynomial::degree() const {
  int d = -1;
  for (const auto& [p, c] : terms_) d = std::max(d, p.degree());
  return d;
}

std::optional<int> TracePolynomial::homogeneous_weight() const {
  std::optional<int> w;
  for (const auto& [p, c] : terms_) {
    int pw = p.weight();
    if (w && *w != pw) return std::nullopt;
    w = pw;
  }
  return w;
}

const NPoly& TracePolynomial::coeff(const TraceProduct& p) const {
  static const NPoly zero;
  auto it = terms_.find(p);
  return it == terms_.end() ? zero : it->second;
}

void TracePolynomial::add_term(const TraceProduct& p, const NPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TracePolynomial& TracePolynomial::operator+=(const TracePolynomial& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

TracePolynomial& TracePolynomial::operator-=(const TracePolynomial& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

TracePolynomial TracePolynomial::operator+(const TracePolynomial& o) const {
  TracePolynomial r = *this;
  r += o;
  return r;
}

TracePolynomial TracePolynomial::operator-(const TracePolynomial& o) const {
  TracePolynomial r = *this;
  r -= o;
  return r;
}

TracePolynomial TracePolynomial::operator-() const {
  TracePolynomial r;
  for (const auto& [p, c] : terms_) r.terms_[p] = -c;
  return r;
}

TracePolynomial TracePolynomial::operator*(const TracePolynomial& o) const {
  TracePolynomial r;
  for (const auto& [p, c] : terms_)
    for (const auto& [q, d] : o.terms_) {
      std::vector<TraceWord> fs = p.factors();
      fs.insert(fs.end(), q.factors().begin(), q.factors().end());
      r.add_term(TraceProduct(std::move(fs)), c * d);
    }
  return r;
}

TracePolynomial TracePolynomial::operator*(const NPoly& c) const {
  TracePolynomial r;
  if (c.is_zero()) return r;
  for (const auto& [p, a] : terms_) r.add_term(p, a * c);
  return r;
}

TracePolynomial TracePolynomial::operator/(const Rational& c) const {
  TracePolynomial r;
  for (const auto& [p, a] : terms_) r.terms_[p] = a / c;
  return r;
}

std::string TracePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending term order; within a term, descending powers of n.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const TraceProduct& prod = it->first;
    const NPoly& np = it->second;
    for (auto mit = np.coeffs().rbegin(); mit != np.coeffs().rend(); ++mit) {
      unsigned k = mit->first;
      Rational c = mit->second;
      bool neg = sgn(c) < 0;
      if (neg) c = -c;
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      std::vector<std::string> parts;
      if (c != 1)
        parts.push_back(c.get_den() == 1 ? to_string(c)
                                         : "(" + to_string(c) + ")");
      if (k == 1) parts.push_back("n");
      if (k > 1) parts.push_back("n^" + std::to_string(k));
      if (!prod.is_constant()) parts.push_back(prod.str());
      if (parts.empty()) parts.push_back(to_string(c));  // the piece is 1
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << "*";
        os << parts[i];
      }
    }
  }
  return os.str();
}

TracePolynomial bracket_words(const TraceWord& v, const TraceWord& w) {
  const std::string& a = v.letters();
  const std::string& b = w.letters();
  auto rest_after = [](const std::string& s, size_t i) {
    return s.substr(i + 1) + s.substr(0, i);
  };
  TracePolynomial out;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      int sign;
      if (a[i] == 'X' && b[j] == 'Y')
        sign = 1;
      else if (a[i] == 'Y' && b[j] == 'X')
        sign = -1;
      else
        continue;
      TraceWord spliced(rest_after(a, i) + rest_after(b, j));
      out += TracePolynomial::term({spliced}, NPoly(sign));
    }
  return out;
}

TracePolynomial bracket(const TracePolynomial& f, const TracePolynomial& g) {
  TracePolynomial out;
  for (const auto& [p, c] : f.terms())
    for (const auto& [q, d] : g.terms()) {
      const auto& pf = p.factors();
      const auto& qf = q.factors();
      for (size_t i = 0; i < pf.size(); ++i)
        for (size_t j = 0; j < qf.size(); ++j) {
          TracePolynomial base = bracket_words(pf[i], qf[j]);
          if (base.is_zero()) continue;
          std::vector<TraceWord> rest;
          rest.reserve(pf.size() + qf.size() - 2);
          for (size_t k = 0; k < pf.size(); ++k)
            if (k != i) rest.push_back(pf[k]);
          for (size_t k = 0; k < qf.size(); ++k)
            if (k != j) rest.push_back(qf[k]);
          NPoly cd = c * d;
          for (const auto& [r, e] : base.terms()) {
            std::vector<TraceWord> fs = rest;
            fs.insert(fs.end(), r.factors().begin(), r.factors().end());
            out.add_term(TraceProduct(std::move(fs)), cd * e);
          }
        }
    }
  return out;
}

}  // namespace cmtrace
