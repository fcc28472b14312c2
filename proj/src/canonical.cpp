#include "cmtrace/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cmtrace {

int CanonicalMono::degree() const {
  return std::accumulate(ex.begin(), ex.end(), 0) +
         std::accumulate(ey.begin(), ey.end(), 0);
}

bool CanonicalMono::operator<(const CanonicalMono& o) const {
  int d = degree(), od = o.degree();
  if (d != od) return d < od;
  if (ex != o.ex) return ex < o.ex;
  return ey < o.ey;
}

std::string CanonicalMono::str() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](char axis, const std::vector<unsigned>& e) {
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first) os << "*";
      first = false;
      os << axis << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  };
  emit('x', ex);
  emit('y', ey);
  return first ? "1" : os.str();
}

CanonicalPoly CanonicalPoly::constant(int n, const Rational& c) {
  CanonicalPoly p(n);
  CanonicalMono m{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
  p.add_term(m, c);
  return p;
}

CanonicalPoly CanonicalPoly::variable(int n, char axis, int k) {
  if (k < 1 || k > n) throw std::out_of_range("variable index");
  CanonicalPoly p(n);
  CanonicalMono m{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
  (axis == 'x' ? m.ex : m.ey)[k - 1] = 1;
  p.add_term(m, rat(1));
  return p;
}

int CanonicalPoly::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

void CanonicalPoly::add_term(const CanonicalMono& m, const Rational& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (sgn(c) != 0) terms_.emplace(m, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void CanonicalPoly::check_same_n(const CanonicalPoly& o) const {
  if (n_ != o.n_)
    throw std::invalid_argument("canonical polynomials of different n");
}

CanonicalPoly CanonicalPoly::operator+(const CanonicalPoly& o) const {
  check_same_n(o);
  CanonicalPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

CanonicalPoly& CanonicalPoly::operator+=(const CanonicalPoly& o) {
  return *this = *this + o;
}

CanonicalPoly CanonicalPoly::operator-(const CanonicalPoly& o) const {
  check_same_n(o);
  CanonicalPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

CanonicalPoly CanonicalPoly::operator-() const {
  CanonicalPoly r(n_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

CanonicalPoly CanonicalPoly::operator*(const CanonicalPoly& o) const {
  check_same_n(o);
  CanonicalPoly r(n_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      CanonicalMono m = m1;
      for (int i = 0; i < n_; ++i) {
        m.ex[i] += m2.ex[i];
        m.ey[i] += m2.ey[i];
      }
      r.add_term(m, c1 * c2);
    }
  return r;
}

CanonicalPoly CanonicalPoly::operator*(const Rational& c) const {
  CanonicalPoly r(n_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
  return r;
}

CanonicalPoly CanonicalPoly::derivative(char axis, int k) const {
  if (k < 1 || k > n_) throw std::out_of_range("derivative index");
  CanonicalPoly r(n_);
  for (const auto& [m, c] : terms_) {
    const auto& e = (axis == 'x' ? m.ex : m.ey);
    if (e[k - 1] == 0) continue;
    CanonicalMono dm = m;
    auto& de = (axis == 'x' ? dm.ex : dm.ey);
    unsigned p = de[k - 1]--;
    r.add_term(dm, c * rat(static_cast<long>(p)));
  }
  return r;
}

CanonicalPoly CanonicalPoly::modulo_constants() const {
  CanonicalPoly r = *this;
  if (!r.terms_.empty() && r.terms_.begin()->first.is_constant())
    r.terms_.erase(r.terms_.begin());
  return r;
}

std::string CanonicalPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->second;
    if (first) {
      if (sgn(c) < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    std::string mono = it->first.str();
    if (mono == "1") {
      os << to_string(c);
    } else {
      if (c != 1) os << to_string(c) << "*";
      os << mono;
    }
  }
  return os.str();
}

CanonicalPoly canonical_bracket(const CanonicalPoly& f,
                                const CanonicalPoly& g) {
  if (f.n() != g.n())
    throw std::invalid_argument("canonical polynomials of different n");
  CanonicalPoly r(f.n());
  for (int k = 1; k <= f.n(); ++k) {
    r += f.derivative('x', k) * g.derivative('y', k);
    r += -(f.derivative('y', k) * g.derivative('x', k));
  }
  return r;
}

namespace {

// Minimal recursive-descent parser sharing the trace-expression grammar:
// +, -, *, ^, rationals, parentheses, variables x1..xn / y1..yn.
class CanonicalParser {
 public:
  CanonicalParser(const std::string& src, int n) : src_(src), n_(n) {}

  CanonicalPoly parse() {
    CanonicalPoly p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  CanonicalPoly expr() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else eat('+');
    CanonicalPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  CanonicalPoly term() {
    CanonicalPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  CanonicalPoly factor() {
    CanonicalPoly base = primary();
    if (eat('^')) {
      long e = integer();
      if (e < 0) fail("negative exponent");
      CanonicalPoly out = CanonicalPoly::constant(n_, rat(1));
      for (long i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stol(src_.substr(start, pos_ - start));
  }

  CanonicalPoly primary() {
    char c = peek();
    if (c == '(') {
      eat('(');
      CanonicalPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      long k = integer();
      if (k < 1 || k > n_) fail("variable index out of range");
      return CanonicalPoly::variable(n_, c, static_cast<int>(k));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = integer();
      if (eat('/')) {
        long den = integer();
        if (den == 0) fail("zero denominator");
        return CanonicalPoly::constant(n_, rat(num) / rat(den));
      }
      return CanonicalPoly::constant(n_, rat(num));
    }
    fail("expected term");
  }

  const std::string& src_;
  size_t pos_ = 0;
  int n_;
};

}  // namespace

CanonicalPoly parse_canonical_poly(const std::string& src, int n) {
  return CanonicalParser(src, n).parse();
}

std::vector<CanonicalPoly> shear_generators(int n, int degree_cap) {
  std::vector<CanonicalPoly> out;
  // Powers start at p = 0: the translations -x_k, y_k are shears too, and
  // without them no degree-1 monomial is reachable. A cap below 2 still
  // yields the full family of degree <= 2.
  int max_power = std::max(1, degree_cap - 1);  // p with deg H = p+1 <= cap
  for (int k = 1; k <= n; ++k) {
    CanonicalPoly xk = CanonicalPoly::variable(n, 'x', k);
    CanonicalPoly yk = CanonicalPoly::variable(n, 'y', k);
    CanonicalPoly xp = CanonicalPoly::constant(n, rat(1));
    CanonicalPoly yp = CanonicalPoly::constant(n, rat(1));
    for (int p = 0; p <= max_power; ++p) {
      xp = xp * xk;  // x_k^{p+1}
      yp = yp * yk;
      out.push_back(-xp * (rat(1) / rat(p + 1)));
      out.push_back(yp * (rat(1) / rat(p + 1)));
    }
  }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      out.push_back(-(CanonicalPoly::variable(n, 'x', j) *
                      CanonicalPoly::variable(n, 'x', k)));
      out.push_back(CanonicalPoly::variable(n, 'y', j) *
                    CanonicalPoly::variable(n, 'y', k));
    }
  return out;
}

CanonicalCtx::Elem CanonicalCtx::bracket(const Elem& a, const Elem& b) const {
  CanonicalPoly fa(n_), fb(n_);
  Elem out;
  // Bilinear over monomials; coefficients stay in the scalar field.
  for (const auto& [m1, c1] : a)
    for (const auto& [m2, c2] : b) {
      CanonicalPoly p1(n_), p2(n_);
      p1.add_term(m1, rat(1));
      p2.add_term(m2, rat(1));
      CanonicalPoly br = canonical_bracket(p1, p2).modulo_constants();
      RatFunc c = c1 * c2;
      for (const auto& [m, mc] : br.terms()) {
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

CanonicalCtx::Elem CanonicalCtx::to_elem(const CanonicalPoly& f) const {
  Elem out;
  CanonicalPoly g = f.modulo_constants();
  for (const auto& [m, c] : g.terms()) out.emplace(m, RatFunc(c));
  return out;
}

CoverageReport monomial_coverage(int n, int degree_budget, int slack) {
  CanonicalCtx ctx(n);
  CanonicalClosure eng(ctx, degree_budget, slack);
  for (const auto& g : shear_generators(n, degree_budget))
    eng.add_generator(ctx.to_elem(g));

  std::vector<CanonicalMono> monos;
  std::vector<unsigned> e(2 * n, 0);
  // All exponent vectors with total degree in [1, budget].
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == 2 * n) {
      CanonicalMono m{std::vector<unsigned>(e.begin(), e.begin() + n),
                      std::vector<unsigned>(e.begin() + n, e.end())};
      if (m.degree() >= 1) monos.push_back(m);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[idx] = d;
      rec(idx + 1, left - d);
    }
    e[idx] = 0;
  };
  rec(0, degree_budget);
  std::sort(monos.begin(), monos.end());

  std::vector<CanonicalCtx::Elem> targets;
  for (const auto& m : monos) {
    CanonicalCtx::Elem t;
    t.emplace(m, RatFunc(rat(1)));
    targets.push_back(std::move(t));
  }
  eng.close(&targets);

  CoverageReport rep;
  rep.n = n;
  rep.budget = degree_budget;
  for (size_t i = 0; i < monos.size(); ++i) {
    bool member = eng.is_member(targets[i]);
    rep.verdicts.emplace_back(monos[i], member);
    if (!member) ++rep.missing;
  }
  rep.stats = eng.stats();
  rep.basis_by_degree = eng.basis_size_by_degree();
  return rep;
}

}  // namespace cmtrace
