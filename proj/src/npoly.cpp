#include "cmtrace/npoly.hpp"

#include <sstream>
#include <stdexcept>

namespace cmtrace {

NPoly::NPoly(const Rational& c) {
  if (sgn(c) != 0) coeffs_[0] = c;
}

NPoly NPoly::var() {
  NPoly p;
  p.coeffs_[1] = rat(1);
  return p;
}

NPoly NPoly::monomial(unsigned k, const Rational& c) {
  NPoly p;
  if (sgn(c) != 0) p.coeffs_[k] = c;
  return p;
}

bool NPoly::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

int NPoly::degree() const {
  return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first);
}

const Rational& NPoly::coeff(unsigned k) const {
  static const Rational zero = rat(0);
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? zero : it->second;
}

void NPoly::trim(unsigned k) {
  auto it = coeffs_.find(k);
  if (it != coeffs_.end() && sgn(it->second) == 0) coeffs_.erase(it);
}

NPoly& NPoly::operator+=(const NPoly& o) {
  for (const auto& [k, c] : o.coeffs_) {
    coeffs_[k] += c;
    trim(k);
  }
  return *this;
}

NPoly& NPoly::operator-=(const NPoly& o) {
  for (const auto& [k, c] : o.coeffs_) {
    coeffs_[k] -= c;
    trim(k);
  }
  return *this;
}

NPoly NPoly::operator+(const NPoly& o) const {
  NPoly r = *this;
  r += o;
  return r;
}

NPoly NPoly::operator-(const NPoly& o) const {
  NPoly r = *this;
  r -= o;
  return r;
}

NPoly NPoly::operator-() const {
  NPoly r;
  for (const auto& [k, c] : coeffs_) r.coeffs_[k] = -c;
  return r;
}

NPoly NPoly::operator*(const NPoly& o) const {
  NPoly r;
  for (const auto& [k1, c1] : coeffs_)
    for (const auto& [k2, c2] : o.coeffs_) {
      r.coeffs_[k1 + k2] += c1 * c2;
      r.trim(k1 + k2);
    }
  return r;
}

NPoly& NPoly::operator*=(const NPoly& o) { return *this = *this * o; }

NPoly NPoly::operator*(const Rational& c) const {
  NPoly r;
  if (sgn(c) == 0) return r;
  for (const auto& [k, a] : coeffs_) r.coeffs_[k] = a * c;
  return r;
}

NPoly NPoly::operator/(const Rational& c) const {
  if (sgn(c) == 0) throw std::domain_error("NPoly: division by zero scalar");
  NPoly r;
  for (const auto& [k, a] : coeffs_) r.coeffs_[k] = a / c;
  return r;
}

void NPoly::divmod(const NPoly& d, NPoly& q, NPoly& r) const {
  if (d.is_zero()) throw std::domain_error("NPoly: division by zero");
  q = NPoly();
  r = *this;
  const int dd = d.degree();
  const Rational lead = d.coeffs_.rbegin()->second;
  while (!r.is_zero() && r.degree() >= dd) {
    unsigned k = static_cast<unsigned>(r.degree() - dd);
    Rational c = r.coeffs_.rbegin()->second / lead;
    NPoly t = NPoly::monomial(k, c);
    q += t;
    r -= t * d;
  }
}

std::optional<NPoly> NPoly::divide_exact(const NPoly& d) const {
  NPoly q, r;
  divmod(d, q, r);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Rational NPoly::eval(const Rational& n) const {
  Rational acc = rat(0);
  int prev = degree();
  // Horner over the sparse representation.
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    for (int i = prev; i > static_cast<int>(it->first); --i) acc *= n;
    acc += it->second;
    prev = static_cast<int>(it->first);
  }
  for (int i = prev; i > 0; --i) acc *= n;
  return acc;
}

std::complex<double> NPoly::eval(const std::complex<double>& n) const {
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : coeffs_) {
    std::complex<double> p = 1.0;
    for (unsigned i = 0; i < k; ++i) p *= n;
    acc += to_double(c) * p;
  }
  return acc;
}

Rational NPoly::leading_coeff() const {
  return coeffs_.empty() ? rat(0) : coeffs_.rbegin()->second;
}

Rational NPoly::content() const {
  if (coeffs_.empty()) return rat(0);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [k, c] : coeffs_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational g(num_gcd, den_lcm);
  g.canonicalize();
  if (sgn(leading_coeff()) < 0) g = -g;
  return g;
}

std::string NPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
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
    unsigned k = it->first;
    if (k == 0) {
      os << to_string(c);
    } else {
      if (c != 1) os << to_string(c) << "*";
      os << "n";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

NPoly gcd(const NPoly& a, const NPoly& b) {
  NPoly x = a, y = b;
  while (!y.is_zero()) {
    NPoly q, r;
    x.divmod(y, q, r);
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x / x.leading_coeff();
}

}  // namespace cmtrace
