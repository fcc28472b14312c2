#pragma once

#include <stdexcept>
#include <string>

#include "cmtrace/npoly.hpp"

namespace cmtrace {

/// Fraction field of the univariate polynomials in n. Normalized so the
/// denominator is monic and coprime to the numerator; zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(NPoly(1)) {}
  /*implicit*/ RatFunc(const NPoly& p) : num_(p), den_(NPoly(1)) {}
  /*implicit*/ RatFunc(const Rational& c) : num_(NPoly(c)), den_(NPoly(1)) {}
  RatFunc(NPoly num, NPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  const NPoly& num() const { return num_; }
  const NPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  RatFunc operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
  }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  Rational eval(const Rational& n) const {
    Rational d = den_.eval(n);
    if (sgn(d) == 0) throw std::domain_error("RatFunc: pole at n=" + to_string(n));
    return num_.eval(n) / d;
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = NPoly(1);
      return;
    }
    NPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
    Rational lc = den_.leading_coeff();
    num_ = num_ / lc;
    den_ = den_ / lc;
  }

  NPoly num_, den_;
};

}  // namespace cmtrace
