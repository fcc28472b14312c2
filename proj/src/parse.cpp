#include "cmtrace/parse.hpp"

#include <cctype>

namespace cmtrace {
namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  TracePolynomial run() {
    TracePolynomial f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  TracePolynomial expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    TracePolynomial acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  TracePolynomial term() {
    TracePolynomial acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  TracePolynomial factor() {
    TracePolynomial base = primary();
    if (eat('^')) {
      long k = integer();
      if (k < 0) fail("negative exponent");
      TracePolynomial acc = TracePolynomial(NPoly(1));
      for (long i = 0; i < k; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  TracePolynomial primary() {
    char c = peek();
    if (c == '(') {
      eat('(');
      TracePolynomial f = expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = integer();
      if (eat('/')) {
        long den = integer();
        if (den == 0) fail("zero denominator");
        return TracePolynomial(NPoly(rat(num, den)));
      }
      return TracePolynomial(NPoly(rat(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return symbol();
    fail("expected expression");
  }

  TracePolynomial symbol() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           std::isalpha(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "n") return TracePolynomial(NPoly::var());
    if (name == "tr") {
      if (!eat('(')) fail("expected '(' after tr");
      std::string w = trace_word();
      if (!eat(')')) fail("expected ')'");
      return TracePolynomial::trace(TraceWord(w));
    }
    if (name == "a") return TracePolynomial::trace(word_xy(1, 0));
    if (name == "b") return TracePolynomial::trace(word_xy(0, 1));
    if (name == "c")
      return TracePolynomial::term({word_xy(2, 0)}, NPoly(rat(1, 2)));
    if (name == "d")
      return TracePolynomial::term({word_xy(0, 2)}, NPoly(rat(1, 2)));
    if (name == "e") return TracePolynomial::trace(word_xy(1, 1));
    pos_ = start;
    fail("unknown symbol '" + name + "'");
  }

  std::string trace_word() {
    std::string w;
    for (;;) {
      char c = peek();
      if (c != 'X' && c != 'Y') fail("expected X or Y in trace word");
      ++pos_;
      long k = 1;
      if (eat('^')) {
        k = integer();
        if (k < 0) fail("negative exponent");
      }
      w.append(static_cast<size_t>(k), c);
      if (!eat('*')) return w;
    }
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

TracePolynomial parse_trace_poly(const std::string& text) {
  return Parser(text).run();
}

NPoly parse_npoly(const std::string& text) {
  TracePolynomial p = Parser(text).run();
  if (p.is_zero()) return NPoly();
  if (p.terms().size() != 1 || !p.terms().begin()->first.is_constant())
    throw ParseError("expected a coefficient in n only", 0);
  return p.terms().begin()->second;
}

}  // namespace cmtrace
