#include "cmtrace/cert_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cmtrace/parse.hpp"

namespace cmtrace {

namespace {

void print_cert(std::ostream& os, const CertPtr& c) {
  switch (c->kind) {
    case Cert::Kind::leaf:
      os << "(g " << c->leaf << ")";
      break;
    case Cert::Kind::bracket:
      os << "(b ";
      print_cert(os, c->left);
      os << " ";
      print_cert(os, c->right);
      os << ")";
      break;
    case Cert::Kind::lincomb:
      os << "(l";
      for (const auto& [coeff, part] : c->parts) {
        os << " ({" << coeff.num().str() << "} {" << coeff.den().str() << "} ";
        print_cert(os, part);
        os << ")";
      }
      os << ")";
      break;
  }
}

class CertParser {
 public:
  explicit CertParser(const std::string& src) : src_(src) {}

  CertPtr parse() {
    CertPtr c = node();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("certificate parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  NPoly braced_npoly() {
    expect('{');
    size_t end = src_.find('}', pos_);
    if (end == std::string::npos) fail("unterminated coefficient");
    std::string text = src_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return parse_npoly(text);
  }

  CertPtr node() {
    expect('(');
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end");
    char tag = src_[pos_++];
    CertPtr out;
    if (tag == 'g') {
      skip_ws();
      size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      if (pos_ == start) fail("expected generator index");
      out = Cert::make_leaf(std::stoi(src_.substr(start, pos_ - start)));
    } else if (tag == 'b') {
      CertPtr l = node();
      CertPtr r = node();
      out = Cert::make_bracket(std::move(l), std::move(r));
    } else if (tag == 'l') {
      std::vector<std::pair<RatFunc, CertPtr>> parts;
      for (;;) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == ')') break;
        expect('(');
        NPoly num = braced_npoly();
        NPoly den = braced_npoly();
        CertPtr part = node();
        expect(')');
        parts.emplace_back(RatFunc(num, den), std::move(part));
      }
      auto c = std::make_shared<Cert>();
      c->kind = Cert::Kind::lincomb;
      c->parts = std::move(parts);
      out = c;
    } else {
      fail("unknown node tag");
    }
    expect(')');
    return out;
  }

  const std::string& src_;
  size_t pos_ = 0;
};

}  // namespace

std::string cert_to_string(const CertPtr& cert) {
  std::ostringstream os;
  print_cert(os, cert);
  return os.str();
}

CertPtr cert_from_string(const std::string& src) {
  return CertParser(src).parse();
}

CertBundle read_cert_bundle(std::istream& in) {
  CertBundle bundle;
  std::string line;
  bool have_cert = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "mode") {
      std::string m;
      ls >> m;
      if (m == "ambient")
        bundle.mode = ReductionMode::ambient;
      else if (m == "rank-one")
        bundle.mode = ReductionMode::rank_one;
      else
        throw std::invalid_argument("unknown mode: " + m);
    } else if (word == "gen") {
      size_t idx;
      std::string assign, rest;
      ls >> idx >> assign;
      if (assign != ":=") throw std::invalid_argument("expected ':=' after gen");
      std::getline(ls, rest);
      if (idx != bundle.generators.size())
        throw std::invalid_argument("generators must be numbered in order");
      bundle.generators.push_back(parse_trace_poly(rest));
    } else if (word == "target") {
      std::string assign, rest;
      ls >> assign;
      if (assign != ":=")
        throw std::invalid_argument("expected ':=' after target");
      std::getline(ls, rest);
      bundle.target = parse_trace_poly(rest);
    } else if (word == "cert") {
      std::string rest;
      std::getline(ls, rest);
      bundle.cert = cert_from_string(rest);
      have_cert = true;
    } else {
      throw std::invalid_argument("unknown declaration: " + word);
    }
  }
  if (!have_cert) throw std::invalid_argument("missing cert declaration");
  return bundle;
}

void write_cert_bundle(std::ostream& out, const CertBundle& bundle) {
  out << "mode "
      << (bundle.mode == ReductionMode::ambient ? "ambient" : "rank-one")
      << "\n";
  for (size_t i = 0; i < bundle.generators.size(); ++i)
    out << "gen " << i << " := " << bundle.generators[i].str() << "\n";
  if (bundle.target) out << "target := " << bundle.target->str() << "\n";
  out << "cert " << cert_to_string(bundle.cert) << "\n";
}

TraceCtx::Elem replay_bundle(const CertBundle& bundle) {
  TraceCtx ctx(bundle.mode);
  TraceClosure eng(ctx, 0, 0);
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : bundle.generators) gens.push_back(ctx.to_elem(g));
  return eng.replay(bundle.cert, gens);
}

}  // namespace cmtrace
