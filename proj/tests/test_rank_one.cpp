#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cmtrace/numerics.hpp"
#include "cmtrace/parse.hpp"
#include "cmtrace/rank_one.hpp"

using namespace cmtrace;

namespace {

TracePolynomial P(const std::string& s) { return parse_trace_poly(s); }

// Max relative error of evaluate(f) vs evaluate(g) over random certified
// Wilson points.
double numeric_mismatch(const TracePolynomial& f, const TracePolynomial& g,
                        int points_per_n, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < points_per_n; ++i) {
      MatrixPair p = random_wilson_point(n, rng);
      REQUIRE(p.certified_rank_one);
      Complex a = evaluate(f, p), b = evaluate(g, p);
      double scale = std::max({1.0, std::abs(a), std::abs(b)});
      worst = std::max(worst, std::abs(a - b) / scale);
    }
  return worst;
}

std::string random_word(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> len(1, max_deg);
  std::uniform_int_distribution<int> coin(0, 1);
  int L = len(rng);
  std::string w;
  for (int i = 0; i < L; ++i) w += coin(rng) ? 'Y' : 'X';
  return w;
}

}  // namespace

TEST_CASE("base cases: tr(X^k B) = 0 and tr(Y^l B) = 0") {
  RankOneReducer red;
  for (int k = 0; k <= 5; ++k) {
    CHECK(red.reduce_b(std::string(k, 'X'), "").is_zero());
    CHECK(red.reduce_b(std::string(k, 'Y'), "").is_zero());
  }
}

TEST_CASE("tr(XY B) = n(n-1)/2") {
  RankOneReducer red;
  CHECK(red.reduce_b("X", "Y") == P("(1/2)*n^2 - (1/2)*n"));
}

TEST_CASE("tr(B^2) = n(n-1) via the expansion 2tr(XYXY) - 2tr(X^2Y^2)") {
  RankOneReducer red;
  TracePolynomial b2 = P("2*tr(X*Y*X*Y) - 2*tr(X^2*Y^2)");
  CHECK(red.reduce(b2).value == P("n^2 - n"));
}

TEST_CASE("reduce fixtures") {
  RankOneReducer red;
  CHECK(red.reduce(P("tr(X^3)")).value == P("tr(X^3)"));
  CHECK(red.reduce(P("tr(X*Y*X*Y)")).value ==
        P("tr(X^2*Y^2) + (1/2)*n^2 - (1/2)*n"));
}

TEST_CASE("is_normal") {
  CHECK(RankOneReducer::is_normal(P("tr(X^2*Y)")));
  CHECK(!RankOneReducer::is_normal(P("tr(X*Y*X*Y)")));
  CHECK(RankOneReducer::is_normal(TracePolynomial()));
  CHECK(RankOneReducer::is_normal(P("tr(X^2*Y)*tr(X)*tr(Y^3) + n*tr(X)")));
}

TEST_CASE("tr(X^2 Y^2 B) agrees with the numeric oracle") {
  RankOneReducer red;
  TracePolynomial sym = red.reduce_b("XX", "YY");
  // Oracle: tr(X^2 Y^2 [X,Y]) expanded in plain traces, evaluated numerically.
  TracePolynomial raw = P("tr(X^2*Y^2*X*Y) - tr(X^2*Y^2*Y*X)");
  std::mt19937_64 rng(21);
  CHECK(numeric_mismatch(sym, raw, 20, rng) < 1e-8);
}

TEST_CASE("soundness: reduce agrees with the input on the rank-one locus") {
  RankOneReducer red;
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    TracePolynomial f = TracePolynomial::trace(TraceWord(random_word(rng, 8)));
    ReducedForm r = red.reduce(f);
    CHECK(RankOneReducer::is_normal(r.value));
    CHECK(numeric_mismatch(f, r.value, 5, rng) < 1e-8);
  }
}

TEST_CASE("degree drop and weight preservation") {
  RankOneReducer red;
  std::mt19937_64 rng(29);
  for (int i = 0; i < 60; ++i) {
    TraceWord w(random_word(rng, 8));
    auto [dx, dy] = w.double_degree();
    ReducedForm r = red.reduce(TracePolynomial::trace(w));
    for (const auto& [p, c] : r.corrections.terms())
      CHECK(p.degree() <= dx + dy - 4);
    for (const auto& [p, c] : r.value.terms())
      CHECK(p.weight() == dx - dy);
    // B-traces drop total degree by at least 2.
    if (w.degree() >= 2) {
      TracePolynomial tb = red.reduce_b(w.letters(), "");
      CHECK(tb.degree() <= w.degree() - 2);
    }
  }
}

TEST_CASE("idempotence") {
  RankOneReducer red;
  std::mt19937_64 rng(31);
  for (int i = 0; i < 25; ++i) {
    TracePolynomial f = TracePolynomial::trace(TraceWord(random_word(rng, 7)));
    TracePolynomial once = red.reduce(f).value;
    CHECK(red.reduce(once).value == once);
  }
}

TEST_CASE("rank-one factorization identity tr(MCNC) = tr(MC) tr(NC)") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::VectorXcd v(n), w(n);
      for (int i = 0; i < n; ++i) {
        v(i) = Complex(unit(rng), unit(rng));
        w(i) = Complex(unit(rng), unit(rng));
      }
      Matrix C = v * w.transpose();
      MatrixPair mn = random_dense_pair(n, rng);
      Complex lhs = (mn.X * C * mn.Y * C).trace();
      Complex rhs = (mn.X * C).trace() * (mn.Y * C).trace();
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}
