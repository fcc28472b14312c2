#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cmtrace/numerics.hpp"
#include "cmtrace/parse.hpp"

using namespace cmtrace;

namespace {

TracePolynomial P(const std::string& s) { return parse_trace_poly(s); }

TracePolynomial random_poly(std::mt19937_64& rng, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> len(1, max_deg);
  TracePolynomial f;
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    int L = len(rng);
    std::string w;
    for (int k = 0; k < L; ++k) w += coin(rng) ? 'Y' : 'X';
    int c = coeff(rng);
    if (c == 0) c = 1;
    f += TracePolynomial::term({TraceWord(w)}, NPoly(c));
  }
  return f;
}

}  // namespace

TEST_CASE("wilson point fixtures") {
  MatrixPair p1 = wilson_point({Complex(2.0, 0.0)}, {Complex(0.5, 0.0)});
  CHECK(p1.n == 1);
  CHECK(std::abs(p1.X(0, 0) - 2.0) < 1e-15);
  CHECK(p1.certified_rank_one);  // n=1: [X,Y]+id = id is rank one

  MatrixPair p2 = wilson_point({Complex(0, 0), Complex(1, 0)},
                               {Complex(0, 0), Complex(0, 0)});
  CHECK(std::abs(p2.Y(0, 1) - Complex(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(p2.Y(1, 0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(p2.certified_rank_one);
  CHECK(rank_one_residual(p2) < 1e-10);

  CHECK_THROWS_AS(wilson_point({Complex(0, 0), Complex(0.1, 0)},
                               {Complex(0, 0), Complex(0, 0)}),
                  std::invalid_argument);
}

TEST_CASE("random wilson points certify across sizes") {
  std::mt19937_64 rng(41);
  for (int n = 2; n <= 6; ++n)
    for (int i = 0; i < 10; ++i) {
      MatrixPair p = random_wilson_point(n, rng);
      CHECK(p.certified_rank_one);
      CHECK(rank_one_residual(p) < 1e-10);
      // Dense pairs should be nowhere near the locus.
      CHECK(rank_one_residual(random_dense_pair(n, rng)) > 1e-4);
    }
}

TEST_CASE("evaluate fixtures") {
  std::mt19937_64 rng(43);
  MatrixPair p = random_dense_pair(3, rng);
  CHECK(std::abs(evaluate(P("n"), p) - 3.0) < 1e-14);
  CHECK(std::abs(evaluate(P("tr(X)"), p) - p.X.trace()) < 1e-14);
  Complex xy = (p.X * p.Y).trace();
  CHECK(std::abs(evaluate(P("tr(X*Y)"), p) - xy) < 1e-13);
  CHECK(std::abs(evaluate(P("tr(X)*tr(Y) + 2"), p) -
                 (p.X.trace() * p.Y.trace() + 2.0)) < 1e-13);
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 8; ++rep) {
    int n = 2 + rep % 3;
    MatrixPair p = random_dense_pair(n, rng);
    TracePolynomial f = random_poly(rng, 5, 3);
    TangentPair g = gradient(f, p);
    const double h = 1e-6;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        MatrixPair pp = p, pm = p;
        pp.X(j, k) += h;
        pm.X(j, k) -= h;
        Complex fd = (evaluate(f, pp) - evaluate(f, pm)) / (2 * h);
        CHECK(std::abs(g.U(j, k) - fd) < 1e-6);
        pp = p;
        pm = p;
        pp.Y(j, k) += h;
        pm.Y(j, k) -= h;
        fd = (evaluate(f, pp) - evaluate(f, pm)) / (2 * h);
        CHECK(std::abs(g.V(j, k) - fd) < 1e-6);
      }
  }
}

TEST_CASE("hamiltonian field fixtures") {
  std::mt19937_64 rng(53);
  MatrixPair p = random_dense_pair(3, rng);

  // H = tr(XY): field (X, -Y), the generator of (e^t X, e^{-t} Y).
  TangentPair f = hamiltonian_field(P("tr(X*Y)"), p);
  CHECK((f.U - p.X).norm() < 1e-12);
  CHECK((f.V + p.Y).norm() < 1e-12);

  // H = tr(X^k) pushes Y by k X^{k-1}.
  TangentPair g = hamiltonian_field(P("tr(X^3)"), p);
  CHECK(g.U.norm() < 1e-12);
  CHECK((g.V - Matrix(-3.0 * p.X * p.X)).norm() < 1e-12);

  // H = tr(Y^2) pushes X by 2Y.
  TangentPair h = hamiltonian_field(P("tr(Y^2)"), p);
  CHECK((h.U - 2.0 * p.Y).norm() < 1e-12);
  CHECK(h.V.norm() < 1e-12);
}

TEST_CASE("numeric bracket agrees with the symbolic bracket") {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 12; ++rep) {
    int n = 2 + rep % 3;
    MatrixPair p = random_dense_pair(n, rng);
    TracePolynomial f = random_poly(rng, 4, 2);
    TracePolynomial g = random_poly(rng, 4, 2);
    Complex num = numeric_bracket(f, g, p);
    Complex sym = evaluate(bracket(f, g), p);
    double scale = std::max({1.0, std::abs(num), std::abs(sym)});
    CHECK(std::abs(num - sym) / scale < 1e-8);
  }
}

TEST_CASE("flows act as stated") {
  std::mt19937_64 rng(61);
  MatrixPair p = random_dense_pair(3, rng);
  Complex t(0.7, -0.3);

  MatrixPair q = apply_flow({FlowSpec::Kind::y_shift_xk, 2, t}, p);
  CHECK((q.X - p.X).norm() < 1e-14);
  CHECK((q.Y - (p.Y + t * p.X * p.X)).norm() < 1e-12);

  q = apply_flow({FlowSpec::Kind::x_shift_yk, 1, t}, p);
  CHECK((q.X - (p.X + t * p.Y)).norm() < 1e-12);
  CHECK((q.Y - p.Y).norm() < 1e-14);

  q = apply_flow({FlowSpec::Kind::scale, 0, t}, p);
  CHECK((q.X - std::exp(t) * p.X).norm() < 1e-12);
  CHECK((q.Y - std::exp(-t) * p.Y).norm() < 1e-12);

  q = apply_flow({FlowSpec::Kind::y_shift_trx_id, 0, t}, p);
  CHECK((q.Y - (p.Y + t * p.X.trace() * Matrix::Identity(3, 3))).norm() <
        1e-12);

  q = apply_flow({FlowSpec::Kind::x_shift_id, 0, t}, p);
  CHECK((q.X - (p.X + t * Matrix::Identity(3, 3))).norm() < 1e-12);
}

TEST_CASE("flows preserve the commutator, hence the locus") {
  std::mt19937_64 rng(67);
  std::vector<FlowSpec> flows = {
      {FlowSpec::Kind::y_shift_xk, 3, Complex(0.4, 0.2)},
      {FlowSpec::Kind::x_shift_yk, 2, Complex(-0.8, 0.1)},
      {FlowSpec::Kind::scale, 0, Complex(0.3, -0.5)},
      {FlowSpec::Kind::y_shift_trx_id, 0, Complex(1.1, 0.0)},
      {FlowSpec::Kind::x_shift_id, 0, Complex(0.2, 0.9)},
  };
  for (int n = 2; n <= 4; ++n) {
    MatrixPair p = random_wilson_point(n, rng);
    Matrix b0 = p.X * p.Y - p.Y * p.X;
    for (const FlowSpec& s : flows) {
      MatrixPair q = apply_flow(s, p);
      Matrix b1 = q.X * q.Y - q.Y * q.X;
      CHECK((b1 - b0).norm() < 1e-12 * (1.0 + b0.norm()));
      CHECK(rank_one_residual(q) < 1e-8);
    }
  }
}

TEST_CASE("flows are symplectic") {
  std::mt19937_64 rng(71);
  std::vector<FlowSpec> flows = {
      {FlowSpec::Kind::y_shift_xk, 2, Complex(0.5, 0.1)},
      {FlowSpec::Kind::x_shift_yk, 3, Complex(-0.2, 0.4)},
      {FlowSpec::Kind::scale, 0, Complex(0.25, -0.3)},
      {FlowSpec::Kind::y_shift_trx_id, 0, Complex(0.9, 0.2)},
      {FlowSpec::Kind::x_shift_id, 0, Complex(-0.4, 0.6)},
  };
  for (int rep = 0; rep < 4; ++rep) {
    int n = 2 + rep % 3;
    MatrixPair p = random_dense_pair(n, rng);
    TangentPair u = random_tangent(n, rng);
    TangentPair v = random_tangent(n, rng);
    for (const FlowSpec& s : flows) CHECK(symplectic_check(s, p, u, v) < 1e-6);
  }
}

TEST_CASE("evaluation is invariant under simultaneous permutation") {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 6; ++rep) {
    int n = 3;
    MatrixPair p = random_dense_pair(n, rng);
    TracePolynomial f = random_poly(rng, 5, 3);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + n, rng);
    MatrixPair q = p;
    q.X = perm.transpose() * p.X * perm;
    q.Y = perm.transpose() * p.Y * perm;
    CHECK(std::abs(evaluate(f, p) - evaluate(f, q)) < 1e-10);
  }
}
