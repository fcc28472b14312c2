#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "cmtrace/parse.hpp"
#include "cmtrace/cert_io.hpp"
#include "cmtrace/trace_closure.hpp"

using namespace cmtrace;

namespace {

TracePolynomial P(const std::string& s) { return parse_trace_poly(s); }

TraceClosure build(ReductionMode mode, const std::vector<TracePolynomial>& gens,
                   int budget, int slack,
                   const std::vector<TracePolynomial>* targets = nullptr) {
  TraceCtx ctx(mode);
  TraceClosure eng(ctx, budget, slack);
  for (const auto& g : gens) eng.add_generator(ctx.to_elem(g));
  if (targets) {
    std::vector<TraceCtx::Elem> t;
    for (const auto& f : *targets) t.push_back(ctx.to_elem(f));
    eng.close(&t);
  } else {
    eng.close();
  }
  return eng;
}

// Specializes a field coefficient vector at a rational value of n. Requires
// no denominator root at that value.
std::map<TraceProduct, Rational> specialize(const TraceCtx::Elem& v,
                                            const Rational& n) {
  std::map<TraceProduct, Rational> out;
  for (const auto& [k, c] : v) {
    Rational val = c.eval(n);
    if (sgn(val) != 0) out.emplace(k, val);
  }
  return out;
}

// Plain dense Gaussian elimination over the rationals: returns the residual
// of v against the row space. Written independently of the engine's
// triangular bookkeeping.
struct DenseOracle {
  std::vector<TraceProduct> keys;
  std::vector<std::vector<Rational>> rows;  // echelon form

  std::vector<Rational> to_dense(const std::map<TraceProduct, Rational>& v) {
    std::vector<Rational> d(keys.size(), rat(0));
    for (const auto& [k, c] : v) {
      auto it = std::lower_bound(keys.begin(), keys.end(), k);
      REQUIRE(it != keys.end());
      REQUIRE(*it == k);
      d[it - keys.begin()] = c;
    }
    return d;
  }

  // Reduce in place; returns true when v lands in the span.
  bool reduce(std::vector<Rational>& v) {
    for (const auto& r : rows) {
      size_t p = 0;
      while (p < r.size() && sgn(r[p]) == 0) ++p;
      if (p < v.size() && sgn(v[p]) != 0) {
        Rational f = v[p] / r[p];
        for (size_t i = p; i < v.size(); ++i) v[i] -= f * r[i];
      }
    }
    return std::all_of(v.begin(), v.end(),
                       [](const Rational& c) { return sgn(c) == 0; });
  }

  bool add(const std::map<TraceProduct, Rational>& elem) {
    std::vector<Rational> v = to_dense(elem);
    if (reduce(v)) return false;
    rows.push_back(std::move(v));
    // keep echelon: order rows by pivot position
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      size_t pa = 0, pb = 0;
      while (pa < a.size() && sgn(a[pa]) == 0) ++pa;
      while (pb < b.size() && sgn(b[pb]) == 0) ++pb;
      return pa < pb;
    });
    return true;
  }
};

}  // namespace

TEST_CASE("empty generator set gives the zero-dimensional closure") {
  TraceClosure eng = build(ReductionMode::ambient, {}, 6, 0);
  CHECK(eng.rows().empty());
  CHECK(!eng.is_member(TraceCtx(ReductionMode::ambient).to_elem(P("tr(X)"))));
}

TEST_CASE("e = tr(XY) enters the rank-one closure of F at budget 4") {
  TraceCtx ctx(ReductionMode::rank_one);
  TraceClosure eng = build(ReductionMode::rank_one, generators_f(), 4, 0);
  auto cert = eng.membership(ctx.to_elem(P("e")));
  REQUIRE(cert.has_value());
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : generators_f()) gens.push_back(ctx.to_elem(g));
  CHECK(eng.replay(*cert, gens) == ctx.to_elem(P("e")));
}

TEST_CASE("triple bracket chain reaches tr(Y^3) in ambient mode") {
  std::vector<TracePolynomial> gens = {P("tr(X^3)"), P("tr(Y^2)")};
  TraceClosure eng = build(ReductionMode::ambient, gens, 3, 0);
  TraceCtx ctx(ReductionMode::ambient);
  CHECK(eng.is_member(ctx.to_elem(P("tr(Y^3)"))));
  // the chain itself: {{{tr X^3, tr Y^2}, tr Y^2}, tr Y^2} = 48 tr Y^3
  TracePolynomial step = bracket(
      bracket(bracket(P("tr(X^3)"), P("tr(Y^2)")), P("tr(Y^2)")), P("tr(Y^2)"));
  CHECK(step == P("48*tr(Y^3)"));
}

TEST_CASE("membership chain for tr X at budget 5") {
  TraceCtx ctx(ReductionMode::rank_one);
  TraceClosure eng = build(ReductionMode::rank_one, generators_f(), 5, 0);
  CHECK(eng.is_member(ctx.to_elem(P("tr(X)"))));
  CHECK(bracket(P("tr(X^2)"), P("tr(Y)")) == P("2*tr(X)"));
}

TEST_CASE("targets above the budget are never members") {
  TraceCtx ctx(ReductionMode::rank_one);
  TraceClosure eng = build(ReductionMode::rank_one, generators_f(), 4, 0);
  CHECK(!eng.is_member(ctx.to_elem(P("tr(X^3*Y^2)"))));
  for (const auto& r : eng.rows()) CHECK(r.degree <= 4);
}

TEST_CASE("certificate soundness: every basis row replays to itself") {
  for (ReductionMode mode :
       {ReductionMode::ambient, ReductionMode::rank_one}) {
    TraceCtx ctx(mode);
    TraceClosure eng = build(mode, generators_f(), 4, 1);
    std::vector<TraceCtx::Elem> gens;
    for (const auto& g : generators_f()) gens.push_back(ctx.to_elem(g));
    for (const auto& row : eng.rows())
      CHECK(eng.replay(row.cert, gens) == row.v);
  }
}

TEST_CASE("product target tr(X^2*Y)*tr(X*Y^2) found at budget 6 slack 4") {
  TraceCtx ctx(ReductionMode::rank_one);
  std::vector<TracePolynomial> targets = {P("tr(X^2*Y)*tr(X*Y^2)")};
  TraceClosure eng =
      build(ReductionMode::rank_one, generators_f(), 6, 4, &targets);
  auto cert = eng.membership(ctx.to_elem(targets[0]));
  REQUIRE(cert.has_value());
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : generators_f()) gens.push_back(ctx.to_elem(g));
  CHECK(eng.replay(*cert, gens) == ctx.to_elem(targets[0]));
}

TEST_CASE("span agrees with a dense rational elimination oracle") {
  for (ReductionMode mode :
       {ReductionMode::ambient, ReductionMode::rank_one}) {
    TraceCtx ctx(mode);
    TraceClosure eng = build(mode, generators_f(), 4, 0);
    REQUIRE(eng.rows().size() <= 200);
    for (Rational n0 : {rat(19), rat(23)}) {
      DenseOracle oracle;
      std::set<TraceProduct> keyset;
      for (const auto& r : eng.rows())
        for (const auto& [k, c] : r.v) keyset.insert(k);
      std::vector<TracePolynomial> probes = {P("e"), P("tr(X)"), P("a*b"),
                                             P("tr(X^3*Y^2)"), P("c*d"),
                                             P("tr(X^2*Y^2)")};
      for (const auto& f : probes)
        for (const auto& [k, c] : ctx.to_elem(f)) keyset.insert(k);
      oracle.keys.assign(keyset.begin(), keyset.end());
      // independence: every engine row extends the dense row space
      for (const auto& r : eng.rows()) CHECK(oracle.add(specialize(r.v, n0)));
      for (const auto& f : probes) {
        auto v = oracle.to_dense(specialize(ctx.to_elem(f), n0));
        CHECK(oracle.reduce(v) == eng.is_member(ctx.to_elem(f)));
      }
    }
  }
}

TEST_CASE("monotonicity: span at budget 3 is inside span at budget 5") {
  TraceClosure small = build(ReductionMode::rank_one, generators_f(), 3, 0);
  TraceClosure large = build(ReductionMode::rank_one, generators_f(), 5, 0);
  for (const auto& r : small.rows()) CHECK(large.is_member(r.v));
}

TEST_CASE("bracketing with e is diagonal with the weight as eigenvalue") {
  TraceCtx ctx(ReductionMode::rank_one);
  TraceCtx::Elem e = ctx.to_elem(P("e"));
  for (const std::string& s :
       {"tr(X^2*Y)", "tr(X)*tr(X*Y^2)", "tr(X^3)", "c*d*e"}) {
    TracePolynomial h = P(s);
    int w = *h.homogeneous_weight();
    TraceCtx::Elem eh = ctx.to_elem(h);
    TraceCtx::Elem br = ctx.bracket(eh, e);
    TraceCtx::Elem expect;
    for (const auto& [k, c] : eh) {
      RatFunc v = c * RatFunc(NPoly(w));
      if (!v.is_zero()) expect.emplace(k, v);
    }
    CHECK(br == expect);
  }
}

TEST_CASE("closure is deterministic across rebuilds") {
  TraceClosure a = build(ReductionMode::rank_one, generators_f(), 5, 1);
  TraceClosure b = build(ReductionMode::rank_one, generators_f(), 5, 1);
  REQUIRE(a.rows().size() == b.rows().size());
  for (size_t i = 0; i < a.rows().size(); ++i) {
    CHECK(a.rows()[i].v == b.rows()[i].v);
    CHECK(a.rows()[i].pivot == b.rows()[i].pivot);
  }
}

TEST_CASE("certificate text form round-trips and replays") {
  TraceCtx ctx(ReductionMode::rank_one);
  TraceClosure eng(ctx, 4, 0);
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : generators_f()) {
    gens.push_back(ctx.to_elem(g));
    eng.add_generator(gens.back());
  }
  eng.close();
  TraceCtx::Elem target = ctx.to_elem(P("e"));
  auto cert = eng.membership(target);
  REQUIRE(cert.has_value());
  CertPtr back = cert_from_string(cert_to_string(*cert));
  CHECK(eng.replay(back, gens) == target);
  // parse failures are loud
  CHECK_THROWS(cert_from_string("(q 0)"));
  CHECK_THROWS(cert_from_string("(b (g 0)"));
}

TEST_CASE("certificate bundles survive a write/read cycle") {
  TraceCtx ctx(ReductionMode::rank_one);
  TraceClosure eng(ctx, 4, 0);
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : generators_f()) {
    gens.push_back(ctx.to_elem(g));
    eng.add_generator(gens.back());
  }
  eng.close();
  CertBundle bundle;
  bundle.mode = ReductionMode::rank_one;
  bundle.generators = generators_f();
  bundle.target = P("e");
  bundle.cert = *eng.membership(ctx.to_elem(P("e")));

  std::stringstream io;
  write_cert_bundle(io, bundle);
  CertBundle got = read_cert_bundle(io);
  CHECK(got.mode == ReductionMode::rank_one);
  REQUIRE(got.generators.size() == 4);
  REQUIRE(got.target.has_value());
  CHECK(*got.target == P("e"));
  CHECK(replay_bundle(got) == ctx.to_elem(P("e")));
}

TEST_CASE("chain pairing spans a subspace of the pairwise fixpoint") {
  TraceCtx ctx(ReductionMode::ambient);
  TraceClosure chain(ctx, 4, 1);
  chain.chain_pairs = true;
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : generators_f()) {
    gens.push_back(ctx.to_elem(g));
    chain.add_generator(gens.back());
  }
  chain.close();
  TraceClosure full = build(ReductionMode::ambient, generators_f(), 4, 1);
  CHECK(chain.rows().size() <= full.rows().size());
  for (const auto& r : chain.rows()) CHECK(full.is_member(r.v));
  // and chain certificates replay like any others
  auto cert = chain.membership(ctx.to_elem(P("tr(Y^3)")));
  REQUIRE(cert.has_value());
  CHECK(chain.replay(*cert, gens) == ctx.to_elem(P("tr(Y^3)")));
}
