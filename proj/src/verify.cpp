#include "cmtrace/verify.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "cmtrace/canonical.hpp"
#include "cmtrace/numerics.hpp"
#include "cmtrace/parse.hpp"
#include "cmtrace/rank_one.hpp"
#include "cmtrace/trace_closure.hpp"

namespace cmtrace {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

/// Streams one record per check and accumulates the suite verdict.
class Reporter {
 public:
  Reporter(std::string suite, const VerifyOptions& opts, std::ostream& out)
      : out_(out) {
    result_.suite = std::move(suite);
    result_.ran = true;
    out_ << "record suite=" << result_.suite << " kind=config seed="
         << opts.seed << " threads=1\n";
  }

  void param(const std::string& key, const std::string& value) {
    out_ << "record suite=" << result_.suite << " kind=param " << key << "="
         << value << "\n";
  }

  void check(const std::string& name, bool ok, double residual = -1.0) {
    ++result_.checks;
    if (!ok) ++result_.failures;
    out_ << "record suite=" << result_.suite << " kind=check name=" << name
         << " status=" << (ok ? "pass" : "fail");
    if (residual >= 0.0) {
      out_ << " residual=" << fmt(residual);
      result_.max_residual = std::max(result_.max_residual, residual);
    }
    out_ << "\n";
  }

  SuiteResult finish() {
    out_ << "record suite=" << result_.suite << " kind=summary checks="
         << result_.checks << " failures=" << result_.failures
         << " max_residual=" << fmt(result_.max_residual) << "\n";
    return result_;
  }

 private:
  std::ostream& out_;
  SuiteResult result_;
};

TracePolynomial P(const std::string& s) { return parse_trace_poly(s); }

// Key=value record names must not contain spaces.
std::string squash(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

// ---------------------------------------------------------------------------
// table64: the ten brackets of the five-element alphabet.

SuiteResult suite_table64(const VerifyOptions& opts, std::ostream& out) {
  Reporter rep("table64", opts, out);
  const std::vector<std::array<std::string, 3>> table = {
      {"a", "b", "n"},  {"a", "c", "0"},    {"a", "d", "b"},
      {"a", "e", "a"},  {"b", "c", "-a"},   {"b", "d", "0"},
      {"b", "e", "-b"}, {"c", "d", "e"},    {"c", "e", "2*c"},
      {"d", "e", "-2*d"},
  };
  for (const auto& [f, g, expect] : table) {
    bool ok = bracket(P(f), P(g)) == P(expect);
    rep.check("{" + f + "," + g + "}=" + squash(expect), ok);
  }
  return rep.finish();
}

// ---------------------------------------------------------------------------
// lemma63: splice-rule bracket of tr X^aY^b with tr X^cY^d against the
// double-sum closed form, 625 exponent tuples.

TracePolynomial closed_form_bracket(int a, int b, int c, int d) {
  TracePolynomial out;
  auto xs = [](int k) { return std::string(k, 'X'); };
  auto ys = [](int k) { return std::string(k, 'Y'); };
  for (int p = 1; p <= a; ++p)
    for (int q = 1; q <= d; ++q)
      out += TracePolynomial::term(
          {TraceWord(xs(p - 1) + ys(d - q) + xs(c) + ys(q - 1) + xs(a - p) +
                     ys(b))},
          NPoly(1));
  for (int r = 1; r <= b; ++r)
    for (int s = 1; s <= c; ++s)
      out -= TracePolynomial::term(
          {TraceWord(ys(r - 1) + xs(c - s) + ys(d) + xs(s - 1) + ys(b - r) +
                     xs(a))},
          NPoly(1));
  return out;
}

SuiteResult suite_lemma63(const VerifyOptions& opts, std::ostream& out) {
  Reporter rep("lemma63", opts, out);
  int bad = 0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d) {
          TracePolynomial lhs =
              bracket(TracePolynomial::term({word_xy(a, b)}, NPoly(1)),
                      TracePolynomial::term({word_xy(c, d)}, NPoly(1)));
          if (lhs != closed_form_bracket(a, b, c, d)) {
            ++bad;
            char name[64];
            std::snprintf(name, sizeof name, "case_a%d_b%d_c%d_d%d", a, b, c,
                          d);
            rep.check(name, false);
          }
        }
  rep.check(bad == 0 ? "all_625_cases" : "remaining_cases", bad == 0);
  return rep.finish();
}

// ---------------------------------------------------------------------------
// reduction: random-word soundness at certified points, the exact fixtures,
// and the degree/weight bounds of the reduced forms.

TraceWord random_word(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> len(2, max_deg);
  std::uniform_int_distribution<int> coin(0, 1);
  int L = len(rng);
  std::string w;
  for (int k = 0; k < L; ++k) w += coin(rng) ? 'Y' : 'X';
  return TraceWord(w);
}

SuiteResult suite_reduction(const VerifyOptions& opts, std::ostream& out) {
  Reporter rep("reduction", opts, out);
  int words = opts.samples > 0 ? opts.samples : 200;
  int points = 20;
  double tol = opts.tol > 0 ? opts.tol : 1e-8;
  rep.param("words", std::to_string(words));
  rep.param("points_per_size", std::to_string(points));
  rep.param("tol", fmt(tol));

  RankOneReducer red;

  // Exact fixtures on the locus.
  for (int k = 1; k <= 5; ++k)
    rep.check("trX^" + std::to_string(k) + "B=0",
              red.reduce_b(std::string(k, 'X'), "").is_zero());
  rep.check("trXYB=n(n-1)/2",
            red.reduce_b("X", "Y") == P("(1/2)*n^2 - (1/2)*n"));
  rep.check("trB^2=n(n-1)",
            red.reduce(P("2*tr(X*Y*X*Y) - 2*tr(X^2*Y^2)")).value ==
                P("n^2 - n"));
  rep.check("reduce(trXYXY)", red.reduce_word(TraceWord("XYXY")) ==
                                  P("tr(X^2*Y^2) + (1/2)*n^2 - (1/2)*n"));

  std::mt19937_64 rng(opts.seed);
  std::vector<int> sizes = opts.n > 0 ? std::vector<int>{opts.n}
                                      : std::vector<int>{2, 3, 4};
  std::vector<std::vector<MatrixPair>> pts;
  for (int n : sizes) {
    pts.emplace_back();
    for (int i = 0; i < points; ++i)
      pts.back().push_back(random_wilson_point(n, rng));
  }

  double worst = 0.0;
  int bad = 0, degree_bad = 0, weight_bad = 0;
  for (int w = 0; w < words; ++w) {
    TraceWord word = random_word(rng, 8);
    TracePolynomial f = TracePolynomial::trace(word);
    ReducedForm r = red.reduce(f);
    for (size_t s = 0; s < sizes.size(); ++s)
      for (const MatrixPair& p : pts[s]) {
        Complex lhs = evaluate(f, p);
        Complex rhs = evaluate(r.value, p);
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        double rel = std::abs(lhs - rhs) / scale;
        worst = std::max(worst, rel);
        if (rel >= tol) ++bad;
      }
    // Every correction term sits at least two bracket steps below the word,
    // and reduction preserves the weight of every term.
    auto [i, j] = word.double_degree();
    for (const auto& [t, c] : r.corrections.terms())
      if (t.degree() > i + j - 4) ++degree_bad;
    for (const auto& [t, c] : r.value.terms())
      if (!t.is_constant() && t.weight() != i - j) ++weight_bad;
    if (i != j)
      for (const auto& [t, c] : r.value.terms())
        if (t.is_constant()) ++weight_bad;
  }
  rep.check("random_words_match_at_certified_points", bad == 0, worst);
  rep.check("correction_degree_bound", degree_bad == 0);
  rep.check("weight_preserved", weight_bad == 0);
  return rep.finish();
}

// ---------------------------------------------------------------------------
// wilson: certified point construction.

SuiteResult suite_wilson(const VerifyOptions& opts, std::ostream& out) {
  Reporter rep("wilson", opts, out);
  int samples = opts.samples > 0 ? opts.samples : 10;
  double tol = opts.tol > 0 ? opts.tol : 1e-10;
  rep.param("samples_per_size", std::to_string(samples));
  rep.param("tol", fmt(tol));

  MatrixPair p2 = wilson_point({Complex(0, 0), Complex(1, 0)},
                               {Complex(0, 0), Complex(0, 0)});
  rep.check("offdiag_entries", std::abs(p2.Y(0, 1) + 1.0) < 1e-12 &&
                                   std::abs(p2.Y(1, 0) - 1.0) < 1e-12);
  bool threw = false;
  try {
    wilson_point({Complex(0, 0), Complex(0.1, 0)},
                 {Complex(0, 0), Complex(0, 0)});
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  rep.check("close_alphas_rejected", threw);

  std::mt19937_64 rng(opts.seed);
  std::vector<int> sizes = opts.n > 0 ? std::vector<int>{opts.n}
                                      : std::vector<int>{2, 3, 4, 5, 6};
  for (int n : sizes) {
    double worst = 0.0;
    bool all = true;
    for (int i = 0; i < samples; ++i) {
      MatrixPair p = random_wilson_point(n, rng);
      double r = rank_one_residual(p);
      worst = std::max(worst, r);
      all = all && p.certified_rank_one && r < tol;
    }
    rep.check("certified_n" + std::to_string(n), all, worst);
  }
  return rep.finish();
}

// ---------------------------------------------------------------------------
// flows: locus preservation and symplecticity of the complete flows.

std::vector<FlowSpec> flow_pool(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-0.6, 0.6);
  auto t = [&] { return Complex(amp(rng), amp(rng)); };
  return {
      {FlowSpec::Kind::x_shift_yk, 0, t()},   // H = tr Y
      {FlowSpec::Kind::x_shift_yk, 1, t()},   // H = tr Y^2 / 2
      {FlowSpec::Kind::y_shift_xk, 2, t()},   // H = -tr X^3 / 3
      {FlowSpec::Kind::y_shift_trx_id, 0, t()},  // H = -(tr X)^2 / 2
      {FlowSpec::Kind::scale, 0, t()},        // H = tr XY
      {FlowSpec::Kind::x_shift_id, 0, t()},   // H = tr Y (shift variant)
      {FlowSpec::Kind::y_shift_xk, 1, t()},
      {FlowSpec::Kind::x_shift_yk, 2, t()},
  };
}

SuiteResult suite_flows(const VerifyOptions& opts, std::ostream& out) {
  Reporter rep("flows", opts, out);
  int samples = opts.samples > 0 ? opts.samples : 50;
  double tol = opts.tol > 0 ? opts.tol : 1e-6;
  int nmax = opts.n > 0 ? opts.n : 4;
  rep.param("samples_per_flow", std::to_string(samples));
  rep.param("tol", fmt(tol));
  std::mt19937_64 rng(opts.seed);

  // Shift flows fix [X, Y] exactly; 10 random compositions keep the rank
  // certificate tight.
  for (int n = 2; n <= nmax; ++n) {
    MatrixPair p = random_wilson_point(n, rng);
    Matrix b0 = p.X * p.Y - p.Y * p.X;
    double worst_comm = 0.0, worst_rank = 0.0;
    MatrixPair q = p;
    for (int step = 0; step < 10; ++step) {
      auto pool = flow_pool(rng);
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      FlowSpec s = pool[pick(rng)];
      q = apply_flow(s, q);
      // Every flow in the pool fixes [X, Y] exactly (the scaling flow
      // multiplies the factors by e^t and e^-t).
      Matrix b1 = q.X * q.Y - q.Y * q.X;
      worst_comm =
          std::max(worst_comm, (b1 - b0).norm() / (1.0 + b0.norm()));
      worst_rank = std::max(worst_rank, rank_one_residual(q));
    }
    rep.check("commutator_n" + std::to_string(n), worst_comm < 1e-12,
              worst_comm);
    rep.check("rank_certificate_n" + std::to_string(n), worst_rank < 1e-9,
              worst_rank);
  }

  // Symplectic residual per flow kind over random (point, tangent) samples.
  auto pool = flow_pool(rng);
  for (size_t f = 0; f < 5; ++f) {
    FlowSpec s = pool[f];
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      int n = 2 + i % 3;
      MatrixPair p = random_dense_pair(n, rng);
      TangentPair u = random_tangent(n, rng);
      TangentPair v = random_tangent(n, rng);
      worst = std::max(worst, symplectic_check(s, p, u, v));
    }
    rep.check("symplectic_" + flow_kind_name(s.kind) + "_k" +
                  std::to_string(s.k),
              worst < tol, worst);
  }
  return rep.finish();
}

// ---------------------------------------------------------------------------
// bracket-agreement helper shared by the CLI (criterion-style sampling).

SuiteResult suite_bracket_numeric(const VerifyOptions& opts,
                                  std::ostream& out) {
  Reporter rep("bracket-numeric", opts, out);
  int pairs = opts.samples > 0 ? opts.samples : 100;
  double tol = opts.tol > 0 ? opts.tol : 1e-8;
  rep.param("pairs", std::to_string(pairs));
  rep.param("tol", fmt(tol));
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto rand_poly = [&] {
    TracePolynomial f;
    int t = 1 + coin(rng);
    for (int i = 0; i < t; ++i) {
      std::vector<TraceWord> fs;
      int nf = 1 + coin(rng);
      for (int j = 0; j < nf; ++j) {
        std::string w;
        int L = len(rng);
        for (int k = 0; k < L; ++k) w += coin(rng) ? 'Y' : 'X';
        fs.emplace_back(w);
      }
      int c = coeff(rng);
      f += TracePolynomial::term(fs, NPoly(c == 0 ? 1 : c));
    }
    return f;
  };

  std::vector<int> sizes = opts.n > 0 ? std::vector<int>{opts.n}
                                      : std::vector<int>{2, 3, 4};
  std::vector<MatrixPair> pts;
  for (int n : sizes)
    for (int i = 0; i < 10; ++i) pts.push_back(random_wilson_point(n, rng));

  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < pairs; ++i) {
    TracePolynomial f = rand_poly();
    TracePolynomial g = rand_poly();
    TracePolynomial br = bracket(f, g);
    for (const MatrixPair& p : pts) {
      Complex num = numeric_bracket(f, g, p);
      Complex sym = evaluate(br, p);
      double scale = std::max({1.0, std::abs(num), std::abs(sym)});
      double rel = std::abs(num - sym) / scale;
      worst = std::max(worst, rel);
      if (rel >= tol) ++bad;
    }
  }
  rep.check("symbolic_numeric_agreement", bad == 0, worst);
  return rep.finish();
}

// ---------------------------------------------------------------------------
// closure suites.

SuiteResult suite_closure_rankone(const VerifyOptions& opts,
                                  std::ostream& out) {
  Reporter rep("closure-rankone", opts, out);
  int budget = opts.budget > 0 ? opts.budget : 6;
  int slack = opts.slack >= 0 ? opts.slack : 4;
  rep.param("budget", std::to_string(budget));
  rep.param("slack", std::to_string(slack));

  TraceCtx ctx(ReductionMode::rank_one);
  TraceClosure eng(ctx, budget, slack);
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : generators_f()) {
    gens.push_back(ctx.to_elem(g));
    eng.add_generator(gens.back());
  }
  std::vector<TraceCtx::Elem> targets;
  std::vector<std::string> names;
  for (const auto& t : sorted_products_up_to(budget)) {
    targets.push_back(ctx.to_elem(t));
    names.push_back(squash(t.str()));
  }
  eng.close(&targets);
  for (const auto& [deg, count] : eng.basis_size_by_degree())
    rep.param("basis_deg" + std::to_string(deg), std::to_string(count));

  int missing = 0, replay_bad = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    auto cert = eng.membership(targets[i]);
    if (!cert) {
      ++missing;
      rep.check(names[i], false);
      continue;
    }
    if (eng.replay(*cert, gens) != targets[i]) {
      ++replay_bad;
      rep.check("replay_" + names[i], false);
    }
  }
  rep.check("all_products_member", missing == 0);
  rep.check("certificates_replay", replay_bad == 0);
  return rep.finish();
}

SuiteResult suite_closure_ambient(const VerifyOptions& opts,
                                  std::ostream& out) {
  Reporter rep("closure-ambient", opts, out);
  int budget = opts.budget > 0 ? opts.budget : 8;
  int slack = opts.slack >= 0 ? opts.slack : 2;
  rep.param("budget", std::to_string(budget));
  rep.param("slack", std::to_string(slack));

  TraceCtx ctx(ReductionMode::ambient);
  TraceClosure eng(ctx, budget, slack);
  eng.chain_pairs = true;
  rep.param("pairing", "chain");
  std::vector<TraceCtx::Elem> gens;
  for (const auto& g : generators_f()) {
    gens.push_back(ctx.to_elem(g));
    eng.add_generator(gens.back());
  }
  std::vector<TraceCtx::Elem> targets;
  std::vector<std::string> names;
  for (const auto& t : alphabet_monomials_up_to(8)) {
    targets.push_back(ctx.to_elem(t));
    names.push_back(squash(t.str()));
  }
  size_t first_epow = targets.size();
  auto epows = e_powers_up_to(5);
  for (size_t p = 0; p < epows.size(); ++p) {
    targets.push_back(ctx.to_elem(epows[p]));
    names.push_back("e^" + std::to_string(p + 1));
  }
  eng.close(&targets);
  for (const auto& [deg, count] : eng.basis_size_by_degree())
    rep.param("basis_deg" + std::to_string(deg), std::to_string(count));

  int missing = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    bool in = eng.is_member(targets[i]);
    if (!in) {
      ++missing;
      rep.check(names[i], false);
    }
  }
  rep.check("all_monomials_member", missing == 0);

  // Spot-check certificate replay on the pure powers of e.
  int replay_bad = 0;
  for (size_t i = first_epow; i < targets.size(); ++i) {
    auto cert = eng.membership(targets[i]);
    if (!cert || eng.replay(*cert, gens) != targets[i]) ++replay_bad;
  }
  rep.check("e_power_certificates_replay", replay_bad == 0);
  return rep.finish();
}

// ---------------------------------------------------------------------------
// tcn: the canonical phase space shadow.

SuiteResult suite_tcn(const VerifyOptions& opts, std::ostream& out) {
  Reporter rep("tcn", opts, out);
  int n = opts.n > 0 ? opts.n : 2;
  int budget = opts.budget > 0 ? opts.budget : 5;
  rep.param("n", std::to_string(n));
  rep.param("budget", std::to_string(budget));

  auto B = [n](const std::string& f, const std::string& g) {
    return canonical_bracket(parse_canonical_poly(f, n),
                             parse_canonical_poly(g, n));
  };
  rep.check("{x1^2,y1^2}=4*x1*y1",
            B("x1^2", "y1^2") == parse_canonical_poly("4*x1*y1", n));
  if (n >= 2) {
    rep.check("{x2^2,y1*y2}=2*x2*y1",
              B("x2^2", "y1*y2") == parse_canonical_poly("2*x2*y1", n));
    rep.check("{x1^2,y1*y2}=2*x1*y2",
              B("x1^2", "y1*y2") == parse_canonical_poly("2*x1*y2", n));
  }

  CoverageReport cov = monomial_coverage(n, budget);
  for (const auto& [deg, count] : cov.basis_by_degree)
    rep.param("basis_deg" + std::to_string(deg), std::to_string(count));
  for (const auto& [mono, member] : cov.verdicts)
    if (!member) rep.check(squash(mono.str()), false);
  rep.check("all_monomials_member", cov.missing == 0);
  return rep.finish();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "table64",      "lemma63",        "reduction",
      "flows",        "wilson",         "bracket-numeric",
      "closure-ambient", "closure-rankone", "tcn",
  };
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts,
                      std::ostream& out) {
  if (name == "table64") return suite_table64(opts, out);
  if (name == "lemma63") return suite_lemma63(opts, out);
  if (name == "reduction") return suite_reduction(opts, out);
  if (name == "flows") return suite_flows(opts, out);
  if (name == "wilson") return suite_wilson(opts, out);
  if (name == "bracket-numeric") return suite_bracket_numeric(opts, out);
  if (name == "closure-ambient") return suite_closure_ambient(opts, out);
  if (name == "closure-rankone") return suite_closure_rankone(opts, out);
  if (name == "tcn") return suite_tcn(opts, out);
  SuiteResult r;
  r.suite = name;
  return r;  // ran = false: unknown suite
}

}  // namespace cmtrace
