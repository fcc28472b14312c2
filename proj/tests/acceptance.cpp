// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria with runtime targets report elapsed seconds.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include "cmtrace/parse.hpp"
#include "cmtrace/rank_one.hpp"
#include "cmtrace/trace_poly.hpp"
#include "cmtrace/verify.hpp"

using namespace cmtrace;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, double secs = -1,
            double limit = -1) {
  std::string extra;
  if (secs >= 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " [%.1fs%s]", secs,
                  limit >= 0 && secs > limit ? ", over target" : "");
    extra = buf;
  }
  std::printf("%s criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str(), extra.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs a suite quietly; hard time limits fail the criterion, soft targets
// only annotate.
void suite_criterion(int criterion, const std::string& what,
                     const std::string& suite, double hard_limit = -1,
                     double soft_target = -1) {
  VerifyOptions opts;
  std::ostringstream sink;
  auto t0 = Clock::now();
  SuiteResult r = run_suite(suite, opts, sink);
  double dt = secs_since(t0);
  bool ok = r.passed() && (hard_limit < 0 || dt < hard_limit);
  report(criterion, what, ok, dt, hard_limit >= 0 ? hard_limit : soft_target);
  if (!r.passed()) {
    // Surface the failing checks for the log.
    std::istringstream in(sink.str());
    std::string line;
    while (std::getline(in, line))
      if (line.find("status=fail") != std::string::npos)
        std::printf("    %s\n", line.c_str());
  }
}

TracePolynomial P(const std::string& s) { return parse_trace_poly(s); }

void chain_fixtures() {
  TracePolynomial x3 = P("tr(X^3)"), y2 = P("tr(Y^2)");
  bool a = bracket(bracket(bracket(x3, y2), y2), y2) == P("48*tr(Y^3)");
  bool b = bracket(P("tr(X)*tr(X)"), P("tr(Y^3)")) == P("6*tr(X)*tr(Y^2)");
  bool c = bracket(P("tr(X^2)"), P("tr(Y)")) == P("2*tr(X)");
  report(3, "iterated bracket chain fixtures", a && b && c);
}

// All cyclic words of double degree (i, j), degree <= max_deg: the reduced
// form is tr(X^iY^j) plus corrections of total degree <= i+j-4, and every
// term carries weight i-j.
void degree_bound_criterion() {
  RankOneReducer red;
  bool ok = true;
  for (int deg = 1; deg <= 8 && ok; ++deg) {
    for (unsigned bits = 0; bits < (1u << deg) && ok; ++bits) {
      std::string w;
      for (int k = 0; k < deg; ++k) w += (bits >> k) & 1 ? 'Y' : 'X';
      TraceWord word(w);
      if (word.letters() != w) continue;  // one representative per rotation
      auto [i, j] = word.double_degree();
      ReducedForm r = red.reduce(TracePolynomial::trace(word));
      if (r.leading != TracePolynomial::trace(word_xy(i, j))) ok = false;
      for (const auto& [t, c] : r.corrections.terms())
        if (t.degree() > i + j - 4) ok = false;
      for (const auto& [t, c] : r.value.terms()) {
        if (t.is_constant() ? (i != j) : (t.weight() != i - j)) ok = false;
      }
    }
  }
  report(5, "reduced-word degree bound and weights (all words, degree <= 8)",
         ok);
}

void determinism_criterion() {
  bool ok = true;
  for (const std::string& suite :
       {std::string("table64"), std::string("reduction"),
        std::string("flows"), std::string("wilson"), std::string("tcn")}) {
    VerifyOptions opts;
    opts.seed = 12345;
    std::ostringstream a, b;
    run_suite(suite, opts, a);
    run_suite(suite, opts, b);
    if (a.str() != b.str() || a.str().empty()) ok = false;
  }
  report(11, "verify reports are byte-identical for a fixed seed", ok);
}

}  // namespace

int main() {
  suite_criterion(1, "five-element bracket table reproduced exactly",
                  "table64", 1.0);
  suite_criterion(2, "splice rule matches the closed form on 625 cases",
                  "lemma63", 30.0);
  chain_fixtures();
  suite_criterion(4, "reduction soundness at certified points plus fixtures",
                  "reduction", 300.0);
  degree_bound_criterion();
  suite_criterion(6, "rank-one closure covers all sorted products, degree 6",
                  "closure-rankone", -1, 600.0);
  suite_criterion(7, "ambient closure covers the five-letter monomials, "
                     "degree 8",
                  "closure-ambient", -1, 600.0);
  suite_criterion(8, "flows preserve the locus and the symplectic pairing",
                  "flows");
  suite_criterion(9, "numeric bracket oracle agrees with the symbolic bracket",
                  "bracket-numeric");
  suite_criterion(10, "canonical phase-space closure covers degree 5 at n=2",
                  "tcn");
  determinism_criterion();

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
