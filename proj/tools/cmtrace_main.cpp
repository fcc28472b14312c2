// Command-line front end: expression evaluation, rank-one reduction, closure
// builds, certificate replay, point generation, flows, and the verification
// suites. Reports are line-delimited "record ..." lines plus a short human
// summary; exit codes are 0 (success/verified), 1 (verification failure),
// 2 (usage error / could not run).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmtrace/cert_io.hpp"
#include "cmtrace/numerics.hpp"
#include "cmtrace/parse.hpp"
#include "cmtrace/rank_one.hpp"
#include "cmtrace/trace_closure.hpp"
#include "cmtrace/verify.hpp"

using namespace cmtrace;

namespace {

std::string squash(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

Complex parse_complex(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
  return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

// Semicolon- or whitespace-separated list of "re" or "re,im" entries.
std::vector<Complex> parse_complex_list(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ';') c = ' ';
  std::istringstream in(t);
  std::vector<Complex> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_complex(tok));
  return out;
}

std::string complex_str(const Complex& z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g,%.12g", z.real(), z.imag());
  return buf;
}

// Point file: "n N" then either "alphas ..." and "betas ..." lines or
// "X ..." and "Y ..." rows of n*n row-major "re,im" entries.
MatrixPair read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point file: " + path);
  int n = 0;
  std::vector<Complex> alphas, betas, xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    std::string rest;
    std::getline(ls, rest);
    if (key == "n")
      n = std::stoi(rest);
    else if (key == "alphas")
      alphas = parse_complex_list(rest);
    else if (key == "betas")
      betas = parse_complex_list(rest);
    else if (key == "X")
      xs = parse_complex_list(rest);
    else if (key == "Y")
      ys = parse_complex_list(rest);
    else
      throw std::runtime_error("unknown point-file key: " + key);
  }
  if (n <= 0) throw std::runtime_error("point file missing n");
  if (!alphas.empty() || !betas.empty()) {
    if ((int)alphas.size() != n || (int)betas.size() != n)
      throw std::runtime_error("alphas/betas must have n entries");
    return wilson_point(alphas, betas);
  }
  if ((int)xs.size() != n * n || (int)ys.size() != n * n)
    throw std::runtime_error("X/Y must have n*n entries");
  MatrixPair p;
  p.n = n;
  p.X = Matrix(n, n);
  p.Y = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      p.X(i, j) = xs[i * n + j];
      p.Y(i, j) = ys[i * n + j];
    }
  p.certified_rank_one = rank_one_residual(p) < 1e-10;
  return p;
}

void print_point(std::ostream& out, const MatrixPair& p) {
  out << "n " << p.n << "\n";
  for (const char* name : {"X", "Y"}) {
    const Matrix& m = name[0] == 'X' ? p.X : p.Y;
    out << name;
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j) out << " " << complex_str(m(i, j));
    out << "\n";
  }
}

// Generator/target files: one expression per line, optional "name :=" prefix,
// '#' comments.
std::vector<std::pair<std::string, TracePolynomial>> read_expr_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::pair<std::string, TracePolynomial>> out;
  std::string line;
  int idx = 0;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string name = "g" + std::to_string(idx);
    std::string expr = line;
    auto def = line.find(":=");
    if (def != std::string::npos) {
      name = line.substr(0, def);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      expr = line.substr(def + 2);
    }
    out.emplace_back(name, parse_trace_poly(expr));
    ++idx;
  }
  return out;
}

std::string fmt_word(const std::string& letters) {
  std::string out;
  size_t i = 0;
  while (i < letters.size()) {
    size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += "*";
    out += letters[i];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

int run_closure_like(const std::string& gen_file, int budget, int slack,
                     const std::string& mode_name, bool chain,
                     const std::string& targets_file,
                     const std::string& target_expr,
                     const std::string& out_bundle, bool emit_certs) {
  ReductionMode mode = mode_name == "rank-one" ? ReductionMode::rank_one
                                               : ReductionMode::ambient;
  TraceCtx ctx(mode);
  TraceClosure eng(ctx, budget, slack);
  eng.chain_pairs = chain;
  auto gens = read_expr_file(gen_file);
  std::vector<TraceCtx::Elem> gen_elems;
  for (const auto& [name, g] : gens) {
    gen_elems.push_back(ctx.to_elem(g));
    eng.add_generator(gen_elems.back());
  }

  std::vector<std::pair<std::string, TracePolynomial>> targets;
  if (!targets_file.empty()) targets = read_expr_file(targets_file);
  if (!target_expr.empty())
    targets.emplace_back("target", parse_trace_poly(target_expr));
  std::vector<TraceCtx::Elem> target_elems;
  for (const auto& [name, t] : targets) target_elems.push_back(ctx.to_elem(t));

  eng.close(targets.empty() ? nullptr : &target_elems);

  std::cout << "record op=closure mode=" << mode_name << " budget=" << budget
            << " slack=" << slack << " rows=" << eng.rows().size()
            << " pairs=" << eng.stats().pairs_processed << "\n";
  for (const auto& [deg, count] : eng.basis_size_by_degree())
    std::cout << "record op=closure basis_deg" << deg << "=" << count << "\n";

  int missing = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    auto cert = eng.membership(target_elems[i]);
    std::cout << "record op=closure target=" << targets[i].first
              << " expr=" << squash(targets[i].second.str())
              << " member=" << (cert ? "true" : "false") << "\n";
    if (!cert) {
      ++missing;
      continue;
    }
    if (emit_certs)
      std::cout << "cert " << targets[i].first << " " << cert_to_string(*cert)
                << "\n";
    if (!out_bundle.empty()) {
      CertBundle bundle;
      bundle.mode = mode;
      for (const auto& [name, g] : gens) bundle.generators.push_back(g);
      bundle.target = targets[i].second;
      bundle.cert = *cert;
      std::ofstream bo(out_bundle);
      if (!bo)
        throw std::runtime_error("cannot write bundle: " + out_bundle);
      write_cert_bundle(bo, bundle);
    }
  }
  std::cout << "closure basis has " << eng.rows().size() << " elements; "
            << targets.size() - missing << "/" << targets.size()
            << " targets are members\n";
  return targets.empty() || missing == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson calculus of invariant trace polynomials: brackets, "
               "rank-one reduction, Lie-closure certification, and numeric "
               "cross-checks"};
  app.set_config("--config", "", "key = value configuration file");
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads (only 1 supported)")
      ->check(CLI::PositiveNumber);

  // bracket EXPR EXPR
  std::string expr_a, expr_b;
  auto* cmd_bracket = app.add_subcommand("bracket", "Poisson bracket of two "
                                                    "trace expressions");
  cmd_bracket->add_option("lhs", expr_a)->required();
  cmd_bracket->add_option("rhs", expr_b)->required();

  // reduce EXPR [--keep-b-trace]
  std::string reduce_expr;
  bool keep_b = false;
  auto* cmd_reduce =
      app.add_subcommand("reduce", "rank-one reduction to the tr(X^iY^j) "
                                   "basis");
  cmd_reduce->add_option("expr", reduce_expr)->required();
  cmd_reduce->add_flag("--keep-b-trace", keep_b,
                       "show the swap identity with explicit tr(..B) terms "
                       "(single trace word only)");

  // closure / membership
  std::string gen_file, targets_file, mode_name = "ambient", target_expr,
              out_bundle;
  int budget = 6, slack = 0;
  bool chain = false, emit_certs = false;
  auto* cmd_closure =
      app.add_subcommand("closure", "Lie closure of a generator file up to a "
                                    "degree budget");
  cmd_closure->add_option("--generators", gen_file)->required();
  cmd_closure->add_option("--budget", budget)->required();
  cmd_closure->add_option("--slack", slack);
  cmd_closure->add_option("--mode", mode_name)
      ->check(CLI::IsMember({"ambient", "rank-one"}));
  cmd_closure->add_option("--targets", targets_file);
  cmd_closure->add_flag("--chain", chain,
                        "pair new rows with generators only (left-normed "
                        "chains)");
  cmd_closure->add_flag("--certificates", emit_certs,
                        "print a certificate line per member target");

  auto* cmd_member =
      app.add_subcommand("membership", "closure membership of one target, "
                                       "with optional certificate bundle");
  cmd_member->add_option("target", target_expr)->required();
  cmd_member->add_option("--generators", gen_file)->required();
  cmd_member->add_option("--budget", budget)->required();
  cmd_member->add_option("--slack", slack);
  cmd_member->add_option("--mode", mode_name)
      ->check(CLI::IsMember({"ambient", "rank-one"}));
  cmd_member->add_flag("--chain", chain);
  cmd_member->add_option("--out", out_bundle, "write a replayable bundle");

  // replay CERT-FILE
  std::string bundle_file;
  auto* cmd_replay = app.add_subcommand("replay", "replay a certificate "
                                                  "bundle and check it");
  cmd_replay->add_option("bundle", bundle_file)->required();

  // wilson
  std::string alphas_s, betas_s;
  auto* cmd_wilson = app.add_subcommand("wilson", "build a certified point "
                                                  "from Wilson coordinates");
  cmd_wilson->add_option("--alphas", alphas_s)->required();
  cmd_wilson->add_option("--betas", betas_s)->required();

  // flow
  std::string kind_s, t_s = "1", point_file;
  int flow_k = 1;
  auto* cmd_flow = app.add_subcommand("flow", "apply a complete flow to a "
                                              "point");
  cmd_flow->add_option("--kind", kind_s)
      ->required()
      ->check(CLI::IsMember({"y_shift_xk", "x_shift_yk", "scale",
                             "y_shift_trx_id", "x_shift_id"}));
  cmd_flow->add_option("--k", flow_k, "power for the shift kinds");
  cmd_flow->add_option("--t", t_s, "complex time re[,im]");
  cmd_flow->add_option("--point", point_file)->required();

  // verify
  std::string suite;
  VerifyOptions vopts;
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->add_option("--suite", suite, "suite name or 'all'")->required();
  cmd_verify->add_option("--n", vopts.n);
  cmd_verify->add_option("--samples", vopts.samples);
  cmd_verify->add_option("--seed", vopts.seed);
  cmd_verify->add_option("--tol", vopts.tol);
  cmd_verify->add_option("--budget", vopts.budget);
  cmd_verify->add_option("--slack", vopts.slack);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (threads != 1)
    std::cerr << "note: multithreading not implemented, using 1 thread\n";

  try {
    if (cmd_bracket->parsed()) {
      TracePolynomial f = parse_trace_poly(expr_a);
      TracePolynomial g = parse_trace_poly(expr_b);
      TracePolynomial br = bracket(f, g);
      std::cout << "record op=bracket result=" << squash(br.str()) << "\n";
      std::cout << "{" << f.str() << ", " << g.str() << "} = " << br.str()
                << "\n";
      return 0;
    }
    if (cmd_reduce->parsed()) {
      TracePolynomial f = parse_trace_poly(reduce_expr);
      if (keep_b) {
        if (f.terms().size() != 1 ||
            f.terms().begin()->first.factors().size() != 1 ||
            f.terms().begin()->second != NPoly(1)) {
          std::cerr << "--keep-b-trace needs a single trace word tr(W)\n";
          return 2;
        }
        const TraceWord& w = f.terms().begin()->first.factors()[0];
        BTraceExpansion ex = expand_b_traces(w);
        std::cout << "record op=reduce input=" << squash(f.str())
                  << " sorted=tr(" << fmt_word(ex.sorted.letters()) << ")\n";
        std::ostringstream rhs;
        rhs << "tr(" << fmt_word(ex.sorted.letters()) << ")";
        for (const auto& [c, letters] : ex.b_terms) {
          std::cout << "record op=reduce b_term=" << to_string(c) << "*tr("
                    << fmt_word(letters) << ")\n";
          rhs << (sgn(c) < 0 ? " - " : " + ")
              << (abs(c) == 1 ? std::string() : to_string(abs(c)) + "*")
              << "tr(" << fmt_word(letters) << ")";
        }
        std::cout << f.str() << " = " << rhs.str() << "\n";
        return 0;
      }
      RankOneReducer red;
      ReducedForm r = red.reduce(f);
      std::cout << "record op=reduce value=" << squash(r.value.str()) << "\n";
      std::cout << "record op=reduce leading=" << squash(r.leading.str())
                << "\n";
      std::cout << "record op=reduce corrections="
                << squash(r.corrections.str()) << "\n";
      std::cout << f.str() << " = " << r.value.str() << "\n";
      return 0;
    }
    if (cmd_closure->parsed())
      return run_closure_like(gen_file, budget, slack, mode_name, chain,
                              targets_file, "", "", emit_certs);
    if (cmd_member->parsed())
      return run_closure_like(gen_file, budget, slack, mode_name, chain, "",
                              target_expr, out_bundle, true);
    if (cmd_replay->parsed()) {
      std::ifstream in(bundle_file);
      if (!in) {
        std::cerr << "cannot open bundle: " << bundle_file << "\n";
        return 2;
      }
      CertBundle bundle = read_cert_bundle(in);
      TraceCtx::Elem got = replay_bundle(bundle);
      TracePolynomial poly = elem_to_poly_cleared(got);
      std::cout << "record op=replay result=" << squash(poly.str()) << "\n";
      if (bundle.target) {
        TraceCtx ctx(bundle.mode);
        bool ok = got == ctx.to_elem(*bundle.target);
        std::cout << "record op=replay target_match="
                  << (ok ? "true" : "false") << "\n";
        std::cout << (ok ? "certificate replays to the target\n"
                         : "certificate does NOT replay to the target\n");
        return ok ? 0 : 1;
      }
      std::cout << "replayed: " << poly.str() << "\n";
      return 0;
    }
    if (cmd_wilson->parsed()) {
      MatrixPair p =
          wilson_point(parse_complex_list(alphas_s), parse_complex_list(betas_s));
      std::cout << "record op=wilson n=" << p.n << " certified="
                << (p.certified_rank_one ? "true" : "false")
                << " residual=" << rank_one_residual(p) << "\n";
      print_point(std::cout, p);
      return 0;
    }
    if (cmd_flow->parsed()) {
      FlowSpec s;
      if (kind_s == "y_shift_xk") s.kind = FlowSpec::Kind::y_shift_xk;
      else if (kind_s == "x_shift_yk") s.kind = FlowSpec::Kind::x_shift_yk;
      else if (kind_s == "scale") s.kind = FlowSpec::Kind::scale;
      else if (kind_s == "y_shift_trx_id") s.kind = FlowSpec::Kind::y_shift_trx_id;
      else s.kind = FlowSpec::Kind::x_shift_id;
      s.k = flow_k;
      s.t = parse_complex(t_s);
      MatrixPair p = read_point_file(point_file);
      MatrixPair q = apply_flow(s, p);
      std::cout << "record op=flow kind=" << flow_kind_name(s.kind)
                << " k=" << s.k << " t=" << complex_str(s.t)
                << " residual=" << rank_one_residual(q) << "\n";
      print_point(std::cout, q);
      return 0;
    }
    if (cmd_verify->parsed()) {
      std::vector<std::string> to_run;
      if (suite == "all")
        to_run = {"table64",  "lemma63", "reduction",       "flows",
                  "wilson",   "tcn",     "closure-ambient", "closure-rankone"};
      else
        to_run.push_back(suite);
      bool any_fail = false;
      for (const std::string& name : to_run) {
        SuiteResult r = run_suite(name, vopts, std::cout);
        if (!r.ran) {
          std::cerr << "unknown suite: " << name << "\n";
          return 2;
        }
        std::cout << "suite " << r.suite << ": "
                  << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks
                  << " checks, " << r.failures << " failures)\n";
        any_fail = any_fail || !r.passed();
      }
      return any_fail ? 1 : 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
