#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qcn/baselines.hpp"
#include "qcn/elicit.hpp"
#include "qcn/generation.hpp"
#include "qcn/harness.hpp"
#include "qcn/learner.hpp"
#include "qcn/propagation.hpp"
#include "qcn/teaching.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCollapse = 2;

using namespace qcn;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
  // "0:100:10" is a range with step; otherwise a comma list.
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    int lo = 0, hi = 0, step = 1;
    if (std::sscanf(text.c_str(), "%d:%d:%d", &lo, &hi, &step) < 2 || step <= 0 || hi < lo)
      throw CLI::ValidationError("range", "expected lo:hi[:step], got '" + text + "'");
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "expected integers, got '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string edge_label(const Qcn& q, Edge e) {
  return "(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") between '" + q.name(e.i) + "' and '" +
         q.name(e.j) + "'";
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  GenConfig cfg;
  std::string out;
  std::string pre_closure_out;
};

int run_gen(const GenArgs& a) {
  const GeneratedTarget t = generate_target(a.cfg);
  write_text(a.out, serialize(t.target));
  if (!a.pre_closure_out.empty()) write_text(a.pre_closure_out, serialize(t.oracle_view));
  return kOk;
}

// --- pc --------------------------------------------------------------------

struct PcArgs {
  std::string in;
  std::string out;
  bool partial = false;
};

int run_pc(const PcArgs& a) {
  Qcn q = read_qcn_file(a.in);
  const PropagationResult r = a.partial ? partial_path_consistency(q, triangulate(q)) : path_consistency(q);
  if (!r.consistent) {
    std::cerr << "inconsistent: edge " << edge_label(q, *r.emptied) << " became empty\n";
    return kCollapse;
  }
  std::cerr << "consistent: " << r.removed_count() << " primitives removed in " << r.revisions << " revisions\n";
  write_text(a.out, serialize(q));
  return kOk;
}

// --- learn -----------------------------------------------------------------

struct LearnArgs {
  std::string target;
  std::string method = "pc";
  std::string heuristic;
  int learning_case = 1;
  std::uint64_t seed = 0;
  double p_yes = 0.5;
  double p_mistake = 0.0;
  bool mistakes = false;
  bool confirm = false;
  std::size_t max_queries = 0;
  std::string out;
};

int run_learn(const LearnArgs& a) {
  const Qcn target = read_qcn_file(a.target);
  const CalculusPtr calc = target.calculus_ptr();
  MethodSpec m = parse_method(a.method);
  if (!a.heuristic.empty()) m.heuristic = parse_heuristic(a.heuristic);

  const OracleConfig ocfg{a.p_mistake, derive_seed({a.seed, 0x04ac1eu}), true};
  SimulatedOracle oracle(target, ocfg);
  const bool mistakes = a.mistakes || a.p_mistake > 0.0;

  LearnerConfig cfg;
  cfg.learning_case = a.learning_case;
  cfg.propagation = m.family == MethodSpec::Family::learner ? m.propagation : PropagationKind::none;
  cfg.heuristic = m.heuristic;
  cfg.p_yes_bias = a.p_yes;
  cfg.seed = a.seed;
  cfg.mistakes_enabled = mistakes;
  cfg.require_confirmation = a.confirm && a.learning_case == 1;
  cfg.max_queries = a.max_queries;

  LearnResult r{Qcn(calc, target.size()), {}, false, false};
  std::string tag = a.method;
  switch (m.family) {
    case MethodSpec::Family::naive:
      r = learn_naive(BaselineConfig{a.learning_case, a.p_yes, a.seed, mistakes, a.max_queries}, oracle, calc,
                      target.size(), &target);
      break;
    case MethodSpec::Family::conacq2:
      r = learn_conacq2(Conacq2Config{a.learning_case, a.p_yes, a.seed, true}, oracle, calc, target.size(), &target);
      break;
    case MethodSpec::Family::learner:
      validate(cfg);
      r = learn(cfg, oracle, calc, target.size(), &target);
      tag = std::string(to_string(m.propagation)) + "/" + std::string(to_string(m.heuristic));
      break;
  }
  std::cout << run_manifest(cfg, ocfg, r.stats, tag);
  if (!a.out.empty()) write_qcn_file(r.network, a.out);
  if (r.collapsed) {
    std::cerr << "collapse" << (r.budget_exhausted ? ": query budget exhausted" : "") << "\n";
    return kCollapse;
  }
  return kOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  SweepSpec spec;
  std::string cases = "1";
  std::string p_yes = "0";
  std::string methods = "naive,conacq2,pc,pc-card,pc-weight,pc-card-desc";
  std::string out;
  bool summary = false;
};

int run_bench(BenchArgs a) {
  a.spec.cases = parse_int_list(a.cases);
  a.spec.p_yes = parse_int_list(a.p_yes);
  a.spec.methods = split(a.methods);
  const auto rows = run_sweep(a.spec);
  write_text(a.out, to_csv(rows));
  if (a.summary) {
    std::fprintf(stderr, "%-5s %-6s %-14s %6s %10s %10s %10s\n", "case", "p_yes", "method", "conv", "queries",
                 "backtracks", "detected");
    for (const auto& s : summarize(rows))
      std::fprintf(stderr, "%-5d %-6d %-14s %3d/%-2d %10.1f %10.1f %10.1f\n", s.learning_case, s.p_yes,
                   s.method.c_str(), s.converged, s.runs, s.mean_queries, s.mean_backtracks, s.mean_detected);
  }
  return kOk;
}

// --- td-verify ---------------------------------------------------------------

struct TdArgs {
  std::string kind = "every";
  std::string calculus = "point";
  int n = 3;
  std::string reading = "syntactic";
};

int run_td(const TdArgs& a) {
  std::vector<ConceptKind> kinds;
  if (a.kind == "every") {
    kinds = {ConceptKind::complete, ConceptKind::incomplete, ConceptKind::all};
  } else {
    kinds = {parse_concept_kind(a.kind)};
  }
  const Representability rep =
      a.reading == "consistent" ? Representability::consistent : Representability::syntactic;
  const CalculusPtr calc = load_calculus(a.calculus);
  std::printf("%-11s %2s %2s %5s %8s %8s %5s\n", "class", "n", "p", "|X|", "tdim", "formula", "match");
  for (const ConceptKind k : kinds) {
    const TeachingResult r = teaching_dimension(ConceptClass{k, calc, a.n, rep});
    std::printf("%-11s %2d %2d %5d %8d %8d %5s\n", std::string(to_string(k)).c_str(), a.n, calc->size(), r.instances,
                r.dimension, r.formula, r.dimension == r.formula ? "yes" : "no");
    if (!r.verified) std::fprintf(stderr, "warning: a teaching set failed post-hoc verification\n");
  }
  return kOk;
}

// --- serve -----------------------------------------------------------------

struct ServeArgs {
  elicit::ServerOptions options;
  std::string snapshot_dir;
};

elicit::Server* g_server = nullptr;

int run_serve(ServeArgs a) {
  if (!a.snapshot_dir.empty()) a.options.snapshot_dir = a.snapshot_dir;
  elicit::Server server(a.options);
  const int port = server.bind();
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "listening on http://" << a.options.host << ":" << port << "\n";
  server.serve();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qualitative constraint network learning engine"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random consistent target network");
  g->add_option("--calculus", gen.cfg.calculus, "ia or rcc8")->capture_default_str();
  g->add_option("--n", gen.cfg.n, "Number of variables")->capture_default_str();
  g->add_option("--case", gen.cfg.learning_case, "Learning case: 1 scenario, 2 sparse, 3 disjunctive")
      ->capture_default_str();
  g->add_option("--seed", gen.cfg.seed, "Random seed")->capture_default_str();
  g->add_option("--p-universal", gen.cfg.p_universal, "Case 2: probability an edge is universal")
      ->capture_default_str();
  g->add_option("--extra-density", gen.cfg.extra_density, "Case 3: probability of each extra primitive")
      ->capture_default_str();
  g->add_option("-o,--output", gen.out, "Output file (default standard output)");
  g->add_option("--pre-closure", gen.pre_closure_out, "Case 3: also write the network before PC closure");

  PcArgs pc;
  auto* p = app.add_subcommand("pc", "Enforce path consistency on a network");
  p->add_option("-i,--input", pc.in, "Input .qcn.json")->required()->check(CLI::ExistingFile);
  p->add_option("-o,--output", pc.out, "Output file (default standard output)");
  p->add_flag("--partial", pc.partial, "Partial path consistency over a min-fill triangulation");

  LearnArgs learn;
  auto* l = app.add_subcommand("learn", "Learn a hidden target network with a simulated oracle");
  l->add_option("--target", learn.target, "Target .qcn.json answered by the oracle")
      ->required()
      ->check(CLI::ExistingFile);
  l->add_option("--method", learn.method, "naive, conacq2, pc, ppc or a sweep name such as pc-card")
      ->capture_default_str();
  l->add_option("--heuristic", learn.heuristic, "random, cardinality, weight or cardinality_descending");
  l->add_option("--case", learn.learning_case, "Learning case 1, 2 or 3")->capture_default_str();
  l->add_option("--seed", learn.seed, "Learner seed")->capture_default_str();
  l->add_option("--p-yes", learn.p_yes, "Bias towards primitives of the target, in [0, 1]")->capture_default_str();
  l->add_option("--p-mistake", learn.p_mistake, "Probability the oracle flips a first answer")
      ->capture_default_str();
  l->add_flag("--mistakes", learn.mistakes, "Enable snapshot backtracking even without injected mistakes");
  l->add_flag("--confirm", learn.confirm, "Case 1: learn an edge only from a yes answer");
  l->add_option("--max-queries", learn.max_queries, "Stop after this many queries (0 = no limit)")
      ->capture_default_str();
  l->add_option("-o,--output", learn.out, "Write the learned network here");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a query-count sweep and emit CSV");
  b->add_option("--cases", bench.cases, "Cases, e.g. 1,2,3")->capture_default_str();
  b->add_option("--n", bench.spec.n, "Number of variables")->capture_default_str();
  b->add_option("--calculus", bench.spec.calculus, "ia or rcc8")->capture_default_str();
  b->add_option("--p-yes", bench.p_yes, "Yes-bias percentages: list or lo:hi:step")->capture_default_str();
  b->add_option("--methods", bench.methods, "Comma list of methods")->capture_default_str();
  b->add_option("--runs", bench.spec.runs, "Runs per cell")->capture_default_str();
  b->add_option("--p-mistake", bench.spec.p_mistake, "Oracle mistake probability")->capture_default_str();
  b->add_option("--seed", bench.spec.base_seed, "Base seed")->capture_default_str();
  b->add_option("--p-universal", bench.spec.p_universal, "Case 2 universal-edge probability")->capture_default_str();
  b->add_option("--extra-density", bench.spec.extra_density, "Case 3 extra-primitive probability")
      ->capture_default_str();
  b->add_option("--max-queries", bench.spec.max_queries, "Per-run query cap (0 = none)")->capture_default_str();
  b->add_flag("--confirm", bench.spec.require_confirmation, "Case 1 learners learn an edge only from a yes");
  b->add_flag("--timing", bench.spec.timing, "Record wall time (makes the CSV run-dependent)");
  b->add_option("--workers", bench.spec.workers, "Worker threads (default QCN_WORKERS or all cores)");
  b->add_option("-o,--output", bench.out, "CSV file (default standard output)");
  b->add_flag("--summary", bench.summary, "Print per-method means on standard error");

  TdArgs td;
  auto* t = app.add_subcommand("td-verify", "Brute-force teaching dimensions on tiny networks");
  t->add_option("--kind", td.kind, "complete, incomplete, all or every")->capture_default_str();
  t->add_option("--calculus", td.calculus, "Calculus with at most 3 primitives")->capture_default_str();
  t->add_option("--n", td.n, "Number of variables (2 or 3)")->capture_default_str();
  t->add_option("--reading", td.reading, "syntactic or consistent concept representability")
      ->check(CLI::IsMember({"syntactic", "consistent"}))
      ->capture_default_str();

  ServeArgs serve;
  auto* s = app.add_subcommand("serve", "Serve the HTTP elicitation API");
  s->add_option("--host", serve.options.host, "Bind address")->capture_default_str();
  s->add_option("--port", serve.options.port, "Port (0 picks a free one)")->capture_default_str();
  s->add_flag("--cors", serve.options.cors, "Send permissive cross-origin headers");
  s->add_option("--snapshot-dir", serve.snapshot_dir, "Write a JSON snapshot of each session on every change");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*p) return run_pc(pc);
    if (*l) return run_learn(learn);
    if (*b) return run_bench(bench);
    if (*t) return run_td(td);
    if (*s) return run_serve(serve);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
