#include "qcn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <thread>

#include "qcn/baselines.hpp"
#include "qcn/generation.hpp"

namespace qcn {

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> names{"naive",   "conacq2",  "pc",        "pc-card",      "pc-weight",
                                              "pc-card-desc", "ppc", "ppc-card", "ppc-weight", "ppc-card-desc"};
  return names;
}

MethodSpec parse_method(std::string_view name) {
  MethodSpec m;
  if (name == "naive") {
    m.family = MethodSpec::Family::naive;
    return m;
  }
  if (name == "conacq2") {
    m.family = MethodSpec::Family::conacq2;
    return m;
  }
  std::string_view rest;
  if (name.starts_with("ppc")) {
    m.propagation = PropagationKind::ppc;
    rest = name.substr(3);
  } else if (name.starts_with("pc")) {
    rest = name.substr(2);
  } else {
    throw ConfigError("unknown method '" + std::string(name) + "'");
  }
  if (rest.empty()) {
    m.heuristic = Heuristic::random;
  } else if (rest == "-card") {
    m.heuristic = Heuristic::cardinality;
  } else if (rest == "-weight") {
    m.heuristic = Heuristic::weight;
  } else if (rest == "-card-desc") {
    m.heuristic = Heuristic::cardinality_descending;
  } else {
    throw ConfigError("unknown method '" + std::string(name) + "'");
  }
  return m;
}

void validate(const SweepSpec& spec) {
  if (spec.cases.empty()) throw ConfigError("sweep needs at least one case");
  if (spec.methods.empty()) throw ConfigError("sweep needs at least one method");
  if (spec.p_yes.empty()) throw ConfigError("sweep needs at least one p_yes value");
  if (spec.runs < 1) throw ConfigError("runs must be at least 1");
  if (spec.calculus != "ia" && spec.calculus != "rcc8") throw ConfigError("sweep calculus must be ia or rcc8");
  if (spec.p_mistake < 0.0 || spec.p_mistake > 1.0) throw ConfigError("p_mistake must lie in [0, 1]");
  for (const int p : spec.p_yes) {
    if (p < 0 || p > 100) throw ConfigError("p_yes values are percentages in [0, 100]");
  }
  for (const int c : spec.cases) {
    GenConfig g{spec.calculus, spec.n, c, spec.p_universal, spec.extra_density, 0};
    try {
      validate(g);
    } catch (const GenerationError& e) {
      throw ConfigError(e.what());
    }
    for (const auto& name : spec.methods) {
      const MethodSpec m = parse_method(name);
      if (m.propagation == PropagationKind::ppc && m.family == MethodSpec::Family::learner && c != 2)
        throw ConfigError("method '" + name + "' is only valid for case 2");
    }
  }
}

std::uint64_t target_seed(const SweepSpec& spec, int learning_case, int run_index) {
  return derive_seed({spec.base_seed, 0x7a59u, static_cast<std::uint64_t>(learning_case),
                      static_cast<std::uint64_t>(spec.n), static_cast<std::uint64_t>(run_index)});
}

std::uint64_t run_seed(const SweepSpec& spec, int learning_case, int p_yes, int run_index) {
  return derive_seed({spec.base_seed, 0x52u, static_cast<std::uint64_t>(learning_case),
                      static_cast<std::uint64_t>(spec.n), static_cast<std::uint64_t>(p_yes),
                      static_cast<std::uint64_t>(run_index)});
}

ResultRow run_cell(const SweepSpec& spec, int learning_case, int p_yes, const std::string& method, int run_index) {
  ResultRow row;
  row.learning_case = learning_case;
  row.calculus = spec.calculus;
  row.n = spec.n;
  row.p_yes = p_yes;
  row.method = method;
  row.run_index = run_index;
  row.seed = run_seed(spec, learning_case, p_yes, run_index);

  const GenConfig gen{spec.calculus, spec.n, learning_case, spec.p_universal, spec.extra_density,
                      target_seed(spec, learning_case, run_index)};
  const GeneratedTarget t = generate_target(gen);
  const CalculusPtr calc = t.target.calculus_ptr();
  const MethodSpec m = parse_method(method);
  const double bias = p_yes / 100.0;
  const bool mistakes = spec.p_mistake > 0.0;

  SimulatedOracle oracle(t.oracle_view, OracleConfig{spec.p_mistake, derive_seed({row.seed, 0x04ac1eu}), true});
  const auto start = std::chrono::steady_clock::now();
  LearnResult r{Qcn(calc, spec.n), {}, false, false};
  switch (m.family) {
    case MethodSpec::Family::naive:
      r = learn_naive(BaselineConfig{learning_case, bias, row.seed, mistakes, spec.max_queries}, oracle, calc, spec.n,
                      &t.oracle_view);
      break;
    case MethodSpec::Family::conacq2:
      r = learn_conacq2(Conacq2Config{learning_case, bias, row.seed, true}, oracle, calc, spec.n, &t.oracle_view);
      break;
    case MethodSpec::Family::learner: {
      LearnerConfig cfg;
      cfg.learning_case = learning_case;
      cfg.propagation = m.propagation;
      cfg.heuristic = m.heuristic;
      cfg.p_yes_bias = bias;
      cfg.seed = row.seed;
      cfg.mistakes_enabled = mistakes;
      cfg.require_confirmation = spec.require_confirmation && learning_case == 1;
      cfg.max_queries = spec.max_queries;
      r = learn(cfg, oracle, calc, spec.n, &t.oracle_view);
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();

  // Learners that propagate reach the closed target; the others can only
  // reproduce what the oracle answers against.
  const bool closes = m.family == MethodSpec::Family::learner;
  const Qcn& expected = closes ? t.target : t.oracle_view;
  row.queries = r.stats.queries;
  if (spec.timing) row.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  row.mistakes_injected = oracle.mistakes();
  row.mistakes_detected = r.stats.detected_mistakes;
  row.backtracks = r.stats.backtracks;
  row.yes_rate_observed = r.stats.yes_rate();
  row.converged = !r.collapsed && r.network.same_candidates(expected);
  return row;
}

unsigned default_workers() {
  if (const char* env = std::getenv("QCN_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  struct Task {
    int learning_case;
    int p_yes;
    const std::string* method;
    int run;
  };
  // Task order is the canonical row order; results land at their task index.
  std::vector<Task> tasks;
  for (const int c : spec.cases) {
    for (const int p : spec.p_yes) {
      for (const auto& method : spec.methods) {
        for (int r = 0; r < spec.runs; ++r) tasks.push_back({c, p, &method, r});
      }
    }
  }
  std::vector<ResultRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      const Task& t = tasks[k];
      rows[k] = run_cell(spec, t.learning_case, t.p_yes, *t.method, t.run);
    }
  };
  const unsigned count = std::min<std::size_t>(spec.workers ? spec.workers : default_workers(), tasks.size());
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  return rows;
}

std::string_view csv_header() {
  return "case,calculus,n,p_yes,method,run_index,seed,queries,time_ms,mistakes_injected,mistakes_detected,"
         "backtracks,yes_rate_observed,converged";
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out(csv_header());
  out += '\n';
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%s,%d,%d,%s,%d,%llu,%zu,%.3f,%zu,%zu,%zu,%.4f,%d\n", r.learning_case,
                  r.calculus.c_str(), r.n, r.p_yes, r.method.c_str(), r.run_index,
                  static_cast<unsigned long long>(r.seed), r.queries, r.time_ms, r.mistakes_injected,
                  r.mistakes_detected, r.backtracks, r.yes_rate_observed, r.converged ? 1 : 0);
    out += buf;
  }
  return out;
}

std::vector<MethodSummary> summarize(const std::vector<ResultRow>& rows) {
  std::vector<MethodSummary> out;
  std::map<std::tuple<int, int, std::string>, std::size_t> index;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.learning_case, r.p_yes, r.method);
    auto [it, fresh] = index.try_emplace(key, out.size());
    if (fresh) out.push_back(MethodSummary{r.learning_case, r.p_yes, r.method});
    MethodSummary& s = out[it->second];
    ++s.runs;
    s.converged += r.converged ? 1 : 0;
    s.mean_queries += static_cast<double>(r.queries);
    s.mean_backtracks += static_cast<double>(r.backtracks);
    s.mean_detected += static_cast<double>(r.mistakes_detected);
    s.mean_injected += static_cast<double>(r.mistakes_injected);
  }
  for (auto& s : out) {
    s.mean_queries /= s.runs;
    s.mean_backtracks /= s.runs;
    s.mean_detected /= s.runs;
    s.mean_injected /= s.runs;
  }
  return out;
}

}  // namespace qcn
