#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcn/learner.hpp"

namespace qcn {

/// One learning method as named on the command line and in CSV rows.
struct MethodSpec {
  enum class Family { naive, conacq2, learner } family = Family::learner;
  PropagationKind propagation = PropagationKind::pc;
  Heuristic heuristic = Heuristic::random;
};

/// naive, conacq2, pc, pc-card, pc-weight, pc-card-desc and the ppc variants.
MethodSpec parse_method(std::string_view name);
const std::vector<std::string>& known_methods();

struct SweepSpec {
  std::vector<int> cases{1};
  int n = 50;
  std::string calculus = "ia";
  std::vector<int> p_yes{0};  // percent
  std::vector<std::string> methods{"naive", "pc"};
  int runs = 10;
  double p_mistake = 0.0;
  std::uint64_t base_seed = 1;
  double p_universal = 0.5;
  double extra_density = 0.3;
  /// Case 1 learner methods: an edge is only learned by a "yes".
  bool require_confirmation = false;
  /// Per-run query cap (0 = none); a capped run is reported as not converged.
  std::size_t max_queries = 0;
  /// Measure wall time. Off by default so the CSV is byte-stable.
  bool timing = false;
  /// Worker threads; 0 = QCN_WORKERS, else the hardware concurrency.
  unsigned workers = 0;
};

/// Throws ConfigError on an invalid spec (ppc outside case 2, unknown method, ...).
void validate(const SweepSpec& spec);

struct ResultRow {
  int learning_case = 1;
  std::string calculus;
  int n = 0;
  int p_yes = 0;
  std::string method;
  int run_index = 0;
  std::uint64_t seed = 0;
  std::size_t queries = 0;
  double time_ms = 0.0;
  std::size_t mistakes_injected = 0;
  std::size_t mistakes_detected = 0;
  std::size_t backtracks = 0;
  double yes_rate_observed = 0.0;
  /// Finished without collapse and equal to the expected network.
  bool converged = false;
};

/// Seed of the target network for (case, n, run); shared by every method and p_yes.
std::uint64_t target_seed(const SweepSpec& spec, int learning_case, int run_index);
/// Seed of one learning run; shared by every method so comparisons are paired.
std::uint64_t run_seed(const SweepSpec& spec, int learning_case, int p_yes, int run_index);

/// One (case, p_yes, method, run) cell.
ResultRow run_cell(const SweepSpec& spec, int learning_case, int p_yes, const std::string& method, int run_index);

/// Every cell of the spec, in canonical order (case, p_yes, method as listed, run).
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

std::string_view csv_header();
std::string to_csv(const std::vector<ResultRow>& rows);

struct MethodSummary {
  int learning_case = 1;
  int p_yes = 0;
  std::string method;
  int runs = 0;
  int converged = 0;
  double mean_queries = 0.0;
  double mean_backtracks = 0.0;
  double mean_detected = 0.0;
  double mean_injected = 0.0;
};

/// Per (case, p_yes, method) means, in first-appearance order.
std::vector<MethodSummary> summarize(const std::vector<ResultRow>& rows);

/// Worker count from QCN_WORKERS, else the hardware concurrency (at least 1).
unsigned default_workers();

}  // namespace qcn
