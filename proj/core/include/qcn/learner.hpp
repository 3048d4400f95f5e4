#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qcn/network.hpp"
#include "qcn/oracle.hpp"
#include "qcn/propagation.hpp"
#include "qcn/random.hpp"

namespace qcn {

enum class PropagationKind { none, pc, ppc };
enum class Heuristic { random, cardinality, weight, cardinality_descending };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PropagationKind parse_propagation(std::string_view s);
Heuristic parse_heuristic(std::string_view s);
std::string_view to_string(PropagationKind p);
std::string_view to_string(Heuristic h);

struct LearnerConfig {
  int learning_case = 1;
  PropagationKind propagation = PropagationKind::pc;
  Heuristic heuristic = Heuristic::random;
  /// Probability of asking about a primitive the hidden target contains.
  /// Only used when a target hint is supplied (simulation).
  double p_yes_bias = 0.5;
  std::uint64_t seed = 0;
  /// Snapshot before every query and backtrack on inconsistency.
  bool mistakes_enabled = false;
  /// Case 1 only: an edge counts as learned only after a "yes", never by
  /// elimination. This is how the naive baseline behaves.
  bool require_confirmation = false;
  CompositionMode composition = CompositionMode::one_support;
  /// Answers the oracle gave when a query was re-posed during a backtrack
  /// are remembered; if the same query comes up again later it is replayed
  /// from memory instead of being asked a third time.
  bool reuse_reconfirmed = true;
  /// Stop (as a collapse) once this many queries were asked; 0 = no limit.
  std::size_t max_queries = 0;
};

/// Throws ConfigError for out-of-range fields or ppc outside case 2.
void validate(const LearnerConfig& cfg);

struct RunStats {
  std::size_t queries = 0;
  std::size_t yes_answers = 0;
  std::size_t backtracks = 0;  // inconsistencies that started a backtrack
  std::size_t frames_popped = 0;
  std::size_t detected_mistakes = 0;
  std::size_t pruned_by_pc = 0;
  double wall_time_ms = 0.0;

  double yes_rate() const { return queries == 0 ? 0.0 : static_cast<double>(yes_answers) / static_cast<double>(queries); }
};

enum class LearnerStatus { running, converged, collapsed };

/// Step-wise acquisition engine. The caller alternates next_query() and
/// answer(); the same engine serves simulated and human oracles.
class Learner {
 public:
  /// `target_hint`, when given, must outlive the learner. It only steers
  /// which primitive is asked (p_yes_bias); answers still come from outside.
  Learner(CalculusPtr calc, int n, LearnerConfig cfg, const Qcn* target_hint = nullptr);

  /// The outstanding query, choosing one if needed. Empty once the run has
  /// converged or collapsed.
  std::optional<Query> next_query();
  /// True when the outstanding query re-poses an earlier one after an
  /// inconsistency.
  bool is_reask() const { return reask_.has_value(); }
  /// Answer originally given to the query being re-posed.
  std::optional<bool> original_answer() const;

  /// Applies the answer to the outstanding query. Throws std::logic_error
  /// when no query is outstanding.
  void answer(bool yes);

  LearnerStatus status() const { return status_; }
  const RunStats& stats() const { return stats_; }
  const LearnerConfig& config() const { return cfg_; }
  /// The working network (case 2 keeps pruned candidates on universal edges).
  const Qcn& network() const { return g_; }
  /// The learned network: the working network with confirmed-universal
  /// edges widened back to the universal relation.
  Qcn result() const;
  /// Primitives removed by the last answer, by the answer itself or by
  /// propagation.
  const std::vector<Pruning>& last_pruned() const { return last_pruned_; }
  std::optional<Edge> collapsed_edge() const { return collapsed_edge_; }
  std::size_t stack_depth() const { return stack_.size(); }
  bool budget_exhausted() const { return budget_exhausted_; }

  bool edge_resolved(std::size_t slot) const;
  /// Queries answered from the re-confirmation cache since the last answer(),
  /// in the order they were replayed.
  const std::vector<std::pair<Query, bool>>& replayed() const { return replayed_; }

 private:
  struct Frame {
    Qcn snapshot;
    Query query;
    bool answer;
    std::optional<ChordalStructure> chordal;
    /// Answer known to be final (replayed, or corrected on a reask).
    bool reconfirmed = false;
  };

  Query choose_query();
  void step(Query q, bool yes, bool asked);
  static std::uint64_t key(const Query& q);
  /// Applies `yes` to `q` and propagates. False on inconsistency.
  bool apply(const Query& q, bool yes);
  bool propagate(Edge changed);
  void pop_until_reask();
  void check_done();

  CalculusPtr calc_;
  LearnerConfig cfg_;
  const Qcn* hint_;
  Qcn g_;
  Rng rng_;
  std::vector<int> order_;  // primitives by ascending weight, then id
  LearnerStatus status_ = LearnerStatus::running;
  std::optional<Query> outstanding_;
  std::optional<Frame> reask_;  // popped frame being re-posed
  std::vector<Frame> stack_;
  std::uint64_t next_id_ = 1;
  RunStats stats_;
  std::vector<Pruning> last_pruned_;
  std::optional<Edge> collapsed_edge_;
  std::optional<ChordalStructure> chordal_;
  bool budget_exhausted_ = false;
  std::unordered_map<std::uint64_t, bool> reconfirmed_;
  std::vector<std::pair<Query, bool>> replayed_;
};

struct LearnResult {
  Qcn network;
  RunStats stats;
  bool collapsed = false;
  bool budget_exhausted = false;
};

/// Runs a learner to completion against `oracle`.
LearnResult learn(const LearnerConfig& cfg, Oracle& oracle, CalculusPtr calc, int n, const Qcn* target_hint = nullptr);
/// learn() with snapshot backtracking switched on.
LearnResult learn_with_mistakes(LearnerConfig cfg, Oracle& oracle, CalculusPtr calc, int n,
                                const Qcn* target_hint = nullptr);

/// Edge choice shared by the learner and the baselines: picks the
/// primitive among `undecided`, steered towards or away from `target` by
/// `p_yes_bias`. `order` lists primitives in preferred order; with
/// `randomize` the pick inside the chosen subset is uniform instead.
int choose_primitive(Relation undecided, std::optional<Relation> target, double p_yes_bias,
                     const std::vector<int>& order, bool randomize, Rng& rng);

/// JSON record of one run: learner config, oracle config, stats.
std::string run_manifest(const LearnerConfig& cfg, const OracleConfig& oracle, const RunStats& stats,
                         const std::string& method);

}  // namespace qcn
