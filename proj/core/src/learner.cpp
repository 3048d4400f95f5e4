#include "qcn/learner.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace qcn {

PropagationKind parse_propagation(std::string_view s) {
  if (s == "none") return PropagationKind::none;
  if (s == "pc") return PropagationKind::pc;
  if (s == "ppc") return PropagationKind::ppc;
  throw ConfigError("unknown propagation '" + std::string(s) + "' (expected none, pc or ppc)");
}

Heuristic parse_heuristic(std::string_view s) {
  if (s == "random") return Heuristic::random;
  if (s == "cardinality" || s == "card") return Heuristic::cardinality;
  if (s == "weight") return Heuristic::weight;
  if (s == "cardinality_descending" || s == "card-desc") return Heuristic::cardinality_descending;
  throw ConfigError("unknown heuristic '" + std::string(s) +
                    "' (expected random, cardinality, weight or cardinality_descending)");
}

std::string_view to_string(PropagationKind p) {
  switch (p) {
    case PropagationKind::none: return "none";
    case PropagationKind::pc: return "pc";
    case PropagationKind::ppc: return "ppc";
  }
  return "?";
}

std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::random: return "random";
    case Heuristic::cardinality: return "cardinality";
    case Heuristic::weight: return "weight";
    case Heuristic::cardinality_descending: return "cardinality_descending";
  }
  return "?";
}

void validate(const LearnerConfig& cfg) {
  if (cfg.learning_case < 1 || cfg.learning_case > 3) throw ConfigError("case must be 1, 2 or 3");
  if (cfg.propagation == PropagationKind::ppc && cfg.learning_case != 2)
    throw ConfigError("ppc propagation is only available for case 2");
  if (!(cfg.p_yes_bias >= 0.0 && cfg.p_yes_bias <= 1.0)) throw ConfigError("p_yes_bias must lie in [0, 1]");
}

int choose_primitive(Relation undecided, std::optional<Relation> target, double p_yes_bias,
                     const std::vector<int>& order, bool randomize, Rng& rng) {
  Relation pool = undecided;
  if (target) {
    const Relation yes_set = undecided & *target;
    const Relation no_set = undecided.minus(*target);
    const bool want_yes = rng.chance(p_yes_bias);
    pool = want_yes ? yes_set : no_set;
    if (pool.empty()) pool = want_yes ? no_set : yes_set;
  }
  if (randomize) {
    auto k = rng.below(static_cast<std::uint64_t>(pool.count()));
    int picked = -1;
    pool.for_each([&](int b) {
      if (picked < 0 && k-- == 0) picked = b;
    });
    return picked;
  }
  for (const int b : order) {
    if (pool.contains(b)) return b;
  }
  return pool.first();
}

Learner::Learner(CalculusPtr calc, int n, LearnerConfig cfg, const Qcn* target_hint)
    : calc_(std::move(calc)), cfg_(cfg), hint_(target_hint), g_(calc_, n), rng_(cfg.seed) {
  validate(cfg_);
  if (hint_ && (hint_->size() != n || hint_->calculus().name() != calc_->name()))
    throw ConfigError("target hint does not match the calculus or size");
  for (int b = 0; b < calc_->size(); ++b) order_.push_back(b);
  std::stable_sort(order_.begin(), order_.end(),
                   [this](int a, int b) { return calc_->weight(a) < calc_->weight(b); });
}

bool Learner::edge_resolved(std::size_t slot) const {
  const EdgeState& e = g_.edge(slot);
  switch (cfg_.learning_case) {
    case 1:
      return cfg_.require_confirmation ? !e.confirmed.empty() : e.candidates.count() <= 1;
    case 2:
      return e.universal_checked != UniversalCheck::unknown;
    default:
      return e.candidates == e.confirmed;
  }
}

std::optional<bool> Learner::original_answer() const {
  if (!reask_) return std::nullopt;
  return reask_->answer;
}

std::optional<Query> Learner::next_query() {
  while (status_ == LearnerStatus::running && !outstanding_) {
    if (reask_) {
      outstanding_ = reask_->query;
      break;
    }
    Query q = choose_query();
    if (const auto it = reconfirmed_.find(key(q)); it != reconfirmed_.end()) {
      // Already re-confirmed by the oracle during a backtrack: replay it.
      replayed_.emplace_back(q, it->second);
      step(q, it->second, false);
      continue;
    }
    outstanding_ = q;
  }
  if (!outstanding_) return std::nullopt;
  if (outstanding_->id == 0) outstanding_->id = next_id_++;
  return outstanding_;
}

std::uint64_t Learner::key(const Query& q) {
  return (static_cast<std::uint64_t>(q.kind == QueryKind::universal) << 62) |
         (static_cast<std::uint64_t>(q.i) << 40) | (static_cast<std::uint64_t>(q.j) << 16) |
         static_cast<std::uint64_t>(q.b + 1);
}

Query Learner::choose_query() {
  const std::size_t edges = g_.edge_count();

  // Case 2: an edge that got its "yes", or was narrowed to one primitive,
  // is settled by asking whether it is really unconstrained.
  if (cfg_.learning_case == 2) {
    for (std::size_t s = 0; s < edges; ++s) {
      const EdgeState& e = g_.edge(s);
      if (!edge_resolved(s) && (!e.confirmed.empty() || e.candidates.is_singleton())) {
        const Edge ij = g_.edge_at(s);
        return Query{QueryKind::universal, ij.i, ij.j, -1, 0};
      }
    }
  }

  auto undecided = [&](std::size_t s) { return g_.edge(s).candidates.minus(g_.edge(s).confirmed); };
  std::size_t pick = edges;
  if (cfg_.heuristic == Heuristic::random) {
    std::vector<std::size_t> open;
    for (std::size_t s = 0; s < edges; ++s) {
      if (!edge_resolved(s)) open.push_back(s);
    }
    if (!open.empty()) pick = open[rng_.below(open.size())];
  } else {
    long best = 0;
    for (std::size_t s = 0; s < edges; ++s) {
      if (edge_resolved(s)) continue;
      const Relation u = undecided(s);
      long score = 0;
      switch (cfg_.heuristic) {
        case Heuristic::cardinality: score = u.count(); break;
        case Heuristic::cardinality_descending: score = -u.count(); break;
        case Heuristic::weight: u.for_each([&](int b) { score += calc_->weight(b); }); break;
        case Heuristic::random: break;
      }
      if (pick == edges || score < best) {
        pick = s;
        best = score;
      }
    }
  }
  if (pick == edges) throw std::logic_error("no unresolved edge left to query");

  const Edge ij = g_.edge_at(pick);
  std::optional<Relation> target;
  if (hint_) target = hint_->relation(ij.i, ij.j);
  const int b = choose_primitive(undecided(pick), target, cfg_.p_yes_bias, order_,
                                 cfg_.heuristic == Heuristic::random, rng_);
  return Query{QueryKind::relation, ij.i, ij.j, b, 0};
}

void Learner::answer(bool yes) {
  if (!outstanding_) throw std::logic_error("no outstanding query to answer");
  const Query q = *outstanding_;
  outstanding_.reset();
  replayed_.clear();
  step(q, yes, true);
}

void Learner::step(Query q, bool yes, bool asked) {
  q.id = 0;
  if (asked) {
    ++stats_.queries;
    if (yes) ++stats_.yes_answers;
  }
  last_pruned_.clear();

  bool ok = true;
  if (reask_) {
    Frame frame = std::move(*reask_);
    reask_.reset();
    if (cfg_.reuse_reconfirmed) reconfirmed_[key(q)] = yes;
    if (frame.answer == yes) {
      // Confirmed as given; the mistake lies further down the stack.
      pop_until_reask();
      return;
    }
    ++stats_.detected_mistakes;
    stack_.push_back(Frame{g_, q, yes, chordal_, true});
    ok = apply(q, yes);
  } else {
    if (cfg_.mistakes_enabled) stack_.push_back(Frame{g_, q, yes, chordal_, !asked});
    ok = apply(q, yes);
  }
  if (!ok) {
    if (cfg_.mistakes_enabled) {
      ++stats_.backtracks;
      pop_until_reask();
    } else {
      status_ = LearnerStatus::collapsed;
    }
  } else {
    check_done();
  }
  if (status_ == LearnerStatus::running && cfg_.max_queries != 0 && stats_.queries >= cfg_.max_queries) {
    status_ = LearnerStatus::collapsed;
    budget_exhausted_ = true;
  }
}

void Learner::pop_until_reask() {
  while (!stack_.empty()) {
    Frame frame = std::move(stack_.back());
    stack_.pop_back();
    ++stats_.frames_popped;
    g_ = frame.snapshot;
    chordal_ = frame.chordal;
    collapsed_edge_.reset();
    // Answers already re-confirmed are not put to the oracle again.
    if (frame.reconfirmed) continue;
    reask_ = std::move(frame);
    return;
  }
  status_ = LearnerStatus::collapsed;
}

bool Learner::apply(const Query& q, bool yes) {
  const std::size_t slot = g_.edge_index(q.i, q.j);
  EdgeState& e = g_.edge(slot);
  const Relation before = e.candidates;

  if (q.kind == QueryKind::universal) {
    if (yes) {
      e.universal_checked = UniversalCheck::universal;
    } else {
      e.universal_checked = UniversalCheck::not_universal;
      if (!e.confirmed.empty()) e.candidates &= e.confirmed;
    }
  } else {
    const Relation b = Relation::single(q.b);
    switch (cfg_.learning_case) {
      case 1:
        if (yes) {
          e.candidates &= b;
          e.confirmed = e.candidates;
        } else {
          e.candidates = e.candidates.minus(b);
        }
        break;
      case 2:
      case 3:
        if (yes) {
          e.confirmed |= b & e.candidates;
        } else {
          e.candidates = e.candidates.minus(b);
        }
        break;
    }
  }
  e.confirmed &= e.candidates;

  const Edge ij = g_.edge_at(slot);
  if (before != e.candidates) last_pruned_.push_back({ij, before.minus(e.candidates)});
  if (e.candidates.empty()) {
    collapsed_edge_ = ij;
    return false;
  }
  if (before == e.candidates) return true;
  return propagate(ij);
}

bool Learner::propagate(Edge changed) {
  PropagationOptions opts;
  opts.composition = cfg_.composition;
  PropagationResult res;
  switch (cfg_.propagation) {
    case PropagationKind::none:
      return true;
    case PropagationKind::pc:
      res = path_consistency_incremental(g_, changed, opts);
      break;
    case PropagationKind::ppc: {
      std::vector<Edge> seeds{changed};
      if (!chordal_ || !chordal_->has_edge(changed.i, changed.j)) {
        ChordalStructure next = triangulate(g_);
        // Every triangle that is new contains a new edge; seed all three
        // sides of those so each orientation gets checked.
        for (const Edge& e : next.edges) {
          if (chordal_ && chordal_->has_edge(e.i, e.j)) continue;
          seeds.push_back(e);
          for (const int k : next.common_neighbors(e.i, e.j)) {
            seeds.push_back({std::min(e.i, k), std::max(e.i, k)});
            seeds.push_back({std::min(e.j, k), std::max(e.j, k)});
          }
        }
        chordal_ = std::move(next);
      }
      res = partial_path_consistency_from(g_, *chordal_, seeds, opts);
      break;
    }
  }
  stats_.pruned_by_pc += res.removed_count();
  last_pruned_.insert(last_pruned_.end(), res.pruned.begin(), res.pruned.end());
  if (!res.consistent) collapsed_edge_ = res.emptied;
  return res.consistent;
}

void Learner::check_done() {
  for (std::size_t s = 0; s < g_.edge_count(); ++s) {
    if (!edge_resolved(s)) return;
  }
  status_ = LearnerStatus::converged;
}

Qcn Learner::result() const {
  Qcn out = g_;
  for (std::size_t s = 0; s < out.edge_count(); ++s) {
    EdgeState& e = out.edge(s);
    if (e.universal_checked == UniversalCheck::universal) e.candidates = calc_->universal();
  }
  return out;
}

LearnResult learn(const LearnerConfig& cfg, Oracle& oracle, CalculusPtr calc, int n, const Qcn* target_hint) {
  const auto start = std::chrono::steady_clock::now();
  Learner learner(std::move(calc), n, cfg, target_hint);
  while (const auto q = learner.next_query()) {
    const Answer a = oracle.ask(*q, learner.is_reask());
    learner.answer(a.yes);
  }
  RunStats stats = learner.stats();
  stats.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {learner.result(), stats, learner.status() == LearnerStatus::collapsed, learner.budget_exhausted()};
}

LearnResult learn_with_mistakes(LearnerConfig cfg, Oracle& oracle, CalculusPtr calc, int n, const Qcn* target_hint) {
  cfg.mistakes_enabled = true;
  return learn(cfg, oracle, std::move(calc), n, target_hint);
}

std::string run_manifest(const LearnerConfig& cfg, const OracleConfig& oracle, const RunStats& stats,
                         const std::string& method) {
  nlohmann::json doc;
  doc["method"] = method;
  doc["learner"] = {{"case", cfg.learning_case},
                    {"propagation", to_string(cfg.propagation)},
                    {"heuristic", to_string(cfg.heuristic)},
                    {"p_yes_bias", cfg.p_yes_bias},
                    {"seed", cfg.seed},
                    {"mistakes_enabled", cfg.mistakes_enabled},
                    {"require_confirmation", cfg.require_confirmation}};
  doc["oracle"] = {{"p_mistake", oracle.p_mistake},
                   {"seed", oracle.seed},
                   {"reask_truthful", oracle.reask_truthful},
                   {"mistakes_apply_to", "relation and universal queries"}};
  doc["stats"] = {{"queries", stats.queries},
                  {"yes_answers", stats.yes_answers},
                  {"backtracks", stats.backtracks},
                  {"detected_mistakes", stats.detected_mistakes},
                  {"pruned_by_pc", stats.pruned_by_pc},
                  {"wall_time_ms", stats.wall_time_ms}};
  return doc.dump(2);
}

}  // namespace qcn
