#include <algorithm>
#include <fstream>
#include <random>

#include "json.hpp"
#include "qcn/elicit.hpp"
#include "qcn/oracle.hpp"

namespace qcn::elicit {

using nlohmann::json;

std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::awaiting_answer: return "awaiting_answer";
    case SessionState::reasking: return "reasking";
    case SessionState::converged: return "converged";
    case SessionState::collapsed: return "collapsed";
  }
  return "?";
}

SessionConfig parse_session_config(const std::string& json_body) {
  json doc;
  try {
    doc = json::parse(json_body.empty() ? "{}" : json_body);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON body: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("request body must be a JSON object");
  SessionConfig cfg;
  try {
    cfg.calculus = doc.value("calculus", cfg.calculus);
    if (doc.contains("names")) cfg.names = doc["names"].get<std::vector<std::string>>();
    if (doc.contains("n")) {
      const int n = doc["n"].get<int>();
      if (n < 2) throw ConfigError("a session needs at least 2 entities, got " + std::to_string(n));
      if (cfg.names.empty()) {
        for (int i = 0; i < n; ++i) cfg.names.push_back("v" + std::to_string(i));
      } else if (static_cast<int>(cfg.names.size()) != n) {
        throw ConfigError("n does not match the number of names");
      }
    }
    if (cfg.names.size() < 2)
      throw ConfigError("a session needs at least 2 entities, got " + std::to_string(cfg.names.size()));
    cfg.learning_case = doc.value("case", cfg.learning_case);
    if (doc.contains("heuristic")) cfg.heuristic = parse_heuristic(doc["heuristic"].get<std::string>());
    if (doc.contains("propagation")) cfg.propagation = parse_propagation(doc["propagation"].get<std::string>());
    cfg.mistakes_enabled = doc.value("mistakes_enabled", cfg.mistakes_enabled);
    cfg.require_confirmation = doc.value("confirm", cfg.require_confirmation);
    cfg.seed = doc.value("seed", cfg.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid session config: ") + e.what());
  }
  try {
    load_calculus(cfg.calculus);
  } catch (const CalculusError& e) {
    throw ConfigError(std::string("unknown calculus: ") + e.what());
  }
  return cfg;
}

namespace {

LearnerConfig learner_config(const SessionConfig& cfg) {
  LearnerConfig lc;
  lc.learning_case = cfg.learning_case;
  lc.propagation = cfg.propagation;
  lc.heuristic = cfg.heuristic;
  lc.seed = cfg.seed;
  lc.mistakes_enabled = cfg.mistakes_enabled;
  lc.require_confirmation = cfg.require_confirmation && cfg.learning_case == 1;
  return lc;
}

Qcn make_shape(const SessionConfig& cfg) {
  Qcn q(load_calculus(cfg.calculus), static_cast<int>(cfg.names.size()));
  q.set_names(cfg.names);
  return q;
}

bool same_question(const Query& a, const Query& b) {
  return a.kind == b.kind && a.i == b.i && a.j == b.j && a.b == b.b;
}

json query_json(const Query& q, const Qcn& shape) {
  json j{{"id", q.id},
         {"kind", q.kind == QueryKind::universal ? "universal" : "relation"},
         {"i", q.i},
         {"j", q.j},
         {"text", render_query(q, shape)}};
  if (q.kind == QueryKind::relation) j["symbol"] = shape.calculus().symbol(q.b);
  return j;
}

json prunings_json(const std::vector<Pruning>& list, const Calculus& calc) {
  json out = json::array();
  for (const auto& p : list) out.push_back({{"i", p.edge.i}, {"j", p.edge.j}, {"symbols", calc.symbols(p.removed)}});
  return out;
}

json stats_json(const RunStats& s) {
  return {{"queries", s.queries},
          {"yes_answers", s.yes_answers},
          {"backtracks", s.backtracks},
          {"frames_popped", s.frames_popped},
          {"detected_mistakes", s.detected_mistakes},
          {"pruned_by_pc", s.pruned_by_pc}};
}

}  // namespace

Session::Session(std::string id, SessionConfig cfg)
    : id_(std::move(id)),
      cfg_(std::move(cfg)),
      shape_(make_shape(cfg_)),
      learner_(shape_.calculus_ptr(), shape_.size(), learner_config(cfg_)) {
  current_ = learner_.next_query();
}

SessionState Session::state() const {
  switch (learner_.status()) {
    case LearnerStatus::converged: return SessionState::converged;
    case LearnerStatus::collapsed: return SessionState::collapsed;
    case LearnerStatus::running: break;
  }
  return learner_.is_reask() ? SessionState::reasking : SessionState::awaiting_answer;
}

void Session::answer(std::uint64_t query_id, bool yes) {
  if (!current_) throw NotAwaiting("session is " + std::string(to_string(state())) + "; no query is outstanding");
  if (query_id != current_->id)
    throw StaleQuery("query " + std::to_string(query_id) + " is not the outstanding query " +
                     std::to_string(current_->id));

  const Qcn before = learner_.network();
  const bool reask = learner_.is_reask();
  if (reask) {
    // The re-posed answer replaces the original one and everything after it.
    const auto it = std::find_if(history_.rbegin(), history_.rend(),
                                 [&](const HistoryEntry& h) { return same_question(h.query, *current_); });
    if (it != history_.rend()) history_.erase(std::prev(it.base()), history_.end());
  }
  history_.push_back(HistoryEntry{*current_, yes, reask, false});
  learner_.answer(yes);
  current_ = learner_.next_query();
  for (const auto& [q, a] : learner_.replayed()) history_.push_back(HistoryEntry{q, a, false, true});

  // Backtracking can give candidates back, so both directions are reported.
  delta_ = Delta{};
  const Qcn& after = learner_.network();
  for (std::size_t s = 0; s < after.edge_count(); ++s) {
    const Relation b = before.edge(s).candidates;
    const Relation a = after.edge(s).candidates;
    if (!b.minus(a).empty()) delta_.removed.push_back({after.edge_at(s), b.minus(a)});
    if (!a.minus(b).empty()) delta_.restored.push_back({after.edge_at(s), a.minus(b)});
  }
}

std::string Session::summary_json() const {
  const Calculus& calc = shape_.calculus();
  json doc{{"id", id_},
           {"state", to_string(state())},
           {"calculus", calc.name()},
           {"n", shape_.size()},
           {"names", cfg_.names},
           {"config",
            {{"case", cfg_.learning_case},
             {"heuristic", to_string(cfg_.heuristic)},
             {"propagation", to_string(cfg_.propagation)},
             {"mistakes_enabled", cfg_.mistakes_enabled},
             {"confirm", cfg_.require_confirmation},
             {"seed", cfg_.seed}}},
           {"stats", stats_json(learner_.stats())},
           {"pruned", prunings_json(delta_.removed, calc)},
           {"restored", prunings_json(delta_.restored, calc)},
           {"history_length", history_.size()}};
  if (current_) {
    json q = query_json(*current_, shape_);
    q["reask"] = learner_.is_reask();
    if (const auto orig = learner_.original_answer()) q["original_answer"] = *orig;
    doc["query"] = std::move(q);
  } else {
    doc["query"] = nullptr;
  }
  if (const auto e = learner_.collapsed_edge(); e && state() == SessionState::collapsed)
    doc["collapsed_edge"] = {{"i", e->i}, {"j", e->j}};
  return doc.dump();
}

std::string Session::network_json() const {
  const Calculus& calc = shape_.calculus();
  const Qcn view = state() == SessionState::converged ? learner_.result() : learner_.network();
  json edges = json::array();
  for (std::size_t s = 0; s < view.edge_count(); ++s) {
    const EdgeState& e = view.edge(s);
    const Edge ij = view.edge_at(s);
    const char* universal = e.universal_checked == UniversalCheck::universal       ? "universal"
                            : e.universal_checked == UniversalCheck::not_universal ? "not_universal"
                                                                                   : "unknown";
    edges.push_back({{"i", ij.i},
                     {"j", ij.j},
                     {"candidates", calc.symbols(e.candidates)},
                     {"confirmed", calc.symbols(e.confirmed)},
                     {"universal", universal},
                     {"resolved", learner_.edge_resolved(s)}});
  }
  json doc{{"id", id_},
           {"state", to_string(state())},
           {"calculus", calc.name()},
           {"n", view.size()},
           {"names", cfg_.names},
           {"edges", std::move(edges)},
           {"stats", stats_json(learner_.stats())},
           {"pruned", prunings_json(delta_.removed, calc)},
           {"restored", prunings_json(delta_.restored, calc)}};
  return doc.dump();
}

std::string Session::history_json() const {
  json history = json::array();
  for (const auto& h : history_) {
    json e = query_json(h.query, shape_);
    e["yes"] = h.yes;
    e["reask"] = h.reask;
    e["replayed"] = h.replayed;
    history.push_back(std::move(e));
  }
  return json{{"id", id_}, {"history", std::move(history)}}.dump();
}

std::string Session::snapshot_json() const {
  json doc = json::parse(summary_json());
  doc["history"] = json::parse(history_json())["history"];
  doc["network"] = json::parse(serialize(learner_.network()));
  return doc.dump(2);
}

SessionStore::SessionStore(std::optional<std::filesystem::path> snapshot_dir)
    : snapshot_dir_(std::move(snapshot_dir)), salt_(std::random_device{}()) {
  if (snapshot_dir_) std::filesystem::create_directories(*snapshot_dir_);
}

std::string SessionStore::fresh_id() {
  static constexpr char hex[] = "0123456789abcdef";
  const std::uint64_t v = mix64(salt_ ^ mix64(++counter_));
  std::string id;
  for (int k = 0; k < 16; ++k) id += hex[(v >> (4 * k)) & 0xf];
  return id;
}

std::shared_ptr<Session> SessionStore::create(SessionConfig cfg) {
  std::string id;
  {
    std::lock_guard lock(mutex_);
    do {
      id = fresh_id();
    } while (sessions_.contains(id));
  }
  auto session = std::make_shared<Session>(id, std::move(cfg));
  {
    std::lock_guard lock(mutex_);
    sessions_.emplace(id, session);
  }
  snapshot(*session);
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionStore::erase(const std::string& id) {
  bool removed;
  {
    std::lock_guard lock(mutex_);
    removed = sessions_.erase(id) > 0;
  }
  if (removed && snapshot_dir_) {
    std::error_code ec;
    std::filesystem::remove(*snapshot_dir_ / (id + ".json"), ec);
  }
  return removed;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

void SessionStore::snapshot(const Session& s) const {
  if (!snapshot_dir_) return;
  const auto path = *snapshot_dir_ / (s.id() + ".json");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << s.snapshot_json();
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qcn::elicit
