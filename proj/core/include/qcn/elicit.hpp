#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcn/learner.hpp"

namespace qcn::elicit {

struct SessionConfig {
  std::string calculus = "ia";
  std::vector<std::string> names;
  int learning_case = 1;
  PropagationKind propagation = PropagationKind::pc;
  Heuristic heuristic = Heuristic::cardinality;
  bool mistakes_enabled = true;
  /// Case 1: an edge is learned only from a "yes", never by elimination.
  /// Without it a wrong "no" can leave a consistent but wrong network.
  bool require_confirmation = false;
  std::uint64_t seed = 0;
};

/// Parses a POST /sessions body. Throws ConfigError with a readable message.
SessionConfig parse_session_config(const std::string& json_body);

enum class SessionState { awaiting_answer, reasking, converged, collapsed };
std::string_view to_string(SessionState s);

struct HistoryEntry {
  Query query;
  bool yes = false;
  bool reask = false;     // answer to a re-posed query
  bool replayed = false;  // taken from an earlier re-confirmation, not asked
};

/// Change in candidate sets caused by one answer.
struct Delta {
  std::vector<Pruning> removed;
  std::vector<Pruning> restored;  // bits that came back after a backtrack
};

class StaleQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotAwaiting : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One elicitation: a learner driven by a human oracle. Mutations are
/// serialized by the owner (see SessionStore).
class Session {
 public:
  Session(std::string id, SessionConfig cfg);

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return cfg_; }
  SessionState state() const;
  std::optional<Query> current_query() const { return current_; }
  const std::vector<HistoryEntry>& history() const { return history_; }
  const Delta& last_delta() const { return delta_; }
  const Learner& learner() const { return learner_; }
  const Qcn& shape() const { return shape_; }

  /// Throws StaleQuery when query_id is not the outstanding one and
  /// NotAwaiting once the session has finished.
  void answer(std::uint64_t query_id, bool yes);

  /// Summary document: state, current query, stats, delta.
  std::string summary_json() const;
  /// Per-edge candidate/confirmed symbols, stats and delta.
  std::string network_json() const;
  /// Answers in stack order, each with its query, reask and replayed flags.
  std::string history_json() const;
  /// Config and history, enough to replay the session.
  std::string snapshot_json() const;

  mutable std::shared_mutex mutex;

 private:
  void advance();

  std::string id_;
  SessionConfig cfg_;
  Qcn shape_;
  Learner learner_;
  std::optional<Query> current_;
  std::vector<HistoryEntry> history_;
  Delta delta_;
};

/// In-memory session table. The table lock only guards lookups; each
/// session carries its own reader/writer lock.
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> snapshot_dir = std::nullopt);

  std::shared_ptr<Session> create(SessionConfig cfg);
  std::shared_ptr<Session> find(const std::string& id) const;
  bool erase(const std::string& id);
  std::size_t size() const;

  /// Writes <dir>/<id>.json when snapshots are enabled.
  void snapshot(const Session& s) const;

 private:
  std::string fresh_id();

  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::optional<std::filesystem::path> snapshot_dir_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;
};

struct Response {
  int status = 200;
  std::string body;  // JSON
};

/// Transport-independent routing of the HTTP protocol.
class Service {
 public:
  explicit Service(std::optional<std::filesystem::path> snapshot_dir = std::nullopt) : store_(snapshot_dir) {}

  Response handle(const std::string& method, const std::string& path, const std::string& body);
  SessionStore& store() { return store_; }

 private:
  SessionStore store_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  bool cors = false;
  std::optional<std::filesystem::path> snapshot_dir;
};

/// HTTP front of a Service.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket; returns the bound port. Throws std::runtime_error on failure.
  int bind();
  /// Serves until stop(). Call bind() first.
  void serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qcn::elicit
