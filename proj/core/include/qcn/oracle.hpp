#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcn/network.hpp"
#include "qcn/random.hpp"

namespace qcn {

enum class QueryKind { relation, universal };

struct Query {
  QueryKind kind = QueryKind::relation;
  int i = 0;  // i < j
  int j = 1;
  int b = -1;  // basic relation id; relation queries only
  /// Sequence number assigned by whoever poses the query.
  std::uint64_t id = 0;

  friend bool operator==(const Query&, const Query&) = default;
};

struct Answer {
  bool yes = false;
  /// Set by simulated oracles when the reply is a deliberate error. The
  /// learner never reads it.
  bool was_mistake = false;
};

struct OracleConfig {
  double p_mistake = 0.0;
  std::uint64_t seed = 0;
  bool reask_truthful = true;
};

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual Answer ask(const Query& q, bool is_reask) = 0;
};

/// Truthful answer of `target` to `q`.
bool truthful_answer(const Qcn& target, const Query& q);

/// Answers from a hidden target; first asks are flipped with probability
/// p_mistake, reasks too unless reask_truthful.
class SimulatedOracle final : public Oracle {
 public:
  SimulatedOracle(const Qcn& target, OracleConfig cfg);

  Answer ask(const Query& q, bool is_reask) override;

  std::size_t asked() const { return asked_; }
  std::size_t mistakes() const { return mistakes_; }
  std::size_t yes_count() const { return yes_; }

 private:
  const Qcn& target_;
  OracleConfig cfg_;
  Rng rng_;
  std::size_t asked_ = 0;
  std::size_t mistakes_ = 0;
  std::size_t yes_ = 0;
};

/// "Does 'A' overlap 'B'?" or "Is there no known constraint between 'A' and 'B'?".
std::string render_query(const Query& q, const std::vector<std::string>& names, const Calculus& calc);
std::string render_query(const Query& q, const Qcn& shape);

}  // namespace qcn
