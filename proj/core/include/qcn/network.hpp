#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcn/algebra.hpp"

namespace qcn {

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class UniversalCheck { unknown, universal, not_universal };

/// Learner-side knowledge about one edge. confirmed is always a subset of
/// candidates; empty candidates mean the network has collapsed.
struct EdgeState {
  Relation candidates;
  Relation confirmed;
  UniversalCheck universal_checked = UniversalCheck::unknown;

  friend bool operator==(const EdgeState&, const EdgeState&) = default;
};

struct Edge {
  int i = 0;
  int j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Qualitative constraint network over n variables. Only edges (i, j) with
/// i < j are stored; reading (j, i) yields the converse.
class Qcn {
 public:
  Qcn(CalculusPtr calculus, int n);

  /// All edges universal, nothing confirmed. Throws NetworkError for n < 2.
  static Qcn universal(CalculusPtr calculus, int n);

  const Calculus& calculus() const { return *calculus_; }
  const CalculusPtr& calculus_ptr() const { return calculus_; }
  int size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t edge_index(int i, int j) const;
  Edge edge_at(std::size_t index) const { return edge_list_[index]; }

  /// Candidate relation from i to j (converse view when i > j).
  Relation relation(int i, int j) const;
  void set_relation(int i, int j, Relation r);

  /// Confirmed relation from i to j (converse view when i > j).
  Relation confirmed(int i, int j) const;
  void set_confirmed(int i, int j, Relation r);

  const EdgeState& edge(int i, int j) const { return edges_[edge_index(i, j)]; }
  EdgeState& edge(int i, int j) { return edges_[edge_index(i, j)]; }
  const EdgeState& edge(std::size_t index) const { return edges_[index]; }
  EdgeState& edge(std::size_t index) { return edges_[index]; }
  const std::vector<EdgeState>& edges() const { return edges_; }

  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names);
  /// Variable label, falling back to "v<i>".
  std::string name(int i) const;

  bool has_empty_edge() const;

  /// Same calculus and size, and equal candidates and confirmed sets on
  /// every edge. Names and universal-check markers are ignored.
  bool same_relations(const Qcn& other) const;
  /// Same calculus and size, and equal candidate sets. This is the notion
  /// of "learned network equals target".
  bool same_candidates(const Qcn& other) const;
  /// Field-wise equality, names included.
  friend bool operator==(const Qcn& a, const Qcn& b);

 private:
  void check_pair(int i, int j) const;

  CalculusPtr calculus_;
  int n_ = 0;
  std::vector<EdgeState> edges_;
  std::vector<Edge> edge_list_;
  std::vector<std::string> names_;
};

/// One basic relation per edge (i < j), indexed like Qcn::edge_index.
struct Scenario {
  std::vector<int> assignment;
  friend bool operator==(const Scenario&, const Scenario&) = default;
  friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

/// Largest n accepted by the exhaustive scenario search for a calculus.
int scenario_search_limit(const Calculus& calc);

/// Every assignment of one candidate per edge that satisfies all triangles,
/// up to `limit` results. Throws NetworkError above scenario_search_limit.
std::vector<Scenario> enumerate_scenarios(const Qcn& q, std::size_t limit = static_cast<std::size_t>(-1));

/// True if `s` picks a candidate on every edge and every triangle composes.
bool is_valid_scenario(const Qcn& q, const Scenario& s);

/// Network whose edges are the singletons of `s`.
Qcn scenario_network(const Qcn& shape, const Scenario& s);

/// JSON document: calculus, n, optional names, constraints [{i, j, rels,
/// confirmed?, universal?}]. Edges that are universal with nothing confirmed
/// are omitted.
std::string serialize(const Qcn& q);
/// Missing edges default to universal. Throws NetworkError on unknown
/// calculus, bad indices, duplicate edges or unknown symbols.
Qcn parse_qcn(std::string_view text);

Qcn read_qcn_file(const std::string& path);
void write_qcn_file(const Qcn& q, const std::string& path);

}  // namespace qcn
