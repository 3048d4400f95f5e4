#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcn/network.hpp"

namespace qcn {

struct Pruning {
  Edge edge;        // i < j
  Relation removed;  // bits dropped from the (i, j) candidates
};

struct PropagationResult {
  bool consistent = true;
  std::vector<Pruning> pruned;
  std::size_t revisions = 0;  // queue pops
  std::optional<Edge> emptied;

  std::size_t removed_count() const;
};

enum class CompositionMode {
  one_support,  // stop scanning once every candidate bit has a support
  naive,        // full composition, then intersect
};

struct PropagationOptions {
  CompositionMode composition = CompositionMode::one_support;
  /// When set, edges are popped from the work queue in a seeded random order
  /// instead of FIFO. Used to check that the fixpoint is order independent.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Path consistency over the complete graph. Leaves q at the largest
/// path-consistent subnetwork, or stops at the first emptied edge.
PropagationResult path_consistency(Qcn& q, const PropagationOptions& options = {});

/// Re-establishes path consistency after `changed` was restricted on a
/// network that was path consistent before the change.
PropagationResult path_consistency_incremental(Qcn& q, Edge changed, const PropagationOptions& options = {});

/// Path consistency with the work queue seeded by `seeds` only.
PropagationResult path_consistency_from(Qcn& q, std::span<const Edge> seeds, const PropagationOptions& options = {});

/// A chordal supergraph of a set of known edges.
class ChordalStructure {
 public:
  ChordalStructure() = default;
  explicit ChordalStructure(int n);

  int size() const { return n_; }
  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);

  /// Vertices adjacent to both i and j.
  std::vector<int> common_neighbors(int i, int j) const;

  std::vector<Edge> fill_edges;
  std::vector<Edge> edges;  // every edge of the chordal graph, i < j, sorted
  std::vector<std::array<int, 3>> triangles;  // a < b < c

 private:
  friend ChordalStructure triangulate(int n, std::span<const Edge> known_edges);

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adjacency_;  // n rows of `words_` 64-bit words
};

/// Greedy min-fill elimination; ties go to the lowest vertex index.
ChordalStructure triangulate(int n, std::span<const Edge> known_edges);
ChordalStructure triangulate(const Qcn& q, std::span<const Edge> known_edges);
/// Known edges are those whose candidates are not universal.
ChordalStructure triangulate(const Qcn& q);

/// The triangle rule enforced on the triangles of `cs` only.
PropagationResult partial_path_consistency(Qcn& q, const ChordalStructure& cs,
                                           const PropagationOptions& options = {});
PropagationResult partial_path_consistency_from(Qcn& q, const ChordalStructure& cs, std::span<const Edge> seeds,
                                                const PropagationOptions& options = {});

}  // namespace qcn
