#include "qcn/propagation.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "qcn/random.hpp"

namespace qcn {

std::size_t PropagationResult::removed_count() const {
  std::size_t total = 0;
  for (const auto& p : pruned) total += static_cast<std::size_t>(p.removed.count());
  return total;
}

namespace {

/// Work-queue propagation over a dense n x n copy of the network. The
/// `Neighbors` policy yields the third vertices k to examine for edge (i, j).
class Propagator {
 public:
  Propagator(Qcn& q, const PropagationOptions& options)
      : q_(q), calc_(q.calculus()), n_(q.size()), options_(options), matrix_(static_cast<std::size_t>(n_ * n_)),
        before_(q.edge_count()), touched_flag_(q.edge_count(), false), queued_(q.edge_count(), false) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const Relation r = q.edge(i, j).candidates;
        at(i, j) = r;
        at(j, i) = calc_.inverse(r);
      }
    }
    if (options.shuffle_seed) rng_.emplace(*options.shuffle_seed);
  }

  void push(int i, int j) {
    if (i > j) std::swap(i, j);
    const std::size_t slot = q_.edge_index(i, j);
    if (queued_[slot]) return;
    queued_[slot] = true;
    queue_.push_back({i, j});
  }

  template <class Neighbors>
  PropagationResult run(Neighbors&& neighbors) {
    PropagationResult result;
    // An emptied seed is already a collapse.
    for (const auto& e : queue_) {
      if (at(e.i, e.j).empty()) {
        result.consistent = false;
        result.emptied = e;
        return finish(std::move(result));
      }
    }
    while (!queue_.empty()) {
      const Edge e = pop();
      queued_[q_.edge_index(e.i, e.j)] = false;
      ++result.revisions;
      const int i = e.i;
      const int j = e.j;
      bool failed = false;
      neighbors(i, j, [&](int k) {
        if (failed) return;
        // (i,k) against (i,j)(j,k), then (k,j) against (k,i)(i,j).
        if (!revise(i, k, at(i, j), at(j, k)) || !revise(k, j, at(k, i), at(i, j))) failed = true;
      });
      if (failed) {
        result.consistent = false;
        result.emptied = emptied_;
        break;
      }
    }
    return finish(std::move(result));
  }

 private:
  Relation& at(int i, int j) { return matrix_[static_cast<std::size_t>(i * n_ + j)]; }

  Edge pop() {
    if (!rng_) {
      const Edge e = queue_.front();
      queue_.pop_front();
      return e;
    }
    const auto pick = static_cast<std::size_t>(rng_->below(queue_.size()));
    std::swap(queue_[pick], queue_.back());
    const Edge e = queue_.back();
    queue_.pop_back();
    return e;
  }

  // Returns false when (a, b) became empty.
  bool revise(int a, int b, Relation left, Relation right) {
    const Relation current = at(a, b);
    const Relation next = options_.composition == CompositionMode::one_support
                              ? calc_.compose_within(left, right, current)
                              : calc_.compose(left, right) & current;
    if (next == current) return true;
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    const std::size_t slot = q_.edge_index(lo, hi);
    if (!touched_flag_[slot]) {
      touched_flag_[slot] = true;
      before_[slot] = at(lo, hi);
      touched_.push_back(slot);
    }
    at(a, b) = next;
    at(b, a) = calc_.inverse(next);
    if (next.empty()) {
      emptied_ = Edge{lo, hi};
      return false;
    }
    push(lo, hi);
    return true;
  }

  PropagationResult finish(PropagationResult result) {
    std::sort(touched_.begin(), touched_.end());
    for (const std::size_t slot : touched_) {
      const Edge e = q_.edge_at(slot);
      EdgeState& state = q_.edge(slot);
      state.candidates = at(e.i, e.j);
      state.confirmed &= state.candidates;
      result.pruned.push_back({e, before_[slot].minus(state.candidates)});
    }
    return result;
  }

  Qcn& q_;
  const Calculus& calc_;
  int n_;
  PropagationOptions options_;
  std::vector<Relation> matrix_;
  std::vector<Relation> before_;
  std::vector<bool> touched_flag_;
  std::vector<std::size_t> touched_;
  std::vector<bool> queued_;
  std::deque<Edge> queue_;
  std::optional<Rng> rng_;
  Edge emptied_;
};

auto all_other_vertices(int n) {
  return [n](int i, int j, auto&& visit) {
    for (int k = 0; k < n; ++k) {
      if (k != i && k != j) visit(k);
    }
  };
}

}  // namespace

PropagationResult path_consistency(Qcn& q, const PropagationOptions& options) {
  Propagator prop(q, options);
  for (std::size_t e = 0; e < q.edge_count(); ++e) prop.push(q.edge_at(e).i, q.edge_at(e).j);
  return prop.run(all_other_vertices(q.size()));
}

PropagationResult path_consistency_incremental(Qcn& q, Edge changed, const PropagationOptions& options) {
  const Edge seeds[] = {changed};
  return path_consistency_from(q, seeds, options);
}

PropagationResult path_consistency_from(Qcn& q, std::span<const Edge> seeds, const PropagationOptions& options) {
  Propagator prop(q, options);
  for (const Edge& e : seeds) prop.push(e.i, e.j);
  return prop.run(all_other_vertices(q.size()));
}

// ---------------------------------------------------------------------------
// Chordal structure and partial path consistency

ChordalStructure::ChordalStructure(int n)
    : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64), adjacency_(static_cast<std::size_t>(n) * words_, 0) {}

bool ChordalStructure::has_edge(int i, int j) const {
  return (adjacency_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1u;
}

void ChordalStructure::add_edge(int i, int j) {
  adjacency_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] |= std::uint64_t{1} << (j % 64);
  adjacency_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
}

std::vector<int> ChordalStructure::common_neighbors(int i, int j) const {
  std::vector<int> out;
  const std::uint64_t* a = &adjacency_[static_cast<std::size_t>(i) * words_];
  const std::uint64_t* b = &adjacency_[static_cast<std::size_t>(j) * words_];
  for (std::size_t w = 0; w < words_; ++w) {
    for (std::uint64_t bits = a[w] & b[w]; bits != 0; bits &= bits - 1)
      out.push_back(static_cast<int>(w * 64) + std::countr_zero(bits));
  }
  return out;
}

ChordalStructure triangulate(int n, std::span<const Edge> known_edges) {
  ChordalStructure cs(n);
  for (const Edge& e : known_edges) {
    if (e.i == e.j || e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) throw NetworkError("triangulate: invalid edge");
    cs.add_edge(e.i, e.j);
  }

  // Elimination works on a scratch copy; fill edges go into both.
  const std::size_t words = cs.words_;
  std::vector<std::uint64_t> adj = cs.adjacency_;
  std::vector<std::uint64_t> alive(words, 0);
  for (int v = 0; v < n; ++v) alive[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
  auto row = [&](int v) { return &adj[static_cast<std::size_t>(v) * words]; };
  auto live_neighbors = [&](int v) {
    std::vector<int> out;
    const std::uint64_t* r = row(v);
    for (std::size_t w = 0; w < words; ++w) {
      for (std::uint64_t bits = r[w] & alive[w]; bits != 0; bits &= bits - 1)
        out.push_back(static_cast<int>(w * 64) + std::countr_zero(bits));
    }
    return out;
  };
  auto fill_count = [&](int v) {
    const std::uint64_t* rv = row(v);
    long missing = 0;
    for (const int u : live_neighbors(v)) {
      const std::uint64_t* ru = row(u);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t others = rv[w] & alive[w] & ~ru[w];
        if (w == static_cast<std::size_t>(u) / 64) others &= ~(std::uint64_t{1} << (u % 64));
        missing += std::popcount(others);
      }
    }
    return missing / 2;
  };

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = 0;
    for (int v = 0; v < n; ++v) {
      if (!((alive[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1u)) continue;
      const long f = fill_count(v);
      if (best < 0 || f < best_fill) {
        best = v;
        best_fill = f;
      }
    }
    const auto nb = live_neighbors(best);
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        const int u = nb[a];
        const int w = nb[b];
        if ((row(u)[static_cast<std::size_t>(w) / 64] >> (w % 64)) & 1u) continue;
        row(u)[static_cast<std::size_t>(w) / 64] |= std::uint64_t{1} << (w % 64);
        row(w)[static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
        cs.add_edge(u, w);
        cs.fill_edges.push_back({std::min(u, w), std::max(u, w)});
      }
    }
    alive[static_cast<std::size_t>(best) / 64] &= ~(std::uint64_t{1} << (best % 64));
  }

  std::sort(cs.fill_edges.begin(), cs.fill_edges.end());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!cs.has_edge(i, j)) continue;
      cs.edges.push_back({i, j});
      for (const int k : cs.common_neighbors(i, j)) {
        if (k > j) cs.triangles.push_back({i, j, k});
      }
    }
  }
  return cs;
}

ChordalStructure triangulate(const Qcn& q, std::span<const Edge> known_edges) {
  return triangulate(q.size(), known_edges);
}

ChordalStructure triangulate(const Qcn& q) {
  std::vector<Edge> known;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    if (q.edge(e).candidates != q.calculus().universal()) known.push_back(q.edge_at(e));
  }
  return triangulate(q.size(), known);
}

PropagationResult partial_path_consistency(Qcn& q, const ChordalStructure& cs, const PropagationOptions& options) {
  return partial_path_consistency_from(q, cs, cs.edges, options);
}

PropagationResult partial_path_consistency_from(Qcn& q, const ChordalStructure& cs, std::span<const Edge> seeds,
                                                const PropagationOptions& options) {
  if (cs.size() != q.size()) throw NetworkError("chordal structure does not match the network size");
  Propagator prop(q, options);
  for (const Edge& e : seeds) {
    if (cs.has_edge(e.i, e.j)) prop.push(e.i, e.j);
  }
  return prop.run([&cs](int i, int j, auto&& visit) {
    for (const int k : cs.common_neighbors(i, j)) visit(k);
  });
}

}  // namespace qcn
