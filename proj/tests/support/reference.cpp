#include "reference.hpp"

#include <algorithm>

#include "qcn/generation.hpp"

namespace qcn::ref {

namespace {

std::vector<Relation> from_triples(int p, int (*rel)(Interval, Interval), int span) {
  std::vector<Interval> all;
  for (int a = 0; a < span; ++a) {
    for (int b = a + 1; b < span; ++b) all.push_back({a, b});
  }
  std::vector<Relation> table(static_cast<std::size_t>(p * p));
  for (const auto& x : all) {
    for (const auto& y : all) {
      const int xy = rel(x, y);
      for (const auto& z : all) {
        table[static_cast<std::size_t>(xy * p + rel(y, z))] |= Relation::single(rel(x, z));
      }
    }
  }
  return table;
}

int point_rel(Interval x, Interval y) { return x.first < y.first ? 0 : x.first == y.first ? 1 : 2; }

}  // namespace

// Six endpoints cover every configuration of three intervals.
std::vector<Relation> interval_composition() { return from_triples(13, relation_from_intervals, 7); }
std::vector<Relation> region_composition_1d() { return from_triples(8, relation_from_regions, 7); }
std::vector<Relation> point_composition() { return from_triples(3, point_rel, 4); }

bool naive_path_consistency(Qcn& q) {
  const Calculus& calc = q.calculus();
  const int n = q.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          const Relation cur = q.relation(i, j);
          const Relation next = cur & calc.compose(q.relation(i, k), q.relation(k, j));
          if (next != cur) {
            q.set_relation(i, j, next);
            changed = true;
            if (next.empty()) return false;
          }
        }
      }
    }
  }
  return true;
}

bool closed_under_triangles(const Qcn& q) {
  const Calculus& calc = q.calculus();
  const int n = q.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (!calc.compose(q.relation(i, k), q.relation(k, j)).contains(q.relation(i, j))) return false;
      }
    }
  }
  return true;
}

bool is_chordal(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (const auto& e : edges) adj[e.i][e.j] = adj[e.j][e.i] = true;
  // Maximum cardinality search yields a reverse perfect elimination order
  // exactly when the graph is chordal.
  std::vector<int> weight(n, 0), order;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!done[v] && (best < 0 || weight[v] > weight[best])) best = v;
    }
    done[best] = true;
    order.push_back(best);
    for (int v = 0; v < n; ++v) {
      if (!done[v] && adj[best][v]) ++weight[v];
    }
  }
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[order[k]] = k;
  for (int v = 0; v < n; ++v) {
    // Earlier neighbours of v must form a clique.
    std::vector<int> earlier;
    for (int u = 0; u < n; ++u) {
      if (adj[v][u] && pos[u] < pos[v]) earlier.push_back(u);
    }
    for (std::size_t a = 0; a < earlier.size(); ++a) {
      for (std::size_t b = a + 1; b < earlier.size(); ++b) {
        if (!adj[earlier[a]][earlier[b]]) return false;
      }
    }
  }
  return true;
}

Qcn random_network(CalculusPtr calc, int n, double density, double p_universal, Rng& rng) {
  Qcn q(calc, n);
  for (std::size_t s = 0; s < q.edge_count(); ++s) {
    if (rng.chance(p_universal)) continue;
    Relation r;
    for (int b = 0; b < calc->size(); ++b) {
      if (rng.chance(density)) r = r.with(b);
    }
    if (r.empty()) r = Relation::single(static_cast<int>(rng.below(static_cast<std::uint64_t>(calc->size()))));
    q.edge(s).candidates = r;
  }
  return q;
}

std::vector<Scenario> scenarios(const Qcn& q) {
  auto out = enumerate_scenarios(q);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qcn::ref
