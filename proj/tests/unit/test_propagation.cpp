#include <algorithm>

#include "doctest.h"
#include "qcn/propagation.hpp"
#include "reference.hpp"

using namespace qcn;

#ifndef QCN_TEST_DATA
#define QCN_TEST_DATA "."
#endif

namespace {

Relation rel(const Calculus& c, std::vector<std::string> syms) { return c.parse(syms); }

}  // namespace

TEST_CASE("a chain of precedences is inferred") {
  const auto ia = interval_algebra();
  Qcn q(ia, 3);
  q.set_relation(0, 1, rel(*ia, {"P"}));
  q.set_relation(1, 2, rel(*ia, {"M"}));
  const auto r = path_consistency(q);
  CHECK(r.consistent);
  CHECK(q.relation(0, 2) == rel(*ia, {"P"}));
  CHECK(r.removed_count() == 12);
}

TEST_CASE("inconsistency names the emptied edge") {
  const auto pa = point_algebra();
  Qcn q(pa, 3);
  q.set_relation(0, 1, rel(*pa, {"<"}));
  q.set_relation(1, 2, rel(*pa, {"<"}));
  q.set_relation(0, 2, rel(*pa, {">"}));
  const auto r = path_consistency(q);
  CHECK_FALSE(r.consistent);
  REQUIRE(r.emptied.has_value());
  CHECK(q.edge(r.emptied->i, r.emptied->j).candidates.empty());
}

TEST_CASE("soccer story fixture") {
  Qcn q = read_qcn_file(std::string(QCN_TEST_DATA) + "/soccer.qcn.json");
  const Calculus& ia = q.calculus();
  REQUIRE(path_consistency(q).consistent);
  // E and Si go, but S has a witness: John [0,2], Mary [0,10], game [1,5].
  CHECK(q.relation(0, 1) == rel(ia, {"S", "M"}));
  CHECK(q.relation(0, 3) == rel(ia, {"O"}));
}

TEST_CASE("PC matches the reference fixpoint and keeps every scenario") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const bool use_ia = t % 2 == 0;
    const auto calc = use_ia ? interval_algebra() : point_algebra();
    const int n = 3 + static_cast<int>(rng.below(use_ia ? 3 : 5));
    const Qcn input = ref::random_network(calc, n, use_ia ? 0.45 : 0.6, 0.2, rng);
    Qcn fast = input;
    Qcn slow = input;
    const bool ok = path_consistency(fast).consistent;
    const bool ok_ref = ref::naive_path_consistency(slow);
    CHECK(ok == ok_ref);
    if (ok) {
      CHECK(fast.same_candidates(slow));
      CHECK(ref::closed_under_triangles(fast));
    }
    CHECK(ref::scenarios(input) == (ok ? ref::scenarios(fast) : std::vector<Scenario>{}));
  }
}

TEST_CASE("fixpoint does not depend on queue order or composition mode") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Qcn input = ref::random_network(interval_algebra(), 8, 0.5, 0.3, rng);
    Qcn a = input, b = input, c = input;
    const bool ra = path_consistency(a).consistent;
    PropagationOptions shuffled;
    shuffled.shuffle_seed = static_cast<std::uint64_t>(t);
    const bool rb = path_consistency(b, shuffled).consistent;
    PropagationOptions naive;
    naive.composition = CompositionMode::naive;
    const bool rc = path_consistency(c, naive).consistent;
    CHECK(ra == rb);
    CHECK(ra == rc);
    if (ra) {
      CHECK(a.same_candidates(b));
      CHECK(a.same_candidates(c));
    }
  }
}

TEST_CASE("incremental PC equals PC from scratch") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    Qcn q = ref::random_network(interval_algebra(), 7, 0.6, 0.3, rng);
    if (!path_consistency(q).consistent) continue;
    const std::size_t slot = rng.below(q.edge_count());
    const Relation cur = q.edge(slot).candidates;
    if (cur.count() < 2) continue;
    q.edge(slot).candidates = cur.without(cur.first());
    Qcn full = q;
    const bool inc = path_consistency_incremental(q, q.edge_at(slot)).consistent;
    const bool ref_ok = path_consistency(full).consistent;
    CHECK(inc == ref_ok);
    if (inc) CHECK(q.same_candidates(full));
  }
}

TEST_CASE("pruning records describe exactly what changed") {
  Rng rng(3);
  const Qcn input = ref::random_network(interval_algebra(), 6, 0.5, 0.2, rng);
  Qcn q = input;
  const auto r = path_consistency(q);
  if (r.consistent) {
    Qcn rebuilt = input;
    for (const auto& p : r.pruned) {
      auto& e = rebuilt.edge(p.edge.i, p.edge.j);
      CHECK(e.candidates.contains(p.removed));
      e.candidates = e.candidates.minus(p.removed);
    }
    CHECK(rebuilt.same_candidates(q));
  }
}

TEST_CASE("min-fill triangulation is chordal and deterministic") {
  // A 4-cycle needs one chord; ties go to the lowest index.
  const std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  const ChordalStructure cs = triangulate(4, cycle);
  CHECK(ref::is_chordal(4, cs.edges));
  CHECK(cs.fill_edges.size() == 1);
  CHECK(cs.triangles.size() == 2);
  CHECK(triangulate(4, cycle).fill_edges == cs.fill_edges);

  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    const int n = 4 + static_cast<int>(rng.below(20));
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.chance(0.2)) edges.push_back({i, j});
      }
    }
    const ChordalStructure c = triangulate(n, edges);
    CHECK(ref::is_chordal(n, c.edges));
    for (const auto& e : edges) CHECK(c.has_edge(e.i, e.j));
    for (const auto& tri : c.triangles) {
      CHECK(c.has_edge(tri[0], tri[1]));
      CHECK(c.has_edge(tri[1], tri[2]));
      CHECK(c.has_edge(tri[0], tri[2]));
    }
  }
}

TEST_CASE("PPC closes the chordal triangles and agrees with PC on consistency") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const auto calc = t % 2 ? point_algebra() : interval_algebra();
    const Qcn input = ref::random_network(calc, 7, 0.5, 0.6, rng);
    Qcn partial = input;
    const ChordalStructure cs = triangulate(partial);
    const bool ok = partial_path_consistency(partial, cs).consistent;
    Qcn full = input;
    const bool full_ok = path_consistency(full).consistent;
    // PPC may keep more, never less, and on convex point algebra it decides consistency.
    if (full_ok) {
      CHECK(ok);
      for (std::size_t s = 0; s < full.edge_count(); ++s)
        CHECK(partial.edge(s).candidates.contains(full.edge(s).candidates));
    }
    if (ok) {
      const Calculus& c = partial.calculus();
      for (const auto& tri : cs.triangles) {
        const int a = tri[0], b = tri[1], d = tri[2];
        CHECK(c.compose(partial.relation(a, b), partial.relation(b, d)).contains(partial.relation(a, d)));
        CHECK(c.compose(partial.relation(a, d), partial.relation(d, b)).contains(partial.relation(a, b)));
        CHECK(c.compose(partial.relation(b, a), partial.relation(a, d)).contains(partial.relation(b, d)));
      }
    }
  }
}
