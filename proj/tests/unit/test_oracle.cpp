#include "doctest.h"
#include "qcn/generation.hpp"
#include "qcn/oracle.hpp"

using namespace qcn;

TEST_CASE("truthful answers follow the target") {
  const auto t = generate_target(GenConfig{"ia", 6, 2, 0.5, 0.3, 3});
  const Qcn& q = t.target;
  for (std::size_t s = 0; s < q.edge_count(); ++s) {
    const Edge e = q.edge_at(s);
    for (int b = 0; b < 13; ++b) {
      CHECK(truthful_answer(q, Query{QueryKind::relation, e.i, e.j, b, 0}) == q.edge(s).candidates.contains(b));
    }
    CHECK(truthful_answer(q, Query{QueryKind::universal, e.i, e.j, -1, 0}) ==
          (q.edge(s).candidates == q.calculus().universal()));
  }
}

TEST_CASE("simulated mistakes occur at the configured rate and spare reasks") {
  const auto t = generate_target(GenConfig{"ia", 10, 1, 0, 0, 5});
  SimulatedOracle oracle(t.target, OracleConfig{0.1, 42, true});
  const Query q{QueryKind::relation, 0, 1, 0, 0};
  const bool truth = truthful_answer(t.target, q);
  int wrong = 0;
  for (int k = 0; k < 5000; ++k) {
    const Answer a = oracle.ask(q, false);
    CHECK(a.was_mistake == (a.yes != truth));
    wrong += a.was_mistake;
  }
  CHECK(wrong > 400);
  CHECK(wrong < 600);
  CHECK(oracle.mistakes() == static_cast<std::size_t>(wrong));
  for (int k = 0; k < 200; ++k) CHECK(oracle.ask(q, true).yes == truth);
  CHECK(oracle.asked() == 5200);
}

TEST_CASE("queries render as plain sentences") {
  const auto ia = interval_algebra();
  const std::vector<std::string> names{"John rides", "Soccer game"};
  CHECK(render_query(Query{QueryKind::relation, 0, 1, *ia->find("O"), 0}, names, *ia) ==
        "Does 'John rides' overlap 'Soccer game'?");
  CHECK(render_query(Query{QueryKind::universal, 0, 1, -1, 0}, names, *ia) ==
        "Is there no known constraint between 'John rides' and 'Soccer game'?");
  const auto pa = point_algebra();
  CHECK(render_query(Query{QueryKind::relation, 0, 1, 0, 0}, names, *pa).find("occur before") != std::string::npos);
}
