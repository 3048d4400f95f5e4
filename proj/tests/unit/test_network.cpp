#include "doctest.h"
#include "qcn/network.hpp"

using namespace qcn;

TEST_CASE("edge indexing covers the upper triangle once") {
  Qcn q(interval_algebra(), 5);
  CHECK(q.edge_count() == 10);
  for (std::size_t s = 0; s < q.edge_count(); ++s) {
    const Edge e = q.edge_at(s);
    CHECK(e.i < e.j);
    CHECK(q.edge_index(e.i, e.j) == s);
    CHECK(q.edge_index(e.j, e.i) == s);
  }
  CHECK_THROWS_AS(q.edge_index(1, 1), NetworkError);
  CHECK_THROWS_AS(q.edge_index(0, 5), NetworkError);
  CHECK_THROWS_AS(Qcn(interval_algebra(), 1), NetworkError);
}

TEST_CASE("reverse orientation reads the converse") {
  const auto ia = interval_algebra();
  Qcn q(ia, 3);
  q.set_relation(2, 0, Relation::single(*ia->find("D")));
  CHECK(q.relation(0, 2) == Relation::single(*ia->find("Di")));
  CHECK(q.relation(2, 0) == Relation::single(*ia->find("D")));
  q.set_confirmed(2, 0, Relation::single(*ia->find("D")));
  CHECK(q.confirmed(0, 2) == Relation::single(*ia->find("Di")));
}

TEST_CASE("serialization round trip") {
  const auto ia = interval_algebra();
  Qcn q(ia, 4);
  q.set_names({"a", "b", "c", "d"});
  q.set_relation(0, 1, Relation::single(0).with(3));
  q.set_confirmed(0, 1, Relation::single(3));
  q.edge(2, 3).universal_checked = UniversalCheck::universal;
  const Qcn back = parse_qcn(serialize(q));
  CHECK(back == q);
  CHECK(back.name(2) == "c");
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_qcn("{"), NetworkError);
  CHECK_THROWS_AS(parse_qcn(R"({"calculus":"xx","n":3})"), NetworkError);
  CHECK_THROWS_AS(parse_qcn(R"({"calculus":"ia","n":3,"constraints":[{"i":0,"j":3,"rels":["P"]}]})"),
                  NetworkError);
  CHECK_THROWS_AS(
      parse_qcn(R"({"calculus":"ia","n":3,"constraints":[{"i":0,"j":1,"rels":["P"]},{"i":1,"j":0,"rels":["P"]}]})"),
      NetworkError);
  CHECK_THROWS_AS(parse_qcn(R"({"calculus":"ia","n":3,"constraints":[{"i":0,"j":1,"rels":["Q"]}]})"),
                  NetworkError);
  CHECK_THROWS_AS(
      parse_qcn(R"({"calculus":"ia","n":3,"constraints":[{"i":0,"j":1,"rels":["P"],"confirmed":["O"]}]})"),
      NetworkError);
  CHECK_THROWS_AS(read_qcn_file("/nonexistent/file.json"), NetworkError);
}

TEST_CASE("missing edges default to universal") {
  const Qcn q = parse_qcn(R"({"calculus":"point","n":3,"constraints":[{"i":0,"j":1,"rels":["<"]}]})");
  CHECK(q.relation(1, 2) == q.calculus().universal());
  CHECK(q.relation(0, 1).is_singleton());
}

TEST_CASE("scenario enumeration") {
  const auto pa = point_algebra();
  Qcn q(pa, 3);
  // Orders of three points with ties: 13 weak orders.
  CHECK(enumerate_scenarios(q).size() == 13);
  for (const auto& s : enumerate_scenarios(q)) CHECK(is_valid_scenario(q, s));
  q.set_relation(0, 1, Relation::single(0));
  q.set_relation(1, 2, Relation::single(0));
  q.set_relation(0, 2, Relation::single(2));
  CHECK(enumerate_scenarios(q).empty());
  CHECK(enumerate_scenarios(Qcn(pa, 4), 5).size() == 5);
  CHECK_THROWS_AS(enumerate_scenarios(Qcn(interval_algebra(), 9)), NetworkError);
}

TEST_CASE("scenario network and validity check") {
  const auto ia = interval_algebra();
  Qcn q(ia, 3);
  const auto s = enumerate_scenarios(q, 1).front();
  const Qcn sn = scenario_network(q, s);
  for (std::size_t e = 0; e < sn.edge_count(); ++e) CHECK(sn.edge(e).candidates.is_singleton());
  CHECK(is_valid_scenario(q, s));
  CHECK_FALSE(is_valid_scenario(q, Scenario{{0, 0}}));
}
