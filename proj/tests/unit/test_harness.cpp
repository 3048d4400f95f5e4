#include <algorithm>

#include "doctest.h"
#include "qcn/harness.hpp"

using namespace qcn;

TEST_CASE("method names") {
  CHECK(parse_method("naive").family == MethodSpec::Family::naive);
  CHECK(parse_method("conacq2").family == MethodSpec::Family::conacq2);
  const auto m = parse_method("ppc-card-desc");
  CHECK(m.propagation == PropagationKind::ppc);
  CHECK(m.heuristic == Heuristic::cardinality_descending);
  CHECK(parse_method("pc-weight").heuristic == Heuristic::weight);
  CHECK_THROWS_AS(parse_method("pcx"), ConfigError);
  for (const auto& name : known_methods()) CHECK_NOTHROW(parse_method(name));
}

TEST_CASE("sweep validation") {
  SweepSpec s;
  s.methods = {"ppc"};
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.cases = {2};
  CHECK_NOTHROW(validate(s));
  s.p_yes = {120};
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.p_yes = {0};
  s.calculus = "point";
  CHECK_THROWS_AS(validate(s), ConfigError);
}

TEST_CASE("one cell with one run gives one row") {
  SweepSpec s;
  s.n = 8;
  s.runs = 1;
  s.methods = {"pc"};
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].converged);
  CHECK(rows[0].time_ms == 0.0);
  const std::string csv = to_csv(rows);
  CHECK(csv.rfind(std::string(csv_header()) + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("the CSV header names every result field") {
  CHECK(csv_header() ==
        "case,calculus,n,p_yes,method,run_index,seed,queries,time_ms,mistakes_injected,mistakes_detected,"
        "backtracks,yes_rate_observed,converged");
}

TEST_CASE("sweeps are byte-identical across runs and worker counts") {
  SweepSpec s;
  s.n = 10;
  s.runs = 3;
  s.cases = {1, 3};
  s.p_yes = {0, 50};
  s.methods = {"naive", "conacq2", "pc", "pc-card"};
  s.workers = 1;
  const std::string a = to_csv(run_sweep(s));
  s.workers = 4;
  const std::string b = to_csv(run_sweep(s));
  CHECK(a == b);
}

TEST_CASE("PC beats naive on every paired run") {
  SweepSpec s;
  s.n = 30;
  s.runs = 4;
  s.methods = {"naive", "pc"};
  const auto rows = run_sweep(s);
  for (int r = 0; r < 4; ++r) {
    CHECK(rows[4 + r].queries < rows[r].queries);
    CHECK(rows[r].seed == rows[4 + r].seed);
  }
}

TEST_CASE("summaries average per method") {
  std::vector<ResultRow> rows(3);
  rows[0].method = rows[1].method = "a";
  rows[2].method = "b";
  rows[0].queries = 10;
  rows[1].queries = 20;
  rows[2].queries = 5;
  rows[0].converged = true;
  const auto s = summarize(rows);
  REQUIRE(s.size() == 2);
  CHECK(s[0].mean_queries == doctest::Approx(15.0));
  CHECK(s[0].converged == 1);
  CHECK(s[1].runs == 1);
}
