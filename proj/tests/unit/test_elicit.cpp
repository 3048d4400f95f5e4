#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "qcn/elicit.hpp"
#include "qcn/generation.hpp"
#include "qcn/oracle.hpp"

using namespace qcn;
using nlohmann::json;

namespace {

struct Reply {
  int status;
  json body;
};

Reply call(elicit::Service& svc, const std::string& method, const std::string& path, const json& body = nullptr) {
  const auto r = svc.handle(method, path, body.is_null() ? "" : body.dump());
  return {r.status, json::parse(r.body)};
}

Query to_query(const json& q, const Calculus& calc) {
  Query out;
  out.kind = q["kind"] == "universal" ? QueryKind::universal : QueryKind::relation;
  out.i = q["i"];
  out.j = q["j"];
  if (out.kind == QueryKind::relation) out.b = *calc.find(q["symbol"].get<std::string>());
  return out;
}

Reply answer(elicit::Service& svc, const std::string& id, const json& summary, bool yes) {
  return call(svc, "POST", "/sessions/" + id + "/answer", {{"query_id", summary["query"]["id"]}, {"yes", yes}});
}

Qcn scenario_target(const char* calc, int n, std::uint64_t seed) {
  return generate_target(GenConfig{calc, n, 1, 0, 0, seed}).target;
}

}  // namespace

TEST_CASE("creating a session returns the first question") {
  elicit::Service svc;
  const auto r = call(svc, "POST", "/sessions",
                      {{"names", {"John rides", "Mary rides", "Wendy rides", "Soccer game"}}, {"case", 1}});
  CHECK(r.status == 201);
  CHECK(r.body["state"] == "awaiting_answer");
  CHECK(r.body["n"] == 4);
  const std::string text = r.body["query"]["text"];
  CHECK(text.rfind("Does '", 0) == 0);
  CHECK(text.find("rides'") != std::string::npos);
  CHECK(r.body["query"]["reask"] == false);
}

TEST_CASE("invalid session configurations are rejected") {
  elicit::Service svc;
  CHECK(call(svc, "POST", "/sessions", {{"names", {"Alone"}}}).status == 400);
  CHECK(call(svc, "POST", "/sessions", {{"n", 1}}).status == 400);
  CHECK(call(svc, "POST", "/sessions", {{"n", 3}, {"heuristic", "clever"}}).status == 400);
  CHECK(call(svc, "POST", "/sessions", {{"n", 3}, {"calculus", "nope"}}).status == 400);
  CHECK(call(svc, "POST", "/sessions", {{"n", 3}, {"case", 1}, {"propagation", "ppc"}}).status == 400);
  CHECK(svc.handle("POST", "/sessions", "{not json").status == 400);
  CHECK(call(svc, "GET", "/sessions/unknown").status == 404);
  CHECK(call(svc, "GET", "/elsewhere").status == 404);
}

TEST_CASE("truthful answers converge within the interaction bound") {
  elicit::Service svc;
  const Qcn target = scenario_target("ia", 3, 4);
  auto s = call(svc, "POST", "/sessions", {{"names", {"A", "B", "C"}}}).body;
  const std::string id = s["id"];
  int interactions = 0;
  while (s["state"] == "awaiting_answer") {
    s = answer(svc, id, s, truthful_answer(target, to_query(s["query"], target.calculus()))).body;
    ++interactions;
  }
  CHECK(s["state"] == "converged");
  CHECK(interactions <= 3 * 13);
  CHECK(s["query"].is_null());
  const auto net = call(svc, "GET", "/sessions/" + id + "/network").body;
  for (const auto& e : net["edges"]) {
    const Relation r = target.relation(e["i"], e["j"]);
    CHECK(e["candidates"] == target.calculus().symbols(r));
    CHECK(e["resolved"] == true);
  }
}

TEST_CASE("network view and pruning delta") {
  elicit::Service svc;
  auto s = call(svc, "POST", "/sessions", {{"names", {"A", "B", "C"}}, {"heuristic", "cardinality"}}).body;
  const std::string id = s["id"];
  auto net = call(svc, "GET", "/sessions/" + id + "/network").body;
  CHECK(net["edges"].size() == 3);
  for (const auto& e : net["edges"]) CHECK(e["candidates"].size() == 13);

  // Say yes to whatever is asked first on (0,1), then to P on (1,2) if it comes up.
  s = answer(svc, id, s, true).body;
  net = call(svc, "GET", "/sessions/" + id + "/network").body;
  CHECK(net["edges"][0]["candidates"].size() == 1);
  CHECK(net["edges"][0]["confirmed"].size() == 1);
  CHECK_FALSE(s["pruned"].empty());
  CHECK(s["pruned"][0]["symbols"].size() == 12);
  // A second yes fixes (0,2) or (1,2); propagation narrows the third edge.
  s = answer(svc, id, s, true).body;
  bool third = false;
  for (const auto& p : s["pruned"]) third |= p["i"] != 0 || p["j"] != 1;
  CHECK(third);
  net = call(svc, "GET", "/sessions/" + id + "/network").body;
  for (const auto& p : net["pruned"]) {
    const auto& e = net["edges"][p["i"].get<int>() == 0 ? p["j"].get<int>() - 1 : 2];
    for (const auto& sym : p["symbols"]) CHECK(std::find(e["candidates"].begin(), e["candidates"].end(), sym) == e["candidates"].end());
  }
}

TEST_CASE("a contradiction is re-checked and repaired") {
  elicit::Service svc;
  const auto ia = interval_algebra();
  Qcn target(ia, 3);
  const int P = *ia->find("P");
  for (std::size_t s = 0; s < 3; ++s) target.edge(s).candidates = Relation::single(P);

  auto s = call(svc, "POST", "/sessions",
                {{"names", {"A", "B", "C"}}, {"heuristic", "cardinality"}, {"confirm", true}})
               .body;
  const std::string id = s["id"];
  bool lied = false, saw_reask = false;
  std::size_t history_before_reask = 0;
  int guard = 0;
  while ((s["state"] == "awaiting_answer" || s["state"] == "reasking") && ++guard < 500) {
    const Query q = to_query(s["query"], *ia);
    bool yes = truthful_answer(target, q);
    if (s["state"] == "reasking") {
      saw_reask = true;
      CHECK(s["query"]["reask"] == true);
      CHECK(s["query"].contains("original_answer"));
      CHECK(s["history_length"].get<std::size_t>() <= history_before_reask);
    } else if (q.i == 0 && q.j == 2) {
      yes = false;  // deny every relation between A and C
      lied = true;
    }
    history_before_reask = s["history_length"].get<std::size_t>() + 1;
    s = answer(svc, id, s, yes).body;
  }
  CHECK(lied);
  CHECK(saw_reask);
  CHECK(s["state"] == "converged");
  CHECK(s["stats"]["detected_mistakes"] == 1);
  const auto net = call(svc, "GET", "/sessions/" + id + "/network").body;
  for (const auto& e : net["edges"]) CHECK(e["candidates"] == json::array({"P"}));

  const auto hist = call(svc, "GET", "/sessions/" + id + "/history");
  CHECK(hist.status == 200);
  CHECK(hist.body["history"].size() == s["history_length"].get<std::size_t>());
  // The repaired stack holds a "yes" on (A, C), given when the question was re-posed.
  const auto& h = hist.body["history"];
  CHECK(std::any_of(h.begin(), h.end(), [](const json& e) { return e["i"] == 0 && e["j"] == 2 && e["yes"] == true; }));
  CHECK(call(svc, "POST", "/sessions/" + id + "/history").status == 405);
}

TEST_CASE("stale and late answers are refused without side effects") {
  elicit::Service svc;
  auto s = call(svc, "POST", "/sessions", {{"n", 2}, {"calculus", "point"}}).body;
  const std::string id = s["id"];
  const auto before = svc.handle("GET", "/sessions/" + id, "").body;
  const auto stale = call(svc, "POST", "/sessions/" + id + "/answer", {{"query_id", 12345}, {"yes", true}});
  CHECK(stale.status == 409);
  CHECK(svc.handle("GET", "/sessions/" + id, "").body == before);
  CHECK(call(svc, "POST", "/sessions/" + id + "/answer", {{"yes", true}}).status == 400);
  s = answer(svc, id, s, true).body;
  CHECK(s["state"] == "converged");
  CHECK(call(svc, "POST", "/sessions/" + id + "/answer", {{"query_id", 1}, {"yes", true}}).status == 409);
}

TEST_CASE("replaying a history reproduces the final network") {
  elicit::Service svc;
  const Qcn target = scenario_target("ia", 5, 9);
  const json cfg{{"n", 5}, {"heuristic", "cardinality"}, {"seed", 3}};
  auto s = call(svc, "POST", "/sessions", cfg).body;
  const std::string id = s["id"];
  int asked = 0;
  while (s["state"] == "awaiting_answer" || s["state"] == "reasking") {
    const Query q = to_query(s["query"], target.calculus());
    bool yes = truthful_answer(target, q);
    if (++asked == 6 && s["state"] == "awaiting_answer") yes = !yes;
    s = answer(svc, id, s, yes).body;
  }
  REQUIRE(s["state"] == "converged");
  const auto original = svc.store().find(id);
  const std::string final_net = svc.handle("GET", "/sessions/" + id + "/network", "").body;

  auto r = call(svc, "POST", "/sessions", cfg).body;
  const std::string id2 = r["id"];
  for (const auto& h : original->history()) {
    REQUIRE(r["state"] == "awaiting_answer");
    const Query q = to_query(r["query"], target.calculus());
    CHECK((q.kind == h.query.kind && q.i == h.query.i && q.j == h.query.j && q.b == h.query.b));
    r = answer(svc, id2, r, h.yes).body;
  }
  CHECK(r["state"] == "converged");
  auto a = json::parse(final_net);
  auto b = call(svc, "GET", "/sessions/" + id2 + "/network").body;
  CHECK(a["edges"] == b["edges"]);
}

TEST_CASE("sessions can be deleted") {
  elicit::Service svc;
  const std::string id = call(svc, "POST", "/sessions", {{"n", 3}}).body["id"];
  CHECK(call(svc, "DELETE", "/sessions/" + id).status == 200);
  CHECK(call(svc, "GET", "/sessions/" + id).status == 404);
  CHECK(call(svc, "DELETE", "/sessions/" + id).status == 404);
}

TEST_CASE("concurrent sessions stay independent") {
  elicit::Service svc;
  const Qcn target = scenario_target("rcc8", 4, 2);
  std::vector<std::thread> threads;
  std::atomic<int> converged{0};
  for (int t = 0; t < 6; ++t) {
    threads.emplace_back([&, t] {
      auto s = call(svc, "POST", "/sessions", {{"n", 4}, {"calculus", "rcc8"}, {"seed", t}}).body;
      const std::string id = s["id"];
      while (s["state"] == "awaiting_answer") {
        call(svc, "GET", "/sessions/" + id + "/network");
        s = answer(svc, id, s, truthful_answer(target, to_query(s["query"], target.calculus()))).body;
      }
      if (s["state"] == "converged") ++converged;
    });
  }
  for (auto& th : threads) th.join();
  CHECK(converged == 6);
  CHECK(svc.store().size() == 6);
}

TEST_CASE("snapshots follow the session") {
  const auto dir = std::filesystem::temp_directory_path() / "qcn-elicit-snapshots";
  std::filesystem::remove_all(dir);
  elicit::Service svc(dir);
  auto s = call(svc, "POST", "/sessions", {{"n", 3}}).body;
  const std::string id = s["id"];
  const auto file = dir / (id + ".json");
  CHECK(std::filesystem::exists(file));
  answer(svc, id, s, false);
  std::ifstream in(file);
  const json snap = json::parse(in);
  CHECK(snap["history"].size() == 1);
  CHECK(snap["history"][0]["yes"] == false);
  call(svc, "DELETE", "/sessions/" + id);
  CHECK_FALSE(std::filesystem::exists(file));
  std::filesystem::remove_all(dir);
}

TEST_CASE("HTTP front end") {
  elicit::ServerOptions opts;
  opts.port = 0;
  opts.cors = true;
  elicit::Server server(opts);
  const int port = server.bind();
  std::thread th([&] { server.serve(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", R"({"names":["a","b","c"],"calculus":"point"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const json s = json::parse(created->body);
  const std::string id = s["id"];
  auto got = client.Get("/sessions/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  const json body{{"query_id", s["query"]["id"]}, {"yes", false}};
  auto ans = client.Post("/sessions/" + id + "/answer", body.dump(), "application/json");
  REQUIRE(ans);
  CHECK(ans->status == 200);
  auto stale = client.Post("/sessions/" + id + "/answer", body.dump(), "application/json");
  REQUIRE(stale);
  CHECK(stale->status == 409);
  auto net = client.Get("/sessions/" + id + "/network");
  REQUIRE(net);
  CHECK(json::parse(net->body)["edges"].size() == 3);
  auto pre = client.Options("/sessions");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  auto del = client.Delete("/sessions/" + id);
  REQUIRE(del);
  CHECK(del->status == 200);

  server.stop();
  th.join();
}
