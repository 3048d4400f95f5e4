#include "qcn/network.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qcn {

using nlohmann::json;

Qcn::Qcn(CalculusPtr calculus, int n) : calculus_(std::move(calculus)), n_(n) {
  if (!calculus_) throw NetworkError("network requires a calculus");
  if (n < 2) throw NetworkError("a network needs at least 2 variables, got " + std::to_string(n));
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  edges_.assign(count, EdgeState{calculus_->universal(), Relation{}, UniversalCheck::unknown});
  edge_list_.reserve(count);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edge_list_.push_back({i, j});
  }
}

Qcn Qcn::universal(CalculusPtr calculus, int n) { return Qcn(std::move(calculus), n); }

void Qcn::check_pair(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
    throw NetworkError("invalid edge (" + std::to_string(i) + ", " + std::to_string(j) + ") for n = " +
                       std::to_string(n_));
}

std::size_t Qcn::edge_index(int i, int j) const {
  check_pair(i, j);
  if (i > j) std::swap(i, j);
  const auto a = static_cast<std::size_t>(i);
  const auto n = static_cast<std::size_t>(n_);
  return a * n - a * (a + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

Relation Qcn::relation(int i, int j) const {
  const Relation r = edges_[edge_index(i, j)].candidates;
  return i < j ? r : calculus_->inverse(r);
}

void Qcn::set_relation(int i, int j, Relation r) {
  auto& e = edges_[edge_index(i, j)];
  e.candidates = i < j ? r : calculus_->inverse(r);
  e.confirmed &= e.candidates;
}

Relation Qcn::confirmed(int i, int j) const {
  const Relation r = edges_[edge_index(i, j)].confirmed;
  return i < j ? r : calculus_->inverse(r);
}

void Qcn::set_confirmed(int i, int j, Relation r) {
  auto& e = edges_[edge_index(i, j)];
  e.confirmed = i < j ? r : calculus_->inverse(r);
  e.candidates |= e.confirmed;
}

void Qcn::set_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != static_cast<std::size_t>(n_))
    throw NetworkError("expected " + std::to_string(n_) + " variable names, got " + std::to_string(names.size()));
  names_ = std::move(names);
}

std::string Qcn::name(int i) const {
  if (static_cast<std::size_t>(i) < names_.size()) return names_[static_cast<std::size_t>(i)];
  return "v" + std::to_string(i);
}

bool Qcn::has_empty_edge() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const EdgeState& e) { return e.candidates.empty(); });
}

bool Qcn::same_relations(const Qcn& other) const {
  if (calculus_->name() != other.calculus_->name() || n_ != other.n_) return false;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (edges_[k].candidates != other.edges_[k].candidates || edges_[k].confirmed != other.edges_[k].confirmed)
      return false;
  }
  return true;
}

bool Qcn::same_candidates(const Qcn& other) const {
  if (calculus_->name() != other.calculus_->name() || n_ != other.n_) return false;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (edges_[k].candidates != other.edges_[k].candidates) return false;
  }
  return true;
}

bool operator==(const Qcn& a, const Qcn& b) {
  return a.calculus_->name() == b.calculus_->name() && a.n_ == b.n_ && a.edges_ == b.edges_ &&
         a.names_ == b.names_;
}

// ---------------------------------------------------------------------------
// Exhaustive scenario search (testing oracle)

int scenario_search_limit(const Calculus& calc) { return calc.size() <= 3 ? 10 : 8; }

namespace {

bool triangle_ok(const Calculus& calc, int ij, int jk, int ik) {
  // ij, jk, ik are basics on (i,j), (j,k), (i,k). All three rotations are
  // checked so the result does not lean on the cycle law.
  return calc.compose_basic(ij, jk).contains(ik) &&
         calc.compose_basic(ik, calc.inverse(jk)).contains(ij) &&
         calc.compose_basic(calc.inverse(ij), ik).contains(jk);
}

class ScenarioSearch {
 public:
  ScenarioSearch(const Qcn& q, std::size_t limit) : q_(q), calc_(q.calculus()), limit_(limit) {
    const int n = q.size();
    // Vertex-by-vertex order: edge (i, j) is placed after every edge among
    // 0..j-1 and after (k, j) for k < i, so triangle (k, i, j) closes on it.
    for (int j = 1; j < n; ++j) {
      for (int i = 0; i < j; ++i) order_.push_back({i, j});
    }
    current_.assign(q.edge_count(), -1);
  }

  std::vector<Scenario> run() {
    if (!q_.has_empty_edge()) extend(0);
    return std::move(found_);
  }

 private:
  void extend(std::size_t depth) {
    if (found_.size() >= limit_) return;
    if (depth == order_.size()) {
      found_.push_back(Scenario{current_});
      return;
    }
    const auto [i, j] = order_[depth];
    const std::size_t slot = q_.edge_index(i, j);
    q_.edge(slot).candidates.for_each([&](int b) {
      if (found_.size() >= limit_) return;
      for (int k = 0; k < i; ++k) {
        if (!triangle_ok(calc_, current_[q_.edge_index(k, i)], b, current_[q_.edge_index(k, j)])) return;
      }
      current_[slot] = b;
      extend(depth + 1);
      current_[slot] = -1;
    });
  }

  const Qcn& q_;
  const Calculus& calc_;
  std::size_t limit_;
  std::vector<Edge> order_;
  std::vector<int> current_;
  std::vector<Scenario> found_;
};

}  // namespace

std::vector<Scenario> enumerate_scenarios(const Qcn& q, std::size_t limit) {
  const int cap = scenario_search_limit(q.calculus());
  if (q.size() > cap)
    throw NetworkError("exhaustive scenario search is limited to n <= " + std::to_string(cap) + " for calculus '" +
                       q.calculus().name() + "', got n = " + std::to_string(q.size()));
  return ScenarioSearch(q, limit).run();
}

bool is_valid_scenario(const Qcn& q, const Scenario& s) {
  if (s.assignment.size() != q.edge_count()) return false;
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    const int b = s.assignment[e];
    if (b < 0 || b >= q.calculus().size() || !q.edge(e).candidates.contains(b)) return false;
  }
  const int n = q.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (!triangle_ok(q.calculus(), s.assignment[q.edge_index(i, j)], s.assignment[q.edge_index(j, k)],
                         s.assignment[q.edge_index(i, k)]))
          return false;
      }
    }
  }
  return true;
}

Qcn scenario_network(const Qcn& shape, const Scenario& s) {
  Qcn out(shape.calculus_ptr(), shape.size());
  out.set_names(shape.names());
  for (std::size_t e = 0; e < out.edge_count(); ++e) out.edge(e).candidates = Relation::single(s.assignment.at(e));
  return out;
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

const char* universal_tag(UniversalCheck u) {
  switch (u) {
    case UniversalCheck::universal:
      return "universal";
    case UniversalCheck::not_universal:
      return "not_universal";
    case UniversalCheck::unknown:
      break;
  }
  return "unknown";
}

}  // namespace

std::string serialize(const Qcn& q) {
  const Calculus& calc = q.calculus();
  json doc;
  doc["calculus"] = calc.name();
  doc["n"] = q.size();
  if (!q.names().empty()) doc["names"] = q.names();
  json constraints = json::array();
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    const EdgeState& s = q.edge(e);
    if (s.candidates == calc.universal() && s.confirmed.empty() && s.universal_checked == UniversalCheck::unknown)
      continue;
    const Edge ij = q.edge_at(e);
    json c = {{"i", ij.i}, {"j", ij.j}, {"rels", calc.symbols(s.candidates)}};
    if (!s.confirmed.empty()) c["confirmed"] = calc.symbols(s.confirmed);
    if (s.universal_checked != UniversalCheck::unknown) c["universal"] = universal_tag(s.universal_checked);
    constraints.push_back(std::move(c));
  }
  doc["constraints"] = std::move(constraints);
  return doc.dump(2) + "\n";
}

Qcn parse_qcn(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw NetworkError(std::string("malformed network document: ") + e.what());
  }
  try {
    CalculusPtr calc;
    const auto calc_name = doc.at("calculus").get<std::string>();
    try {
      calc = load_calculus(calc_name);
    } catch (const CalculusError& e) {
      throw NetworkError(std::string("unknown calculus: ") + e.what());
    }
    const int n = doc.at("n").get<int>();
    Qcn q(calc, n);
    if (doc.contains("names")) q.set_names(doc["names"].get<std::vector<std::string>>());
    std::vector<bool> seen(q.edge_count(), false);
    for (const auto& c : doc.value("constraints", json::array())) {
      const int i = c.at("i").get<int>();
      const int j = c.at("j").get<int>();
      if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw NetworkError("constraint index out of range: (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      const std::size_t slot = q.edge_index(i, j);
      if (seen[slot]) throw NetworkError("duplicate constraint on (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      seen[slot] = true;
      try {
        const Relation rels = calc->parse(c.at("rels").get<std::vector<std::string>>());
        const Relation confirmed =
            c.contains("confirmed") ? calc->parse(c["confirmed"].get<std::vector<std::string>>()) : Relation{};
        if (!rels.contains(confirmed))
          throw NetworkError("confirmed relations on (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") are not a subset of rels");
        q.set_relation(i, j, rels);
        q.set_confirmed(i, j, confirmed);
      } catch (const CalculusError& e) {
        throw NetworkError(e.what());
      }
      if (c.contains("universal")) {
        const auto tag = c["universal"].get<std::string>();
        auto& state = q.edge(slot);
        if (tag == "universal") {
          state.universal_checked = UniversalCheck::universal;
        } else if (tag == "not_universal") {
          state.universal_checked = UniversalCheck::not_universal;
        } else if (tag != "unknown") {
          throw NetworkError("unknown universal marker '" + tag + "'");
        }
      }
    }
    return q;
  } catch (const json::exception& e) {
    throw NetworkError(std::string("malformed network document: ") + e.what());
  }
}

Qcn read_qcn_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_qcn(buffer.str());
}

void write_qcn_file(const Qcn& q, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw NetworkError("cannot write '" + path + "'");
  out << serialize(q);
}

}  // namespace qcn
