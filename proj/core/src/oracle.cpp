#include "qcn/oracle.hpp"

namespace qcn {

bool truthful_answer(const Qcn& target, const Query& q) {
  if (q.i < 0 || q.j < 0 || q.i >= target.size() || q.j >= target.size() || q.i == q.j)
    throw NetworkError("query indices out of range");
  const Relation r = target.relation(q.i, q.j);
  if (q.kind == QueryKind::universal) return r == target.calculus().universal();
  if (q.b < 0 || q.b >= target.calculus().size()) throw NetworkError("query relation out of range");
  return r.contains(q.b);
}

SimulatedOracle::SimulatedOracle(const Qcn& target, OracleConfig cfg) : target_(target), cfg_(cfg), rng_(cfg.seed) {}

Answer SimulatedOracle::ask(const Query& q, bool is_reask) {
  const bool truth = truthful_answer(target_, q);
  ++asked_;
  Answer a{truth, false};
  if (!(is_reask && cfg_.reask_truthful) && cfg_.p_mistake > 0.0 && rng_.chance(cfg_.p_mistake)) {
    a = {!truth, true};
    ++mistakes_;
  }
  if (a.yes) ++yes_;
  return a;
}

std::string render_query(const Query& q, const std::vector<std::string>& names, const Calculus& calc) {
  auto label = [&](int v) {
    return static_cast<std::size_t>(v) < names.size() ? names[static_cast<std::size_t>(v)] : "v" + std::to_string(v);
  };
  if (q.kind == QueryKind::universal)
    return "Is there no known constraint between '" + label(q.i) + "' and '" + label(q.j) + "'?";
  return "Does '" + label(q.i) + "' " + calc.basic(q.b).phrase + " '" + label(q.j) + "'?";
}

std::string render_query(const Query& q, const Qcn& shape) {
  return render_query(q, shape.names(), shape.calculus());
}

}  // namespace qcn
