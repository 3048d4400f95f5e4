#include "qcn/baselines.hpp"

#include <chrono>

namespace qcn {

LearnResult learn_naive(const BaselineConfig& cfg, Oracle& oracle, CalculusPtr calc, int n, const Qcn* target_hint) {
  LearnerConfig lc;
  lc.learning_case = cfg.learning_case;
  lc.propagation = PropagationKind::none;
  lc.heuristic = Heuristic::random;
  lc.p_yes_bias = cfg.p_yes_bias;
  lc.seed = cfg.seed;
  lc.mistakes_enabled = cfg.mistakes_enabled;
  lc.require_confirmation = cfg.learning_case == 1;
  lc.max_queries = cfg.max_queries;
  return learn(lc, oracle, std::move(calc), n, target_hint);
}

// ---------------------------------------------------------------------------

ClausalTheory::ClausalTheory(CalculusPtr calc, int n, int learning_case, bool background_knowledge)
    : calc_(calc), shape_(calc, n), case_(learning_case), bk_(background_knowledge),
      true_(shape_.edge_count()), false_(shape_.edge_count()), queued_(shape_.edge_count(), false) {
  if (learning_case < 1 || learning_case > 3) throw ConfigError("case must be 1, 2 or 3");
}

Relation ClausalTheory::true_atoms(int i, int j) const {
  const Relation r = true_[shape_.edge_index(i, j)];
  return i < j ? r : calc_->inverse(r);
}

Relation ClausalTheory::false_atoms(int i, int j) const {
  const Relation r = false_[shape_.edge_index(i, j)];
  return i < j ? r : calc_->inverse(r);
}

Relation ClausalTheory::unknown_atoms(int i, int j) const {
  return calc_->universal().minus(true_atoms(i, j) | false_atoms(i, j));
}

bool ClausalTheory::complete() const {
  for (std::size_t s = 0; s < true_.size(); ++s) {
    if ((true_[s] | false_[s]) != calc_->universal()) return false;
  }
  return true;
}

bool ClausalTheory::set(std::size_t slot, Relation t, Relation f) {
  const Relation nt = true_[slot] | t;
  const Relation nf = false_[slot] | f;
  if (nt == true_[slot] && nf == false_[slot]) return true;
  true_[slot] = nt;
  false_[slot] = nf;
  if (!(nt & nf).empty()) {
    conflict_ = true;
    return false;
  }
  if (!queued_[slot]) {
    queued_[slot] = true;
    queue_.push_back(slot);
  }
  return true;
}

bool ClausalTheory::assert_atom(int i, int j, int b, bool value) {
  if (conflict_) return false;
  const std::size_t slot = shape_.edge_index(i, j);
  const int stored = i < j ? b : calc_->inverse(b);
  const Relation atom = Relation::single(stored);
  if (!set(slot, value ? atom : Relation{}, value ? Relation{} : atom)) return false;
  return propagate();
}

bool ClausalTheory::propagate() {
  const Relation all = calc_->universal();
  while (!queue_.empty() && !conflict_) {
    const std::size_t slot = queue_.front();
    queue_.pop_front();
    queued_[slot] = false;

    const Relation t = true_[slot];
    // Case 1 edges hold exactly one primitive: a true atom falsifies the rest.
    if (case_ == 1 && (t.count() > 1 || false_[slot] == all)) {
      conflict_ = true;
      break;
    }
    if (case_ == 1 && t.is_singleton() && !set(slot, {}, all.minus(t))) break;
    if (bk_ && case_ == 1) {
      const Edge e = shape_.edge_at(slot);
      for (int k = 0; k < shape_.size() && !conflict_; ++k) {
        if (k != e.i && k != e.j) revise_triangle(e.i, e.j, k);
      }
    }
  }
  return !conflict_;
}

bool ClausalTheory::revise_triangle(int a, int b, int c) {
  return revise_orientation(a, c, b) && revise_orientation(a, b, c) && revise_orientation(b, a, c);
}

// Clauses a(x,y,p) & a(y,z,q) -> OR of a(x,z,r) over r in compose(p, q).
bool ClausalTheory::revise_orientation(int x, int y, int z) {
  const Relation tx = true_atoms(x, y);
  const Relation ty = true_atoms(y, z);
  if (tx.empty() && ty.empty()) return true;
  const Relation fx = false_atoms(x, y);
  const Relation fy = false_atoms(y, z);
  const Relation open_z = calc_->universal().minus(false_atoms(x, z));
  const Relation tz = true_atoms(x, z);

  auto store = [&](int u, int v, Relation t, Relation f) {
    if (u > v) {
      t = calc_->inverse(t);
      f = calc_->inverse(f);
    }
    return set(shape_.edge_index(u, v), t, f);
  };

  Relation kill_y;
  Relation kill_x;
  Relation force_z;
  tx.for_each([&](int p) {
    calc_->universal().minus(fy).for_each([&](int q) {
      const Relation support = calc_->compose_basic(p, q) & open_z;
      if (support.empty()) {
        kill_y = kill_y.with(q);
      } else if (support.is_singleton() && ty.contains(q)) {
        force_z |= support;
      }
    });
  });
  ty.for_each([&](int q) {
    calc_->universal().minus(fx).for_each([&](int p) {
      if ((calc_->compose_basic(p, q) & open_z).empty()) kill_x = kill_x.with(p);
    });
  });
  force_z = force_z.minus(tz);
  return store(x, y, {}, kill_x) && store(y, z, {}, kill_y) && store(x, z, force_z, {});
}

Qcn ClausalTheory::network() const {
  Qcn out = shape_;
  for (std::size_t s = 0; s < out.edge_count(); ++s) {
    out.edge(s).candidates = true_[s];
    if (case_ == 2 && true_[s] == calc_->universal()) out.edge(s).universal_checked = UniversalCheck::universal;
  }
  return out;
}

LearnResult learn_conacq2(const Conacq2Config& cfg, Oracle& oracle, CalculusPtr calc, int n, const Qcn* target_hint,
                          Conacq2Stats* extra) {
  const auto start = std::chrono::steady_clock::now();
  ClausalTheory theory(calc, n, cfg.learning_case, cfg.background_knowledge);
  Rng rng(cfg.seed);
  std::vector<int> order;
  for (int b = 0; b < calc->size(); ++b) order.push_back(b);
  RunStats stats;
  const Qcn shape(calc, n);
  std::uint64_t next_id = 1;

  while (!theory.conflict()) {
    std::vector<std::size_t> open;
    for (std::size_t s = 0; s < shape.edge_count(); ++s) {
      const Edge e = shape.edge_at(s);
      if (!theory.unknown_atoms(e.i, e.j).empty()) open.push_back(s);
    }
    if (open.empty()) break;
    const Edge e = shape.edge_at(open[rng.below(open.size())]);
    std::optional<Relation> target;
    if (target_hint) target = target_hint->relation(e.i, e.j);
    const int b = choose_primitive(theory.unknown_atoms(e.i, e.j), target, cfg.p_yes_bias, order, true, rng);
    const Answer a = oracle.ask(Query{QueryKind::relation, e.i, e.j, b, next_id++}, false);
    ++stats.queries;
    if (a.yes) ++stats.yes_answers;
    theory.assert_atom(e.i, e.j, b, a.yes);
  }

  if (extra) {
    const std::size_t atoms = shape.edge_count() * static_cast<std::size_t>(calc->size());
    extra->skipped = theory.conflict() ? 0 : atoms - stats.queries;
  }
  stats.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {theory.network(), stats, theory.conflict()};
}

}  // namespace qcn
