#pragma once

#include <deque>

#include "qcn/learner.hpp"

namespace qcn {

struct BaselineConfig {
  int learning_case = 1;
  double p_yes_bias = 0.5;
  std::uint64_t seed = 0;
  bool mistakes_enabled = false;
  std::size_t max_queries = 0;
};

/// No propagation, random order. In case 1 an edge is only learned once
/// some primitive gets a "yes", so a contradiction shows up as an edge
/// whose every primitive was denied.
LearnResult learn_naive(const BaselineConfig& cfg, Oracle& oracle, CalculusPtr calc, int n,
                        const Qcn* target_hint = nullptr);

struct Conacq2Config {
  int learning_case = 1;
  double p_yes_bias = 0.5;
  std::uint64_t seed = 0;
  /// Composition-table clauses. Only instantiated in case 1, where every
  /// edge of the target holds exactly one primitive.
  bool background_knowledge = true;
};

struct Conacq2Stats {
  std::size_t skipped = 0;  // atoms fixed by unit propagation instead of a query
};

/// Clausal learner: one atom per (edge, primitive), unit propagation over
/// the answers and the composition clauses. Conflicts collapse the run.
LearnResult learn_conacq2(const Conacq2Config& cfg, Oracle& oracle, CalculusPtr calc, int n,
                          const Qcn* target_hint = nullptr, Conacq2Stats* extra = nullptr);

/// The clausal theory itself, exposed for tests.
class ClausalTheory {
 public:
  ClausalTheory(CalculusPtr calc, int n, int learning_case, bool background_knowledge);

  /// Asserts atom a(i, j, b) and propagates. False on conflict.
  bool assert_atom(int i, int j, int b, bool value);

  /// Atoms known true / false on (i, j), in the i -> j orientation.
  Relation true_atoms(int i, int j) const;
  Relation false_atoms(int i, int j) const;
  Relation unknown_atoms(int i, int j) const;
  bool conflict() const { return conflict_; }
  bool complete() const;

  /// Network read from the assignment: true atoms per edge (case 1 and 3),
  /// with an all-true edge read as universal in case 2.
  Qcn network() const;

 private:
  bool set(std::size_t slot, Relation t, Relation f);
  bool propagate();
  bool revise_triangle(int a, int b, int c);
  bool revise_orientation(int x, int y, int z);

  CalculusPtr calc_;
  Qcn shape_;
  int case_;
  bool bk_;
  std::vector<Relation> true_;
  std::vector<Relation> false_;
  std::deque<std::size_t> queue_;
  std::vector<bool> queued_;
  bool conflict_ = false;
};

}  // namespace qcn
