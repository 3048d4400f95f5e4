#pragma once

// Independent reference implementations used to cross-check the engine.

#include <vector>

#include "qcn/network.hpp"
#include "qcn/random.hpp"

namespace qcn::ref {

/// Allen composition computed from integer endpoint configurations.
std::vector<Relation> interval_composition();
/// Point composition computed from integer triples.
std::vector<Relation> point_composition();
/// RCC8 compositions realizable by closed 1-D regions (a subset of the table).
std::vector<Relation> region_composition_1d();

/// All-triples path consistency with full composition, repeated until
/// nothing changes. False if an edge empties.
bool naive_path_consistency(Qcn& q);

/// C_ij is contained in C_ik o C_kj for every triple.
bool closed_under_triangles(const Qcn& q);

/// Maximum cardinality search plus perfect-elimination check.
bool is_chordal(int n, const std::vector<Edge>& edges);

/// Random network: each edge keeps each primitive with probability density,
/// and universal edges appear with probability p_universal.
Qcn random_network(CalculusPtr calc, int n, double density, double p_universal, Rng& rng);

/// Sorted scenarios of q.
std::vector<Scenario> scenarios(const Qcn& q);

}  // namespace qcn::ref
