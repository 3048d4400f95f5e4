#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcn/algebra.hpp"

namespace qcn {

enum class ConceptKind { complete, incomplete, all };
/// consistent: a labeling counts only if the network it describes has a
/// scenario. syntactic: every labeling of the right shape counts.
enum class Representability { consistent, syntactic };

ConceptKind parse_concept_kind(std::string_view s);
std::string_view to_string(ConceptKind k);

struct ConceptClass {
  ConceptKind kind = ConceptKind::complete;
  CalculusPtr calculus;
  int n = 3;
  Representability representability = Representability::consistent;
};

class TeachingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bit e * p + b is set when primitive b holds on edge e (edges in the
/// network's upper-triangular order).
using Concept = std::uint64_t;

/// Exhaustive and duplicate-free. Guarded to n <= 3 and p <= 3.
std::vector<Concept> enumerate_concepts(const ConceptClass& cls);

struct TeachingResult {
  int instances = 0;  // |X| = n(n-1)p/2
  int dimension = 0;  // max over concepts of the minimum teaching set
  int formula = 0;    // n(n-1)/2, n(n-1) or |X| depending on the class
  std::size_t concepts = 0;
  Concept hardest = 0;
  std::uint64_t hardest_teaching_set = 0;
  bool verified = true;  // every teaching set found distinguishes its concept
};

/// Minimum teaching sets by increasing-size subset search; the per-concept
/// searches run on a small thread pool.
TeachingResult teaching_dimension(const ConceptClass& cls);

/// Smallest instance subset on which `target` disagrees with every other concept.
std::uint64_t minimum_teaching_set(Concept target, const std::vector<Concept>& concepts, int instances);

}  // namespace qcn
