#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcn/network.hpp"

namespace qcn {

/// Closed interval [start, end] with start < end.
using Interval = std::pair<int, int>;

struct GenConfig {
  std::string calculus = "ia";  // "ia" or "rcc8"
  int n = 10;
  int learning_case = 1;  // 1, 2 or 3
  double p_universal = 0.0;   // case 2 only
  double extra_density = 0.3;  // case 3 only
  std::uint64_t seed = 0;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Allen basic relation of x with respect to y, as an index into interval_algebra().
int relation_from_intervals(Interval x, Interval y);
/// RCC8 basic relation of 1-D closed regions, as an index into rcc8().
int relation_from_regions(Interval x, Interval y);

struct GeneratedTarget {
  /// What the learner must converge to. Case 3 is closed under path consistency.
  Qcn target;
  /// The network the simulated oracle answers against. Equal to `target`
  /// except in case 3, where it is the network before closure.
  Qcn oracle_view;
  /// The intervals or regions realizing the underlying scenario.
  std::vector<Interval> intervals;
};

/// Throws GenerationError on an invalid configuration.
GeneratedTarget generate_target(const GenConfig& cfg);

void validate(const GenConfig& cfg);

}  // namespace qcn
