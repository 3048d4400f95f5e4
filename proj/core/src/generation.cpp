#include "qcn/generation.hpp"

#include "qcn/propagation.hpp"
#include "qcn/random.hpp"

namespace qcn {

namespace {

int ia_id(const char* symbol) { return *interval_algebra()->find(symbol); }
int rcc8_id(const char* symbol) { return *rcc8()->find(symbol); }

void check_interval(Interval x) {
  if (x.first >= x.second)
    throw GenerationError("degenerate interval [" + std::to_string(x.first) + ", " + std::to_string(x.second) + "]");
}

}  // namespace

int relation_from_intervals(Interval x, Interval y) {
  check_interval(x);
  check_interval(y);
  const auto [xs, xe] = x;
  const auto [ys, ye] = y;
  if (xe < ys) return ia_id("P");
  if (ye < xs) return ia_id("Pi");
  if (xe == ys) return ia_id("M");
  if (ye == xs) return ia_id("Mi");
  if (xs == ys && xe == ye) return ia_id("E");
  if (xs == ys) return ia_id(xe < ye ? "S" : "Si");
  if (xe == ye) return ia_id(xs > ys ? "F" : "Fi");
  if (xs > ys && xe < ye) return ia_id("D");
  if (xs < ys && xe > ye) return ia_id("Di");
  return ia_id(xs < ys ? "O" : "Oi");
}

int relation_from_regions(Interval x, Interval y) {
  check_interval(x);
  check_interval(y);
  const auto [xs, xe] = x;
  const auto [ys, ye] = y;
  if (xe < ys || ye < xs) return rcc8_id("DC");
  if (xe == ys || ye == xs) return rcc8_id("EC");
  if (xs == ys && xe == ye) return rcc8_id("EQ");
  if (xs >= ys && xe <= ye) return rcc8_id(xs > ys && xe < ye ? "NTPP" : "TPP");
  if (ys >= xs && ye <= xe) return rcc8_id(ys > xs && ye < xe ? "NTPPi" : "TPPi");
  return rcc8_id("PO");
}

void validate(const GenConfig& cfg) {
  if (cfg.calculus != "ia" && cfg.calculus != "rcc8")
    throw GenerationError("generation supports calculi 'ia' and 'rcc8', got '" + cfg.calculus + "'");
  if (cfg.n < 2) throw GenerationError("n must be at least 2");
  if (cfg.learning_case < 1 || cfg.learning_case > 3) throw GenerationError("case must be 1, 2 or 3");
  if (!(cfg.p_universal >= 0.0 && cfg.p_universal <= 1.0)) throw GenerationError("p_universal must lie in [0, 1]");
  if (!(cfg.extra_density >= 0.0 && cfg.extra_density <= 1.0))
    throw GenerationError("extra_density must lie in [0, 1]");
}

GeneratedTarget generate_target(const GenConfig& cfg) {
  validate(cfg);
  const CalculusPtr calc = load_calculus(cfg.calculus);
  const bool intervals = cfg.calculus == "ia";
  Rng rng(cfg.seed);

  // Endpoints from a small range so that ties, and with them the boundary
  // relations, turn up often.
  const auto range = static_cast<std::uint64_t>(4 * cfg.n);
  std::vector<Interval> spans;
  spans.reserve(static_cast<std::size_t>(cfg.n));
  for (int v = 0; v < cfg.n; ++v) {
    int a = 0;
    int b = 0;
    do {
      a = static_cast<int>(rng.below(range));
      b = static_cast<int>(rng.below(range));
    } while (a == b);
    spans.emplace_back(std::min(a, b), std::max(a, b));
  }

  Qcn scenario(calc, cfg.n);
  for (std::size_t e = 0; e < scenario.edge_count(); ++e) {
    const Edge ij = scenario.edge_at(e);
    const auto x = spans[static_cast<std::size_t>(ij.i)];
    const auto y = spans[static_cast<std::size_t>(ij.j)];
    scenario.edge(e).candidates = Relation::single(intervals ? relation_from_intervals(x, y) : relation_from_regions(x, y));
  }

  if (cfg.learning_case == 1) return {scenario, scenario, std::move(spans)};

  if (cfg.learning_case == 2) {
    for (std::size_t e = 0; e < scenario.edge_count(); ++e) {
      if (rng.chance(cfg.p_universal)) scenario.edge(e).candidates = calc->universal();
    }
    return {scenario, scenario, std::move(spans)};
  }

  Qcn pre = scenario;
  for (std::size_t e = 0; e < pre.edge_count(); ++e) {
    Relation r = pre.edge(e).candidates;
    for (int b = 0; b < calc->size(); ++b) {
      if (!r.contains(b) && rng.chance(cfg.extra_density)) r = r.with(b);
    }
    pre.edge(e).candidates = r;
  }
  Qcn closed = pre;
  // The scenario survives, so closure cannot empty an edge.
  path_consistency(closed);
  return {std::move(closed), std::move(pre), std::move(spans)};
}

}  // namespace qcn
