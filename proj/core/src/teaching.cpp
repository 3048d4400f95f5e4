#include "qcn/teaching.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include "qcn/network.hpp"

namespace qcn {

ConceptKind parse_concept_kind(std::string_view s) {
  if (s == "complete") return ConceptKind::complete;
  if (s == "incomplete") return ConceptKind::incomplete;
  if (s == "all") return ConceptKind::all;
  throw TeachingError("unknown concept class '" + std::string(s) + "' (expected complete, incomplete or all)");
}

std::string_view to_string(ConceptKind k) {
  switch (k) {
    case ConceptKind::complete: return "complete";
    case ConceptKind::incomplete: return "incomplete";
    case ConceptKind::all: return "all";
  }
  return "?";
}

namespace {

void check_guard(const ConceptClass& cls) {
  if (!cls.calculus) throw TeachingError("concept class needs a calculus");
  if (cls.n < 2 || cls.n > 3) throw TeachingError("teaching-dimension brute force is limited to 2 <= n <= 3");
  if (cls.calculus->size() > 3) throw TeachingError("teaching-dimension brute force is limited to p <= 3");
}

}  // namespace

std::vector<Concept> enumerate_concepts(const ConceptClass& cls) {
  check_guard(cls);
  const Calculus& calc = *cls.calculus;
  const int p = calc.size();
  const Qcn shape(cls.calculus, cls.n);
  const std::size_t edges = shape.edge_count();

  // Relations allowed on a single edge for this class.
  std::vector<Relation> options;
  for (std::uint32_t bits = 1; bits <= calc.universal().bits(); ++bits) {
    const Relation r(bits);
    const bool ok = cls.kind == ConceptKind::all || r.is_singleton() ||
                    (cls.kind == ConceptKind::incomplete && r == calc.universal());
    if (ok) options.push_back(r);
  }

  std::vector<Concept> out;
  std::vector<std::size_t> pick(edges, 0);
  while (true) {
    Qcn q = shape;
    Concept c = 0;
    for (std::size_t e = 0; e < edges; ++e) {
      q.edge(e).candidates = options[pick[e]];
      c |= static_cast<Concept>(options[pick[e]].bits()) << (e * static_cast<std::size_t>(p));
    }
    if (cls.representability == Representability::syntactic || !enumerate_scenarios(q, 1).empty()) out.push_back(c);

    std::size_t e = 0;
    while (e < edges && ++pick[e] == options.size()) pick[e++] = 0;
    if (e == edges) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t minimum_teaching_set(Concept target, const std::vector<Concept>& concepts, int instances) {
  std::vector<std::uint64_t> diffs;
  for (const Concept c : concepts) {
    if (c != target) diffs.push_back(c ^ target);
  }
  const std::uint64_t universe = instances == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << instances) - 1;
  for (int size = 0; size <= instances; ++size) {
    // Gosper's hack walks the subsets of a given size in increasing order.
    std::uint64_t set = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    while (set <= universe) {
      const bool hits_all =
          std::all_of(diffs.begin(), diffs.end(), [set](std::uint64_t d) { return (d & set) != 0; });
      if (hits_all) return set;
      if (set == 0) break;
      const std::uint64_t low = set & -set;
      const std::uint64_t ripple = set + low;
      set = (((ripple ^ set) >> 2) / low) | ripple;
    }
  }
  return universe;
}

TeachingResult teaching_dimension(const ConceptClass& cls) {
  const std::vector<Concept> concepts = enumerate_concepts(cls);
  const int n = cls.n;
  const int p = cls.calculus->size();
  TeachingResult result;
  result.instances = n * (n - 1) * p / 2;
  result.concepts = concepts.size();
  switch (cls.kind) {
    case ConceptKind::complete: result.formula = n * (n - 1) / 2; break;
    case ConceptKind::incomplete: result.formula = n * (n - 1); break;
    case ConceptKind::all: result.formula = result.instances; break;
  }

  std::vector<std::uint64_t> sets(concepts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < concepts.size();)
      sets[k] = minimum_teaching_set(concepts[k], concepts, result.instances);
  };
  const unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (std::size_t k = 0; k < concepts.size(); ++k) {
    for (std::size_t o = 0; o < concepts.size(); ++o) {
      if (o != k && ((concepts[o] ^ concepts[k]) & sets[k]) == 0) result.verified = false;
    }
    const int size = std::popcount(sets[k]);
    if (size > result.dimension || k == 0) {
      result.dimension = std::max(result.dimension, size);
      if (size == result.dimension) {
        result.hardest = concepts[k];
        result.hardest_teaching_set = sets[k];
      }
    }
  }
  return result;
}

}  // namespace qcn
