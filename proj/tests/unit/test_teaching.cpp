#include <bit>

#include "doctest.h"
#include "qcn/teaching.hpp"

using namespace qcn;

TEST_CASE("concept counts for two points") {
  const auto pa = point_algebra();
  CHECK(enumerate_concepts(ConceptClass{ConceptKind::complete, pa, 2}).size() == 3);
  CHECK(enumerate_concepts(ConceptClass{ConceptKind::incomplete, pa, 2}).size() == 4);
  CHECK(enumerate_concepts(ConceptClass{ConceptKind::all, pa, 2}).size() == 7);
}

TEST_CASE("consistent reading drops unrealizable labelings") {
  const auto pa = point_algebra();
  // 13 weak orders of three points, against 27 syntactic labelings.
  CHECK(enumerate_concepts(ConceptClass{ConceptKind::complete, pa, 3}).size() == 13);
  CHECK(enumerate_concepts(ConceptClass{ConceptKind::complete, pa, 3, Representability::syntactic}).size() == 27);
  CHECK(enumerate_concepts(ConceptClass{ConceptKind::all, pa, 3, Representability::syntactic}).size() == 343);
}

TEST_CASE("teaching dimension formulas under the syntactic reading") {
  const auto pa = point_algebra();
  const int expect[] = {3, 6, 9};
  int k = 0;
  for (const ConceptKind kind : {ConceptKind::complete, ConceptKind::incomplete, ConceptKind::all}) {
    const auto r = teaching_dimension(ConceptClass{kind, pa, 3, Representability::syntactic});
    CHECK(r.dimension == expect[k]);
    CHECK(r.formula == expect[k]);
    CHECK(r.verified);
    CHECK(r.instances == 9);
    CHECK(r.dimension <= r.instances);
    ++k;
  }
}

TEST_CASE("under the consistent reading one edge of a scenario is implied") {
  const auto r = teaching_dimension(ConceptClass{ConceptKind::complete, point_algebra(), 3});
  CHECK(r.dimension == 2);
  CHECK(r.formula == 3);
  CHECK(r.verified);
}

TEST_CASE("teaching sets separate their concept") {
  const std::vector<Concept> cs{0b001, 0b010, 0b100, 0b111};
  const auto set = minimum_teaching_set(0b111, cs, 3);
  CHECK(std::popcount(set) == 2);
  CHECK(std::popcount(minimum_teaching_set(0b001, cs, 3)) == 2);
}

TEST_CASE("the brute force refuses large classes") {
  CHECK_THROWS_AS(enumerate_concepts(ConceptClass{ConceptKind::all, point_algebra(), 4}), TeachingError);
  CHECK_THROWS_AS(enumerate_concepts(ConceptClass{ConceptKind::all, interval_algebra(), 2}), TeachingError);
  CHECK_THROWS_AS(parse_concept_kind("some"), TeachingError);
}
