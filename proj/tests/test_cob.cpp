#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kh/cob.hpp"
#include "kh/complex.hpp"

#include <random>

using namespace kh;

namespace {

PlanarMatching mk(std::vector<int> pair, int loops = 0) {
  PlanarMatching m;
  m.pair = std::move(pair);
  m.loops = loops;
  REQUIRE(is_planar_matching(m));
  return m;
}

const Coeff Z{};

CobMorphism basis_elt(const PlanarMatching& D, const PlanarMatching& E, uint64_t mask) {
  CobMorphism f = zero_morphism(D, E);
  f.terms[mask] = 1;
  return f;
}

}  // namespace

TEST_CASE("planarity stack test") {
  CHECK(is_planar_matching(mk({1, 0})));
  CHECK(is_planar_matching(mk({3, 2, 1, 0})));
  CHECK(is_planar_matching(mk({1, 0, 3, 2})));
  PlanarMatching crossing;
  crossing.pair = {2, 3, 0, 1};  // chords cross
  CHECK(!is_planar_matching(crossing));
  PlanarMatching notinv;
  notinv.pair = {1, 0, 2, 3};  // fixed points
  CHECK(!is_planar_matching(notinv));
}

TEST_CASE("dec_basis sizes from glued circle counts") {
  auto arc = mk({1, 0});
  CHECK(dec_basis(arc, arc).size() == 2);  // one chord, one circle

  auto nested = mk({3, 2, 1, 0});
  CHECK(dec_basis(nested, nested).size() == 4);  // two circles

  auto unnested = mk({1, 0, 3, 2});
  CHECK(dec_basis(nested, unnested).size() == 2);  // one circle
  CHECK(dec_basis(unnested, nested).size() == 2);

  CHECK_THROWS_AS((void)dec_basis(arc, nested), KhError);
}

TEST_CASE("compose_h relations") {
  auto arc = mk({1, 0});
  // double dot relation: dotted disk squared vanishes
  auto dotted = basis_elt(arc, arc, 1);
  CHECK(compose_h(dotted, dotted, Z).is_zero());
  // identity composes to identity
  auto id = identity_morphism(arc);
  CHECK(compose_h(id, id, Z) == id);
  CHECK(compose_h(id, dotted, Z) == dotted);

  // saddle then saddle back: neck cutting gives the two complementary dots
  auto nested = mk({3, 2, 1, 0});
  auto unnested = mk({1, 0, 3, 2});
  auto up = basis_elt(unnested, nested, 0);
  auto down = basis_elt(nested, unnested, 0);
  CobMorphism tube = compose_h(down, up, Z);
  CHECK(tube.terms.size() == 2);
  GluedCircles g = glued_circles(unnested, unnested);
  REQUIRE(g.count == 2);
  CHECK(tube.terms.count(0b01) == 1);
  CHECK(tube.terms.count(0b10) == 1);
  CHECK(tube.terms.at(0b01) == 1);
  CHECK(tube.terms.at(0b10) == 1);

  // sphere relations via loops: cap then cup is a broken tube, cup then cap a sphere
  auto loop = empty_matching(1);
  auto none = empty_matching(0);
  auto cap = basis_elt(loop, none, 0);
  auto cup = basis_elt(none, loop, 0);
  CHECK(compose_h(cap, cup, Z).is_zero());  // dotless sphere
  auto cap_dot = basis_elt(loop, none, 1);
  CobMorphism one = compose_h(cap_dot, cup, Z);
  REQUIRE(one.terms.size() == 1);
  CHECK(one.terms.at(0) == 1);  // sphere with one dot = 1
}

TEST_CASE("norm and the horizontal composition bound") {
  auto arc = mk({1, 0});
  CobMorphism f = zero_morphism(arc, arc);
  f.terms[0] = 2;
  f.terms[1] = -3;
  CHECK(f.norm() == 5);
  CHECK(zero_morphism(arc, arc).norm() == 0);

  std::mt19937_64 rng(7);
  auto all4 = all_planar_matchings(4);
  auto all6 = all_planar_matchings(6);
  auto all8 = all_planar_matchings(8);
  auto rnd_morphism = [&](const PlanarMatching& D, const PlanarMatching& E) {
    CobMorphism m = zero_morphism(D, E);
    GluedCircles g = glued_circles(D, E);
    for (uint64_t mask = 0; mask < (uint64_t(1) << g.count); ++mask)
      if (rng() % 3 == 0) m.terms[mask] = static_cast<long>(rng() % 7) - 3;
    for (auto it = m.terms.begin(); it != m.terms.end();)
      it = it->second == 0 ? m.terms.erase(it) : std::next(it);
    return m;
  };
  for (auto* pool : {&all4, &all6, &all8}) {
    for (int rep = 0; rep < 40; ++rep) {
      auto& P = *pool;
      auto& A = P[rng() % P.size()];
      auto& B = P[rng() % P.size()];
      auto& C = P[rng() % P.size()];
      CobMorphism f1 = rnd_morphism(A, B), f2 = rnd_morphism(B, C);
      CobMorphism c = compose_h(f2, f1, Z);  // norm bound asserted inside
      Int bound = (Int(1) << (A.boundary_size() / 2 - 1)) * f1.norm() * f2.norm();
      CHECK(c.norm() <= bound);
    }
  }
}

TEST_CASE("compose_h associativity and bilinearity, randomized") {
  std::mt19937_64 rng(11);
  auto pool = all_planar_matchings(6);
  auto rnd = [&](const PlanarMatching& D, const PlanarMatching& E) {
    CobMorphism m = zero_morphism(D, E);
    GluedCircles g = glued_circles(D, E);
    for (uint64_t mask = 0; mask < (uint64_t(1) << g.count); ++mask)
      if (rng() % 2 == 0) m.terms[mask] = static_cast<long>(rng() % 5) - 2;
    for (auto it = m.terms.begin(); it != m.terms.end();)
      it = it->second == 0 ? m.terms.erase(it) : std::next(it);
    return m;
  };
  for (int rep = 0; rep < 60; ++rep) {
    auto& A = pool[rng() % pool.size()];
    auto& B = pool[rng() % pool.size()];
    auto& C = pool[rng() % pool.size()];
    auto& D = pool[rng() % pool.size()];
    CobMorphism f = rnd(A, B), g = rnd(B, C), g2 = rnd(B, C), h = rnd(C, D);
    CHECK(compose_h(h, compose_h(g, f, Z), Z) == compose_h(compose_h(h, g, Z), f, Z));
    CHECK(compose_h(add(g, g2, Z), f, Z) == add(compose_h(g, f, Z), compose_h(g2, f, Z), Z));
  }
}

TEST_CASE("composition is additive on internal degree") {
  std::mt19937_64 rng(3);
  auto pool = all_planar_matchings(6);
  for (int rep = 0; rep < 80; ++rep) {
    auto& A = pool[rng() % pool.size()];
    auto& B = pool[rng() % pool.size()];
    auto& C = pool[rng() % pool.size()];
    GluedCircles gab = glued_circles(A, B), gbc = glued_circles(B, C), gac = glued_circles(A, C);
    uint64_t mf = rng() % (uint64_t(1) << gab.count);
    uint64_t mg = rng() % (uint64_t(1) << gbc.count);
    int df = term_degree(gab, 6, mf), dg = term_degree(gbc, 6, mg);
    CobMorphism c = compose_h(basis_elt(B, C, mg), basis_elt(A, B, mf), Z);
    for (auto& [mask, coeff] : c.terms) CHECK(term_degree(gac, 6, mask) == df + dg);
  }
}

TEST_CASE("deloop object: r d = id and d r = id") {
  GradedObject X;
  Summand s;
  s.q = 0;
  s.m = empty_matching(1);
  X.s.push_back(s);
  DeloopResult res = deloop_object(X);
  REQUIRE(res.object.s.size() == 2);
  CHECK(res.object.s[0].q == 1);
  CHECK(res.object.s[1].q == -1);

  MorphismMatrix rd = matrix_compose(res.r, res.d, Z);
  REQUIRE(rd.entries.size() == 1);
  CHECK(rd.entries.at({0, 0}) == identity_morphism(empty_matching(1)));
  MorphismMatrix dr = matrix_compose(res.d, res.r, Z);
  REQUIRE(dr.entries.size() == 2);
  CHECK(dr.entries.at({0, 0}) == identity_morphism(empty_matching()));
  CHECK(dr.entries.at({1, 1}) == identity_morphism(empty_matching()));

  // two circles: four summands with shifts 2, 0, 0, -2
  GradedObject X2;
  Summand s2;
  s2.q = 0;
  s2.m = empty_matching(2);
  X2.s.push_back(s2);
  DeloopResult res2 = deloop_object(X2);
  REQUIRE(res2.object.s.size() == 4);
  std::multiset<int> shifts;
  for (auto& t : res2.object.s) shifts.insert(t.q);
  CHECK(shifts == std::multiset<int>{-2, 0, 0, 2});
  MorphismMatrix rd2 = matrix_compose(res2.r, res2.d, Z);
  REQUIRE(rd2.entries.size() == 1);
  CHECK(rd2.entries.at({0, 0}) == identity_morphism(empty_matching(2)));
  MorphismMatrix dr2 = matrix_compose(res2.d, res2.r, Z);
  for (size_t i = 0; i < 4; ++i) REQUIRE(dr2.entries.count({i, i}) == 1);
  CHECK(dr2.entries.size() == 4);

  // loop-free object is untouched
  GradedObject X3;
  Summand s3;
  s3.q = 2;
  s3.m = mk({1, 0});
  X3.s.push_back(s3);
  DeloopResult res3 = deloop_object(X3);
  REQUIRE(res3.object.s.size() == 1);
  CHECK(res3.object.s[0].q == 2);
  CHECK(res3.d.entries.at({0, 0}) == identity_morphism(mk({1, 0})));
}

TEST_CASE("planar gluing: circles appear where expected") {
  // glue two 2-point arcs end to end: no circle
  auto arc = mk({1, 0});
  GlueSpec gs;
  gs.glued = {{1, 0}};
  gs.result_points = {{0, 0}, {1, 1}};
  int cycles = -1;
  PlanarMatching r = glue_objects(arc, arc, gs, &cycles);
  CHECK(cycles == 0);
  CHECK(r.pair == std::vector<int>{1, 0});
  CHECK(r.loops == 0);

  // glue both endpoints: one circle
  GlueSpec gs2;
  gs2.glued = {{0, 1}, {1, 0}};
  gs2.result_points = {};
  PlanarMatching r2 = glue_objects(arc, arc, gs2, &cycles);
  CHECK(cycles == 1);
  CHECK(r2.loops == 1);
  CHECK(r2.boundary_size() == 0);
}
