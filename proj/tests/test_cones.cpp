#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "conezar/cones.hpp"

using namespace conezar;

namespace {

PolyhedralCone octant3() {
  return PolyhedralCone::from_generators(
      3, {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1})});
}

}  // namespace

TEST_CASE("octant is self-dual") {
  auto c = octant3();
  auto d = c.dual();
  CHECK(d.same_cone(c));
  CHECK(c.full_dim());
  CHECK(c.pointed());
}

TEST_CASE("2d dual cone with minimal generators") {
  auto c = PolyhedralCone::from_generators(2, {rat_vec({2, -1}), rat_vec({0, 1})});
  auto d = c.dual();
  auto gens = d.minimal_generators();
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == rat_vec({1, 0}));
  CHECK(gens[1] == rat_vec({1, 2}));
}

TEST_CASE("dual of dual returns the original cone") {
  auto c = PolyhedralCone::from_generators(
      3, {rat_vec({1, 0, 0}), rat_vec({1, 1, 0}), rat_vec({1, 1, 1}), rat_vec({1, 0, 1})});
  CHECK(c.dual().dual().same_cone(c));

  auto flat = PolyhedralCone::from_generators(3, {rat_vec({1, 0, 0}), rat_vec({0, 1, 0})});
  CHECK(flat.dual().dual().same_cone(flat));  // lower-dimensional case
}

TEST_CASE("dual under a pairing matrix") {
  // Divisor/curve pairing of the rank-two bundle model: rows index the
  // divisor basis, columns the curve basis.
  RatMat P = RatMat::from_rows({rat_vec({0, 1}), rat_vec({1, -1})});
  auto nef = PolyhedralCone::from_generators(2, {rat_vec({1, 0}), rat_vec({1, 1})});
  auto eff_curves = nef.dual(P.transposed());
  auto gens = eff_curves.minimal_generators();
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == rat_vec({0, 1}));
  CHECK(gens[1] == rat_vec({1, 0}));

  // And back: the dual of the curve cone under P is the nef cone.
  CHECK(eff_curves.dual(P).same_cone(nef));
}

TEST_CASE("contains: exact and float paths") {
  auto c = octant3();
  CHECK(c.contains(rat_vec({1, 2, 3})));
  CHECK(c.contains(rat_vec({0, 0, 0})));
  CHECK_FALSE(c.contains(rat_vec({-1, 2, 3})));

  Vec v(3);
  v << 1, 1, 1;
  auto r = c.contains(v);
  CHECK(r.inside);
  CHECK(r.margin == Catch::Approx(1.0));

  v << 1, 1, 0;
  auto edge = c.contains(v);
  CHECK(edge.inside);
  CHECK(edge.margin == Catch::Approx(0.0).margin(1e-12));
  CHECK_FALSE(c.interior_contains(v).inside);

  v << 1, 1, -0.5;
  CHECK_FALSE(c.contains(v).inside);
  CHECK(c.contains(v).margin < 0);
}

TEST_CASE("interior_contains requires full dimension") {
  auto flat = PolyhedralCone::from_generators(3, {rat_vec({1, 0, 0}), rat_vec({0, 1, 0})});
  CHECK_THROWS_AS(flat.interior_contains(rat_vec({1, 1, 0})), MathError);
  Vec v(3);
  v << 1, 1, 0;
  CHECK_THROWS_AS(flat.interior_contains(v), MathError);
}

TEST_CASE("flat cone membership uses its span") {
  auto flat = PolyhedralCone::from_generators(3, {rat_vec({1, 0, 0}), rat_vec({0, 1, 0})});
  CHECK(flat.contains(rat_vec({2, 3, 0})));
  CHECK_FALSE(flat.contains(rat_vec({2, 3, 1})));
  Vec v(3);
  v << 2, 3, 0;
  CHECK(flat.contains(v).inside);
  v << 2, 3, 0.5;
  CHECK_FALSE(flat.contains(v).inside);
}

TEST_CASE("pointedness via LP") {
  auto half = PolyhedralCone::from_generators(
      2, {rat_vec({1, 0}), rat_vec({-1, 0}), rat_vec({0, 1})});
  CHECK_FALSE(half.pointed());
  CHECK(octant3().pointed());
}

TEST_CASE("zero generators are rejected") {
  CHECK_THROWS_AS(PolyhedralCone::from_generators(2, {rat_vec({0, 0})}), MathError);
  CHECK_THROWS_AS(PolyhedralCone::from_generators(2, {rat_vec({1, 0, 0})}), MathError);
}

TEST_CASE("minimal_generators drops redundant rays") {
  auto c = PolyhedralCone::from_generators(
      2, {rat_vec({1, 0}), rat_vec({1, 1}), rat_vec({0, 1}), rat_vec({2, 2})});
  auto gens = c.minimal_generators();
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == rat_vec({0, 1}));
  CHECK(gens[1] == rat_vec({1, 0}));
}

TEST_CASE("exact and float membership agree away from the boundary") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<RatVec> gens;
    for (int k = 0; k < 4; ++k) {
      RatVec g = {Rat(coord(rng)), Rat(coord(rng)), Rat(coord(rng))};
      if (!is_zero(g)) gens.push_back(g);
    }
    if (gens.empty()) continue;
    auto c = PolyhedralCone::from_generators(3, gens);
    RatVec q = {Rat(coord(rng)), Rat(coord(rng)), Rat(coord(rng))};
    bool exact = c.contains(q);
    auto flt = c.contains(to_vec(q));
    if (std::abs(flt.margin) > 1e-8) CHECK(exact == flt.inside);
  }
}
