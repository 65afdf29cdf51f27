#include <catch2/catch_amalgamated.hpp>

#include "conezar/fan.hpp"
#include "conezar/polytopes.hpp"

using namespace conezar;

namespace {

Fan p2_fan() {
    return make_fan(2,
                    {rat_vec({1, 0}), rat_vec({0, 1}), rat_vec({-1, -1})},
                    {{0, 1}, {1, 2}, {0, 2}});
}

Fan p3_fan() {
    return make_fan(3,
                    {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1}),
                     rat_vec({-1, -1, -1})},
                    {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

Fan flip_fan() {
    return make_fan(3,
                    {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({1, 1, 1}),
                     rat_vec({-1, 0, 0}), rat_vec({0, -1, 0}), rat_vec({0, 0, -1})},
                    {{0, 1, 2}, {0, 1, 5}, {0, 2, 4}, {0, 4, 5},
                     {1, 2, 3}, {1, 3, 5}, {2, 3, 4}, {3, 4, 5}});
}

HPolytope axis_box(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
    return polytope_from_inequalities(
        2,
        {rat_vec({1, 0}), rat_vec({0, 1}), rat_vec({-1, 0}), rat_vec({0, -1})},
        {-x0, -y0, x1, y1});
}

} // namespace

TEST_CASE("fan validation accepts the reference fans") {
    CHECK(validate_fan(p2_fan()).valid);
    CHECK(validate_fan(p3_fan()).valid);
    CHECK(validate_fan(flip_fan()).valid);
    CHECK(fan_walls(p2_fan()).size() == 3);
    CHECK(fan_walls(flip_fan()).size() == 12);
}

TEST_CASE("fan validation flags structural defects") {
    Fan missing = make_fan(2,
                           {rat_vec({1, 0}), rat_vec({0, 1}), rat_vec({-1, -1})},
                           {{0, 1}, {1, 2}});
    FanReport rep = validate_fan(missing);
    CHECK_FALSE(rep.valid);

    Fan overlap = make_fan(2,
                           {rat_vec({1, 0}), rat_vec({0, 1}), rat_vec({-1, -1}),
                            rat_vec({1, 1})},
                           {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
    CHECK_FALSE(validate_fan(overlap).valid);

    Fan scaled_ray = make_fan(2,
                              {rat_vec({2, 0}), rat_vec({0, 1}), rat_vec({-1, -1})},
                              {{0, 1}, {1, 2}, {0, 2}});
    CHECK(scaled_ray.rays_were_normalized);
    CHECK(scaled_ray.rays[0] == rat_vec({1, 0}));
}

TEST_CASE("plane triangle from a degree-three divisor") {
    HPolytope t = polytope_from_divisor(p2_fan(), rat_vec({3, 0, 0}));
    REQUIRE_FALSE(t.empty);
    REQUIRE_FALSE(t.degenerate);
    REQUIRE(t.vertices.size() == 3);
    CHECK(t.vertices[0] == rat_vec({-3, 0}));
    CHECK(t.vertices[1] == rat_vec({-3, 3}));
    CHECK(t.vertices[2] == rat_vec({0, 0}));
    CHECK(t.volume == rat_of(9, 2));
    for (const auto& tight : t.tight) CHECK(tight.size() == 2);
}

TEST_CASE("space simplex from a hyperplane divisor") {
    HPolytope s = polytope_from_divisor(p3_fan(), rat_vec({1, 0, 0, 0}));
    REQUIRE(s.vertices.size() == 4);
    CHECK(s.volume == rat_of(1, 6));
}

TEST_CASE("flip threefold divisor polytope") {
    HPolytope b = polytope_from_divisor(flip_fan(), rat_vec({1, 1, 2, 0, 0, 0}));
    REQUIRE_FALSE(b.degenerate);
    CHECK(b.volume == Rat(1));
}

TEST_CASE("zero divisor gives the degenerate origin polytope") {
    HPolytope z = polytope_from_divisor(p2_fan(), rat_vec({0, 0, 0}));
    CHECK(z.degenerate);
    CHECK_FALSE(z.empty);
    REQUIRE(z.vertices.size() == 1);
    CHECK(z.vertices[0] == rat_vec({0, 0}));
    CHECK(z.volume == Rat(0));
}

TEST_CASE("infeasible and unbounded systems are reported") {
    HPolytope e = polytope_from_inequalities(
        1, {rat_vec({1}), rat_vec({-1})}, {Rat(-1), Rat(0)});
    CHECK(e.empty);

    CHECK_THROWS_AS(polytope_from_inequalities(2, {rat_vec({1, 0})}, {Rat(0)}),
                    MathError);
}

TEST_CASE("scaling multiplies volume by the right power") {
    HPolytope t = polytope_from_divisor(p2_fan(), rat_vec({3, 0, 0}));
    HPolytope t2 = scale_polytope(t, Rat(2));
    CHECK(t2.volume == Rat(18));
    HPolytope t0 = scale_polytope(t, Rat(0));
    CHECK(t0.degenerate);
    CHECK(t0.vertices.size() == 1);
}

TEST_CASE("hull of points recovers the expected polytopes") {
    HPolytope sq = hull_of_points(
        2, {rat_vec({0, 0}), rat_vec({1, 0}), rat_vec({0, 1}), rat_vec({1, 1}),
            rat_vec({1, 1})});
    CHECK(sq.volume == Rat(1));
    REQUIRE(sq.vertices.size() == 4);

    HPolytope pt = hull_of_points(2, {rat_vec({2, 3}), rat_vec({2, 3})});
    CHECK(pt.degenerate);
    REQUIRE(pt.vertices.size() == 1);
    CHECK(pt.vertices[0] == rat_vec({2, 3}));

    HPolytope seg = hull_of_points(2, {rat_vec({0, 0}), rat_vec({1, 1})});
    CHECK(seg.degenerate);
    CHECK(seg.vertices.size() == 2);
}

TEST_CASE("Minkowski sums of boxes") {
    HPolytope a = axis_box(Rat(0), Rat(1), Rat(0), Rat(1));
    HPolytope b = axis_box(Rat(0), Rat(2), Rat(0), Rat(1));
    HPolytope s = minkowski_sum(a, b);
    CHECK(s.volume == Rat(6));
    REQUIRE(s.vertices.size() == 4);
}

TEST_CASE("mixed volume of axis-aligned boxes") {
    HPolytope a = axis_box(Rat(0), Rat(1), Rat(0), Rat(1));
    HPolytope b = axis_box(Rat(0), Rat(2), Rat(0), Rat(1));
    CHECK(mixed_volume({a, b}, true) == rat_of(3, 2));
    CHECK(mixed_volume({a, b}, false) == rat_of(3, 2));
    CHECK(mixed_volume({a, a}, true) == Rat(1));
}

TEST_CASE("mixed volume of square and diamond needs the hull path") {
    HPolytope sq = axis_box(Rat(0), Rat(1), Rat(0), Rat(1));
    HPolytope di = polytope_from_inequalities(
        2,
        {rat_vec({1, 1}), rat_vec({1, -1}), rat_vec({-1, 1}), rat_vec({-1, -1})},
        {Rat(1), Rat(1), Rat(1), Rat(1)});
    CHECK(di.volume == Rat(2));
    CHECK(mixed_volume({sq, di}) == Rat(2));
    CHECK_THROWS_AS(mixed_volume({sq, di}, true), MathError);
}

TEST_CASE("divisor polytopes on one fan admit the offset shortcut") {
    Fan f = flip_fan();
    HPolytope p = polytope_from_divisor(f, rat_vec({1, 1, 2, 0, 0, 0}));
    HPolytope q = polytope_from_divisor(f, rat_vec({2, 1, 3, 0, 0, 0}));
    HPolytope r = polytope_from_divisor(f, rat_vec({1, 2, 3, 0, 0, 0}));

    HPolytope lhs = minkowski_sum(p, q);
    RatVec sum_coeffs = rat_vec({3, 2, 5, 0, 0, 0});
    HPolytope rhs = polytope_from_divisor(f, sum_coeffs);
    CHECK(lhs.volume == rhs.volume);

    Rat fast = mixed_volume({p, q, r}, true);
    Rat slow = mixed_volume({p, q, r}, false);
    CHECK(fast == slow);

    Rat diag = mixed_volume({p, p, p}, true);
    CHECK(diag == p.volume);
}

TEST_CASE("three dimensional mixed volume diagonal recovers volume") {
    HPolytope s = polytope_from_divisor(p3_fan(), rat_vec({1, 0, 0, 0}));
    CHECK(mixed_volume({s, s, s}, true) == rat_of(1, 6));
    HPolytope s2 = polytope_from_divisor(p3_fan(), rat_vec({2, 0, 0, 0}));
    CHECK(mixed_volume({s, s, s2}, true) == rat_of(2, 6));
}
