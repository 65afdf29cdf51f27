#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "conezar/toric.hpp"

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

Fan bent_fan() {
    return make_fan(3,
                    {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1}),
                     rat_vec({-1, -1, -1}), rat_vec({1, -1, -2}),
                     rat_vec({1, 0, -1}), rat_vec({0, -1, -2}), rat_vec({0, 0, -1})},
                    {{0, 1, 2}, {0, 1, 5}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5},
                     {1, 2, 3}, {1, 3, 7}, {1, 4, 5}, {1, 4, 7},
                     {3, 4, 6}, {3, 6, 7}, {4, 6, 7}});
}

ToricOptions bent_options() {
    ToricOptions opts;
    opts.basis_rays = std::vector<int>{0, 4, 5, 6, 7};
    opts.basis_walls = std::vector<std::vector<int>>{{0, 3}, {0, 5}, {1, 4}, {3, 6}, {3, 7}};
    return opts;
}

const WallCurve& find_wall(const std::vector<WallCurve>& walls,
                           std::vector<int> rays) {
    std::sort(rays.begin(), rays.end());
    for (const auto& w : walls)
        if (w.wall_rays == rays) return w;
    throw std::runtime_error("wall not found");
}

// Curve class of the product of two divisor classes on a threefold.
RatVec curve_of_product(const ChowModel& m, const RatVec& a, const RatVec& b) {
    RatVec rhs(static_cast<std::size_t>(m.rho));
    for (int i = 0; i < m.rho; ++i) {
        RatVec basis(static_cast<std::size_t>(m.rho), Rat(0));
        basis[static_cast<std::size_t>(i)] = Rat(1);
        rhs[static_cast<std::size_t>(i)] = m.tensor.eval_mixed({basis, a, b});
    }
    auto c = solve(m.pairing, rhs);
    REQUIRE(c);
    return *c;
}

bool cone_has_generators(const PolyhedralCone& c,
                         std::vector<RatVec> expected) {
    std::vector<RatVec> gens = c.minimal_generators();
    std::sort(expected.begin(), expected.end());
    return gens == expected;
}

} // namespace

TEST_CASE("projective plane model") {
    ChowModel m = build_chow(p2_fan());
    CHECK(m.n == 2);
    CHECK(m.rho == 1);
    CHECK(m.divisor_labels == std::vector<std::string>{"D1"});
    CHECK(m.pairing(0, 0) == Rat(1));
    CHECK(m.tensor.value({0, 0}) == Rat(1));
    CHECK(vol_nef(m, rat_vec({3})) == Rat(9));
    CHECK(curve_power(m, rat_vec({3})) == rat_vec({3}));
}

TEST_CASE("projective space model") {
    ChowModel m = build_chow(p3_fan());
    CHECK(m.rho == 1);
    CHECK(m.tensor.value({0, 0, 0}) == Rat(1));
    CHECK(vol_nef(m, rat_vec({2})) == Rat(8));
}

TEST_CASE("flip threefold wall curve table") {
    Fan f = flip_fan();
    auto walls = wall_curves(f);
    CHECK(walls.size() == 12);
    CHECK(find_wall(walls, {0, 1}).row == rat_vec({-1, -1, 1, 0, 0, 1}));
    CHECK(find_wall(walls, {0, 2}).row == rat_vec({0, 1, 0, 0, 1, 0}));
    CHECK(find_wall(walls, {1, 2}).row == rat_vec({1, 0, 0, 1, 0, 0}));
}

TEST_CASE("flip threefold model matches the reference tables") {
    ChowModel m = build_chow(flip_fan());
    REQUIRE(m.rho == 3);
    CHECK(m.divisor_labels == std::vector<std::string>{"D1", "D2", "D3"});
    CHECK(m.curve_labels == std::vector<std::string>{"C12", "C13", "C23"});

    RatMat expected(3, 3);
    expected(0, 0) = Rat(-1); expected(0, 1) = Rat(0); expected(0, 2) = Rat(1);
    expected(1, 0) = Rat(-1); expected(1, 1) = Rat(1); expected(1, 2) = Rat(0);
    expected(2, 0) = Rat(1);  expected(2, 1) = Rat(0); expected(2, 2) = Rat(0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(m.pairing(i, j) == expected(i, j));

    CHECK(cone_has_generators(m.eff_div,
                              {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1})}));
    CHECK(cone_has_generators(m.nef_div,
                              {rat_vec({1, 0, 1}), rat_vec({0, 1, 1}), rat_vec({0, 0, 1})}));
    CHECK(cone_has_generators(m.eff_cur,
                              {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1})}));
    CHECK(cone_has_generators(m.mov_cur,
                              {rat_vec({1, 1, 1}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1})}));
}

TEST_CASE("flip threefold intersection numbers") {
    ChowModel m = build_chow(flip_fan());

    auto B = [](long long a, long long b) { return rat_vec({a, b, a + b}); };
    CHECK(vol_nef(m, B(1, 1)) == Rat(6));
    CHECK(vol_nef(m, B(2, 1)) == Rat(18));
    CHECK(vol_nef(m, B(1, 2)) == Rat(18));

    CHECK(curve_power(m, B(1, 1)) == rat_vec({2, 3, 3}));
    CHECK(curve_power(m, B(2, 1)) == rat_vec({4, 8, 5}));

    // Classes on the nef boundary ray annihilate the flipping curve.
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            CHECK(pair_classes(m, B(a, b), rat_vec({1, 0, 0})) == Rat(0));

    HPolytope p = polytope_from_divisor(flip_fan(), rat_vec({1, 1, 2, 0, 0, 0}));
    CHECK(Rat(6) * p.volume == vol_nef(m, B(1, 1)));
}

TEST_CASE("bent appendix fan wall rows") {
    Fan f = bent_fan();
    CHECK(validate_fan(f).valid);
    auto walls = wall_curves(f);
    CHECK(walls.size() == 18);
    CHECK(find_wall(walls, {0, 3}).row == rat_vec({-2, 0, 1, -1, 1, 0, 0, 0}));
}

TEST_CASE("bent appendix model matches the reference tables") {
    ChowModel m = build_chow(bent_fan(), bent_options());
    REQUIRE(m.rho == 5);
    CHECK(m.divisor_labels ==
          std::vector<std::string>{"D1", "D5", "D6", "D7", "D8"});
    CHECK(m.curve_labels ==
          std::vector<std::string>{"C14", "C16", "C25", "C47", "C48"});

    std::vector<RatVec> cols = {rat_vec({-2, 1, 0, 0, 0}), rat_vec({1, 1, -2, 0, 0}),
                                rat_vec({0, -1, 1, 0, 1}), rat_vec({0, 1, 0, -2, 1}),
                                rat_vec({0, 0, 0, 1, -2})};
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i)
            CHECK(m.pairing(i, j) == cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);

    std::vector<RatVec> A = {rat_vec({1, 3, 2, 2, 1}), rat_vec({3, 6, 4, 4, 2}),
                             rat_vec({6, 12, 9, 8, 4}), rat_vec({2, 4, 3, 2, 1}),
                             rat_vec({4, 8, 6, 5, 2})};
    CHECK(cone_has_generators(m.nef_div, A));

    // The chosen wall curves are dual to the nef generators.
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            RatVec e(5, Rat(0));
            e[static_cast<std::size_t>(j)] = Rat(1);
            CHECK(pair_classes(m, A[static_cast<std::size_t>(i)], e) ==
                  (i == j ? Rat(1) : Rat(0)));
        }
}

TEST_CASE("bent appendix product expansions") {
    ChowModel m = build_chow(bent_fan(), bent_options());
    RatVec A1 = rat_vec({1, 3, 2, 2, 1});
    RatVec A2 = rat_vec({3, 6, 4, 4, 2});
    RatVec A3 = rat_vec({6, 12, 9, 8, 4});
    RatVec A4 = rat_vec({2, 4, 3, 2, 1});
    RatVec A5 = rat_vec({4, 8, 6, 5, 2});

    auto sq = [&](const RatVec& v) { return curve_of_product(m, v, v); };
    CHECK(sq(A1) == rat_vec({1, 3, 6, 2, 4}));
    CHECK(sq(A2) == rat_vec({9, 22, 45, 15, 30}));
    CHECK(sq(A3) == rat_vec({36, 90, 180, 60, 120}));
    CHECK(sq(A4) == rat_vec({4, 10, 20, 6, 13}));
    CHECK(sq(A5) == rat_vec({16, 40, 80, 26, 52}));

    auto prod2 = [&](const RatVec& a, const RatVec& b) {
        RatVec p = curve_of_product(m, a, b);
        for (auto& x : p) x *= 2;
        return p;
    };
    auto times = [](RatVec v, long long k) {
        for (auto& x : v) x *= k;
        return v;
    };
    CHECK(prod2(A1, A2) == times(sq(A1), 6));
    CHECK(prod2(A1, A3) == times(sq(A1), 12));
    CHECK(prod2(A1, A4) == times(sq(A1), 4));
    CHECK(prod2(A1, A5) == times(sq(A1), 8));
    RatVec base = rat_vec({12, 30, 60, 20, 40});
    CHECK(prod2(A2, A4) == base);
    CHECK(prod2(A2, A3) == times(base, 3));
    CHECK(prod2(A2, A5) == times(base, 2));
    CHECK(prod2(A3, A4) == times(base, 2));
    CHECK(prod2(A3, A5) == times(base, 4));
    CHECK(prod2(A4, A5) == sq(A5));

    CHECK(m.tensor.eval_mixed({A1, A1, A1}) == Rat(1));
}

TEST_CASE("tensor entries agree with scaled mixed volumes") {
    Fan f = flip_fan();
    ChowModel m = build_chow(f);
    ClassGroup cg = class_groups(f);
    std::vector<RatVec> nef = {rat_vec({1, 0, 1}), rat_vec({0, 1, 1}),
                               rat_vec({0, 0, 1})};
    for (std::size_t i = 0; i < nef.size(); ++i)
        for (std::size_t j = i; j < nef.size(); ++j)
            for (std::size_t k = j; k < nef.size(); ++k) {
                std::vector<HPolytope> ps = {
                    polytope_from_divisor(f, cg.representative(nef[i], 6)),
                    polytope_from_divisor(f, cg.representative(nef[j], 6)),
                    polytope_from_divisor(f, cg.representative(nef[k], 6))};
                Rat mv = mixed_volume(ps, true);
                CHECK(m.tensor.eval_mixed({nef[i], nef[j], nef[k]}) == Rat(6) * mv);
            }
}
