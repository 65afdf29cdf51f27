#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conezar/polar.hpp"

using namespace conezar;

namespace {

// Closed-form curve volume on the projective bundle preset.
double bundle_vol(double x, double y) {
    if (x >= 2 * y) return (1.5 * x - y) * std::sqrt(y);
    return std::pow(x, 1.5) / std::sqrt(2.0);
}

Vec random_nef(const ChowModel& m, std::mt19937_64& eng) {
    Mat g = detail::generator_columns(m.nef_div, false);
    std::uniform_real_distribution<double> coeff(0.1, 2.0);
    Vec x(g.cols());
    for (int i = 0; i < int(g.cols()); ++i) x[i] = coeff(eng);
    return g * x;
}

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

}  // namespace

TEST_CASE("curve volume matches the closed form on the projective bundle") {
    ChowModel m = make_preset("proj-bundle-p1");
    ConcaveFn f = volume_fn(m);

    PolarValue pv = polar_eval(f, m.pairing_d, vec2(3, 1));
    CHECK(pv.value == Catch::Approx(3.5).epsilon(1e-8));
    CHECK(pv.minimizer[0] == Catch::Approx(1.5).margin(1e-5));
    CHECK(pv.minimizer[1] == Catch::Approx(1.0).margin(1e-5));

    PolarValue pw = polar_eval(f, m.pairing_d, vec2(1, 1));
    CHECK(pw.value == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));

    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> cx(0.3, 4.0), cy(0.2, 3.0);
    for (int i = 0; i < 25; ++i) {
        double x = cx(eng), y = cy(eng);
        double got = polar_eval(f, m.pairing_d, vec2(x, y)).value;
        CHECK(got == Catch::Approx(bundle_vol(x, y)).epsilon(1e-6));
    }
}

TEST_CASE("curve volume agrees with a dense slice scan in rank two") {
    ChowModel m = make_preset("proj-bundle-p1");
    ConcaveFn f = volume_fn(m);
    Mat g = detail::generator_columns(m.nef_div, true);

    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> cx(0.4, 3.0), cy(0.3, 2.5);
    for (int i = 0; i < 8; ++i) {
        Vec w = vec2(cx(eng), cy(eng));
        Vec u = g.transpose() * (m.pairing_d * w);
        auto ratio = [&](double t) {
            Vec x = vec2(1 - t, t);
            double fv = f.eval(g * x);
            if (!(fv > 0)) return 1e300;
            return u.dot(x) / std::cbrt(fv);
        };
        double best = 1e300, tbest = 0.5;
        const int steps = 20000;
        for (int k = 1; k < steps; ++k) {
            double t = double(k) / steps;
            double r = ratio(t);
            if (r < best) {
                best = r;
                tbest = t;
            }
        }
        double lo = std::max(tbest - 1.0 / steps, 1e-12);
        double hi = std::min(tbest + 1.0 / steps, 1.0 - 1e-12);
        for (int round = 0; round < 60; ++round) {
            double span = (hi - lo) / 6.0;
            double bt = lo;
            double bv = 1e300;
            for (int j = 0; j <= 6; ++j) {
                double t = lo + span * j;
                double r = ratio(t);
                if (r < bv) {
                    bv = r;
                    bt = t;
                }
            }
            best = std::min(best, bv);
            lo = std::max(bt - span, 1e-12);
            hi = std::min(bt + span, 1.0 - 1e-12);
        }
        double oracle = std::pow(best, 1.5);
        double got = polar_eval(f, m.pairing_d, w).value;
        CHECK(got == Catch::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("zariski decomposition on the projective bundle") {
    ChowModel m = make_preset("proj-bundle-p1");

    ZariskiResult z = zariski(m, vec2(3, 1));
    CHECK(z.volhat == Catch::Approx(3.5).epsilon(1e-8));
    CHECK(z.gamma.norm() < 1e-6);
    CHECK(z.gamma_zero);
    CHECK(z.B[0] == Catch::Approx(1.5).margin(1e-5));
    CHECK(z.B[1] == Catch::Approx(1.0).margin(1e-5));

    ZariskiResult w = zariski(m, vec2(1, 1));
    CHECK(w.volhat == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(w.positive_part[0] == Catch::Approx(1.0).margin(1e-6));
    CHECK(w.positive_part[1] == Catch::Approx(0.5).margin(1e-6));
    CHECK(w.gamma[0] == Catch::Approx(0.0).margin(1e-6));
    CHECK(w.gamma[1] == Catch::Approx(0.5).margin(1e-6));
    CHECK_FALSE(w.gamma_zero);
    CHECK_FALSE(w.gamma_movable);
    CHECK(w.residuals.mov_margin < -1e-3);
    CHECK(std::abs(w.residuals.orthogonality) < 1e-8);
    CHECK(w.residuals.vol_gap < 1e-9);
    CHECK(w.residuals.eff_margin > -1e-9);

    CHECK_THROWS_WITH(zariski(m, vec2(1, 0)),
                      "decomposition defined only for big classes");
    CHECK_THROWS_AS(zariski(m, vec2(-1, 1)), MathError);
}

TEST_CASE("zariski decomposition on the flipped toric threefold") {
    ChowModel m = make_preset("toric-flip-3fold");

    ZariskiResult z = zariski(m, vec3(2, 1, 1));
    CHECK(z.volhat == Catch::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-7));
    double r = 1.0 / std::sqrt(3.0);
    CHECK(z.B[0] == Catch::Approx(r).margin(1e-5));
    CHECK(z.B[1] == Catch::Approx(r).margin(1e-5));
    CHECK(z.B[2] == Catch::Approx(2 * r).margin(1e-5));
    CHECK(z.gamma[0] == Catch::Approx(4.0 / 3.0).margin(1e-6));
    CHECK(std::abs(z.gamma[1]) < 1e-6);
    CHECK(std::abs(z.gamma[2]) < 1e-6);
    CHECK_FALSE(z.gamma_movable);
    CHECK(z.spread < 1e-6);

    ZariskiResult ci = zariski(m, vec3(2, 3, 3));
    CHECK(ci.volhat == Catch::Approx(6.0).epsilon(1e-7));
    CHECK(ci.gamma_zero);
    CHECK(ci.B[0] == Catch::Approx(1.0).margin(1e-4));
    CHECK(ci.B[2] == Catch::Approx(2.0).margin(1e-4));
}

TEST_CASE("flip decompositions match the quadratic root oracle") {
    ChowModel m = make_preset("toric-flip-3fold");
    std::mt19937_64 eng(23);
    std::uniform_real_distribution<double> cx(0.6, 1.4), off(0.01, 1.2);

    int tested = 0;
    while (tested < 10) {
        double x = cx(eng);
        double y = x + off(eng), zc = x + off(eng);
        if (4 * (y - x) * (zc - x) >= x * x) continue;

        double b1 = 4 * y + 4 * zc - 6 * x;
        double c0 = 4 * (y - x) * (zc - x) - x * x;
        double t = (-b1 + std::sqrt(b1 * b1 - 12 * c0)) / 6.0;
        REQUIRE(t > 0);
        REQUIRE(x - t >= -1e-12);

        double a = std::sqrt(y - x + t), b = std::sqrt(zc - x + t);
        double vol = 3 * a * b * (a + b);

        ZariskiResult z = zariski(m, vec3(x, y, zc));
        CHECK(z.volhat == Catch::Approx(vol).epsilon(1e-6));
        CHECK(z.gamma[0] == Catch::Approx(t).margin(1e-6));
        CHECK(std::abs(z.gamma[1]) < 1e-6);
        CHECK(std::abs(z.gamma[2]) < 1e-6);
        ++tested;
    }
}

TEST_CASE("curve powers of nef classes recover the divisor volume") {
    std::mt19937_64 eng(31);
    for (const char* name :
         {"proj-bundle-p1", "toric-flip-3fold", "diagonal-abelian(3)"}) {
        ChowModel m = make_preset(name);
        for (int i = 0; i < 5; ++i) {
            Vec a = random_nef(m, eng);
            Vec alpha = curve_power(m, a);
            double va = vol_nef(m, a);
            PolarValue pv = vol_curve(m, alpha);
            CHECK(pv.value == Catch::Approx(va).epsilon(1e-6));
            ZariskiResult z = zariski(m, alpha);
            CHECK(z.gamma.norm() < 1e-5 * std::max(1.0, alpha.norm()));
            CHECK(detail::ray_cosine(z.B, a) > 1.0 - 1e-8);
        }
    }
}

TEST_CASE("volume derivative closed form agrees with finite differences") {
    ChowModel m = make_preset("proj-bundle-p1");

    double d = derivative(m, vec2(3, 1), vec2(-2, -1));
    CHECK(d == Catch::Approx(-3.75).margin(1e-8));

    DerivativeCheck chk = derivative_check(m, vec2(3, 1), vec2(-2, -1));
    CHECK(chk.pass);
    CHECK(chk.finite_diffs.size() == 3);

    for (double t : {0.1, 0.3, 0.6}) {
        Vec at = vec2(3 - 2 * t, 1 - t);
        double expect = -3 * std::sqrt(1 - t) - 0.75 / std::sqrt(1 - t);
        CHECK(derivative(m, at, vec2(-2, -1)) ==
              Catch::Approx(expect).epsilon(1e-6));
        double volt = (3.5 - 2 * t) * std::sqrt(1 - t);
        CHECK(vol_curve(m, at).value == Catch::Approx(volt).epsilon(1e-7));
    }

    double self = derivative(m, vec2(3, 1), vec2(3, 1));
    CHECK(self == Catch::Approx(1.5 * 3.5).epsilon(1e-7));

    ChowModel flip = make_preset("toric-flip-3fold");
    CHECK(std::abs(derivative(flip, vec3(2, 1, 1), vec3(1, 0, 0))) < 1e-7);
}

TEST_CASE("morse criterion certifies bigness of differences") {
    ChowModel m = make_preset("proj-bundle-p1");
    Vec alpha = vec2(3, 1);

    for (double s : {0.1, 0.5, 1.0}) {
        MorseReport r = morse_check(m, alpha, vec2(s, 0));
        CHECK(r.alpha_big);
        CHECK(r.beta_movable);
        CHECK(r.criterion == Catch::Approx(3.5 - 3 * s).margin(1e-7));
        CHECK(r.lower_bound == Catch::Approx(3.5 - 4.5 * s).margin(1e-7));
        CHECK(r.vol_diff == Catch::Approx(3.5 - 1.5 * s).epsilon(1e-6));
        CHECK(r.vol_diff >= r.lower_bound - 1e-9);
        if (3.5 - 3 * s > 0) {
            CHECK(r.criterion_positive);
            CHECK(r.big_certificate);
        }
    }

    MorseReport zero = morse_check(m, alpha, vec2(0, 0));
    CHECK(zero.beta_movable);
    CHECK(zero.criterion == Catch::Approx(3.5).epsilon(1e-7));
    CHECK(zero.diff_big);
}

TEST_CASE("probe finds witnesses against a smaller morse constant") {
    ProbeResult r = optimality_probe(3, 0.5);
    REQUIRE(r.found);
    CHECK(r.criterion > 0);
    CHECK_FALSE(r.diff_big);
    double total = r.lambda[0] * r.lambda[1] * r.lambda[2];
    double sum = 0, maxp = 0;
    for (int j = 0; j < 3; ++j) {
        sum += total / r.lambda[j];
        maxp = std::max(maxp, total / r.lambda[j]);
    }
    CHECK(sum < 3.0 / 2.5);
    CHECK(maxp >= 1.0);

    CHECK(optimality_probe(2, 0.5).found);
    CHECK(optimality_probe(3, 2.9).found);

    ProbeResult none = optimality_probe(3, 0.0);
    CHECK_FALSE(none.found);
    CHECK(none.tried > 600);

    CHECK_THROWS_AS(optimality_probe(1, 0.5), ConfigError);
    CHECK_THROWS_AS(optimality_probe(3, 3.0), ConfigError);
    CHECK_THROWS_AS(optimality_probe(3, -0.1), ConfigError);
}

TEST_CASE("reverse correlation inequality holds on table classes") {
    ChowModel m = make_preset("toric-flip-3fold");
    Vec b11 = vec3(1, 1, 2), t11 = vec3(2, 3, 3);

    InequalityReport r = reverse_kt_check(m, b11, b11, t11);
    CHECK(r.memberships_ok);
    CHECK(r.lhs == Catch::Approx(108.0).epsilon(1e-9));
    CHECK(r.rhs == Catch::Approx(36.0).epsilon(1e-9));
    CHECK(r.slack > 0);

    InequalityReport z = reverse_kt_check(m, b11, b11, vec3(0, 0, 0));
    CHECK(z.lhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(z.rhs == Catch::Approx(0.0).margin(1e-12));

    std::mt19937_64 eng(41);
    Mat eg = detail::generator_columns(m.mov_cur, false);
    std::uniform_real_distribution<double> coeff(0.0, 1.5);
    for (int i = 0; i < 50; ++i) {
        Vec v = random_nef(m, eng), x = random_nef(m, eng);
        Vec yc(eg.cols());
        for (int j = 0; j < int(eg.cols()); ++j) yc[j] = coeff(eng);
        Vec y = eg * yc;
        InequalityReport s = reverse_kt_check(m, v, x, y);
        CHECK(s.slack >= -1e-7 * std::max(1.0, std::abs(s.lhs)));
    }
}

TEST_CASE("mixed product inequality holds with the factorial constant") {
    ChowModel m = make_preset("proj-bundle-p1");
    InequalityReport r = appendix_kt_check(m, vec2(1, 1), vec2(1, 1), vec2(1, 1), 1);
    CHECK(r.lhs == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(r.rhs == Catch::Approx(4.0 / 3.0).epsilon(1e-12));

    std::mt19937_64 eng(43);
    for (const char* name : {"proj-bundle-p1", "toric-flip-3fold"}) {
        ChowModel mm = make_preset(name);
        for (int i = 0; i < 40; ++i) {
            Vec a = random_nef(mm, eng), b = random_nef(mm, eng),
                g = random_nef(mm, eng);
            for (int k = 1; k <= mm.n - 1; ++k) {
                InequalityReport s = appendix_kt_check(mm, a, b, g, k);
                CHECK(s.memberships_ok);
                CHECK(s.slack >= -1e-7 * std::max(1.0, std::abs(s.lhs)));
            }
        }
    }
    CHECK_THROWS_AS(appendix_kt_check(m, vec2(1, 1), vec2(1, 1), vec2(1, 1), 3),
                    MathError);
}

TEST_CASE("double polar transform returns the original function") {
    PolyhedralCone ray = PolyhedralCone::from_generators(1, {rat_vec({1})});
    ConcaveFn f = make_concave_fn(2.5, ray, [](const Vec& v) {
        return std::pow(v[0], 2.5);
    });
    RatMat one(1, 1);
    one(0, 0) = Rat(1);
    InvolutionReport r1 = involution_check(f, one, 10);
    CHECK(r1.max_rel_err < 1e-9);

    ChowModel pb = make_preset("proj-bundle-p1");
    InvolutionReport r2 = involution_check(pb, 20);
    CHECK(r2.samples == 20);
    CHECK(r2.max_rel_err < 1e-4);

    ChowModel qs = make_preset("quadratic-surface");
    InvolutionReport r3 = involution_check(qs, 20);
    CHECK(r3.max_rel_err < 1e-4);
}

TEST_CASE("minimizers satisfy the pairing equality and scale correctly") {
    ChowModel m = make_preset("proj-bundle-p1");
    ConcaveFn f = volume_fn(m);
    double s = f.s;

    std::mt19937_64 eng(53);
    std::uniform_real_distribution<double> cx(0.3, 3.0);
    for (int i = 0; i < 10; ++i) {
        Vec w = vec2(cx(eng), cx(eng));
        PolarValue pv = polar_eval(f, m.pairing_d, w);
        double lhs = std::pow(pv.value, (s - 1) / s) *
                     std::pow(f.eval(pv.minimizer), 1.0 / s);
        double rhs = pv.minimizer.dot(m.pairing_d * w);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-8));

        PolarValue sc = polar_eval(f, m.pairing_d, Vec(3.0 * w));
        CHECK(sc.value ==
              Catch::Approx(std::pow(3.0, s / (s - 1)) * pv.value).epsilon(1e-7));
        CHECK(detail::ray_cosine(sc.minimizer, pv.minimizer) > 1.0 - 1e-9);
    }
}

TEST_CASE("minimizer ray is stable under shifts along the positive part") {
    ChowModel m = make_preset("proj-bundle-p1");
    Vec alpha = vec2(1, 1);
    ZariskiResult z = zariski(m, alpha);
    for (double t : {-0.5, 1.0, 2.0}) {
        ZariskiResult zt = zariski(m, Vec(alpha + t * z.positive_part));
        CHECK(detail::ray_cosine(zt.B, z.B) > 1.0 - 1e-6);
    }
    PolarValue pv = vol_curve(make_preset("toric-flip-3fold"), vec3(2, 1, 1));
    CHECK(pv.spread < 1e-6);
}

TEST_CASE("boundary and outside classes have zero volume") {
    ChowModel m = make_preset("proj-bundle-p1");
    PolarValue b = vol_curve(m, vec2(1, 0));
    CHECK(b.value == 0.0);
    CHECK(b.boundary);
    PolarValue o = vol_curve(m, vec2(-1, 1));
    CHECK(o.value == 0.0);

    ChowModel ab = make_preset("diagonal-abelian(3)");
    PolarValue full = vol_curve(ab, Vec(Vec::Ones(3)));
    CHECK(full.value == Catch::Approx(6.0).epsilon(1e-6));
    ZariskiResult z = zariski(ab, Vec(Vec::Ones(3)));
    CHECK(z.B[0] == Catch::Approx(1.0).margin(1e-4));
    CHECK(z.gamma_zero);
}

TEST_CASE("concavity suite passes on the reference models") {
    PolarOptions opts;
    ConcavityReport pb = concavity_suite(make_preset("proj-bundle-p1"), 6, opts);
    CHECK(pb.trials == 6);
    CHECK(pb.min_superadd_slack >= -1e-6);
    CHECK(pb.equality_implies_proportional);
    CHECK(pb.max_proportional_gap <= 1e-6);
    CHECK(pb.continuity_ok);
    CHECK(pb.linearity_ok);

    ConcavityReport fl = concavity_suite(make_preset("toric-flip-3fold"), 4, opts);
    CHECK(fl.min_superadd_slack >= -1e-6);
    CHECK(fl.continuity_ok);
    CHECK(fl.linearity_ok);

    ChowModel m = make_preset("proj-bundle-p1");
    ZariskiResult za = zariski(m, vec2(3, 1));
    ZariskiResult zb = zariski(m, vec2(1, 1));
    ZariskiResult zab = zariski(m, vec2(4, 2));
    double e = 2.0 / 3.0;
    double slack = std::pow(zab.volhat, e) - std::pow(za.volhat, e) -
                   std::pow(zb.volhat, e);
    CHECK(slack > 1e-3);
}

TEST_CASE("construction rejects functions outside the class") {
    PolyhedralCone quad = PolyhedralCone::from_generators(
        2, {rat_vec({1, 0}), rat_vec({0, 1})});
    CHECK_THROWS_AS(make_concave_fn(2.0, quad,
                                    [](const Vec& v) { return v[0] + v[1]; }),
                    MathError);
    CHECK_THROWS_AS(make_concave_fn(2.0, quad,
                                    [](const Vec& v) { return v.squaredNorm(); }),
                    MathError);
    ConcaveFn ok = make_concave_fn(2.0, quad,
                                   [](const Vec& v) { return v[0] * v[1]; });
    CHECK(ok.s == 2.0);
}

TEST_CASE("decompositions transport along a blow-down") {
    ChowModel y = make_preset("quadratic-surface");
    ChowModel x = finish_model(detail::quadratic_surface(rat_vec({1})));

    ModelMap map;
    map.pullback = RatMat(2, 1);
    map.pullback(0, 0) = Rat(1);
    map.pushforward = RatMat(1, 2);
    map.pushforward(0, 0) = Rat(1);

    Vec alpha_x(1);
    alpha_x << 2;
    LiftResult lift = lift_zariski(y, x, map, alpha_x, vec2(0, -0.5));
    CHECK(lift.volhat_source == Catch::Approx(4.0).epsilon(1e-7));
    CHECK(lift.volhat_target == Catch::Approx(4.0).epsilon(1e-7));
    CHECK(lift.alpha_source[0] == Catch::Approx(2.0).margin(1e-6));
    CHECK(lift.alpha_source[1] == Catch::Approx(-0.5).margin(1e-6));
    CHECK(lift.gamma_effective);
    CHECK(lift.B_nef);
    CHECK(lift.minimizer_cosine > 1.0 - 1e-8);

    for (double t : {0.0, 0.3, 1.0}) {
        PolarValue pv = vol_curve(y, vec2(2, -t));
        CHECK(pv.value == Catch::Approx(4.0).epsilon(1e-7));
    }

    CHECK_THROWS_AS(lift_zariski(y, x, map, alpha_x, vec2(0.5, -0.5)),
                    MathError);
}

TEST_CASE("distance to the complete intersection cone is measurable") {
    ChowModel m = make_preset("toric-flip-3fold");
    Vec inside = curve_power(m, vec3(1.0, 1.5, 3.2));
    CHECK(ci_distance(m, inside, 400) < 1e-3);
    Vec outside = vec3(1, 0, 0);
    CHECK(ci_distance(m, outside, 400) > 0.05);
}
