#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "conezar/polar.hpp"
#include "conezar/polytopes.hpp"
#include "conezar/presets.hpp"
#include "conezar/quadratic.hpp"
#include "conezar/toric.hpp"

namespace conezar {

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0;
};

namespace verify {
namespace detail {

class Checker {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (failures_ <= 4) {
            if (!msg_.empty()) msg_ += "; ";
            msg_ += what;
        }
    }

    bool pass() const { return failures_ == 0; }

    std::string summary() const {
        if (failures_ == 0) return std::to_string(checks_) + " checks";
        return std::to_string(failures_) + " of " + std::to_string(checks_) +
               " checks failed: " + msg_;
    }

private:
    int checks_ = 0;
    int failures_ = 0;
    std::string msg_;
};

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return std::string(buf);
}

template <typename Body>
SuiteResult timed_suite(const char* name, Body body) {
    SuiteResult r;
    r.name = name;
    Checker ck;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(ck);
    } catch (const std::exception& e) {
        ck.expect(false, std::string("unexpected exception: ") + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    r.pass = ck.pass();
    r.detail = ck.summary();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

inline Vec random_nef(const Mat& gens, std::mt19937_64& eng, double lo = 0.05,
                      double hi = 2.0) {
    std::uniform_real_distribution<double> coeff(lo, hi);
    Vec c(gens.cols());
    for (int j = 0; j < int(gens.cols()); ++j) c[j] = coeff(eng);
    return gens * c;
}

/// Curve class of the product of two divisors, read off from pairings
/// against the divisor basis.
inline RatVec mixed_product3(const ChowModel& m, const RatVec& a,
                             const RatVec& b) {
    RatVec rhs(static_cast<std::size_t>(m.rho));
    for (int i = 0; i < m.rho; ++i) {
        RatVec e(static_cast<std::size_t>(m.rho), Rat(0));
        e[static_cast<std::size_t>(i)] = Rat(1);
        rhs[static_cast<std::size_t>(i)] = m.tensor.eval_mixed({e, a, b});
    }
    auto c = solve(m.pairing, rhs);
    if (!c) throw MathError("intersection pairing is degenerate");
    return *c;
}

}  // namespace detail

inline SuiteResult suite_bundle_closed_form() {
    return detail::timed_suite("bundle-closed-form", [](detail::Checker& ck) {
        ChowModel m = make_preset("proj-bundle-p1");
        std::mt19937_64 eng(101);
        std::uniform_real_distribution<double> coord(0.05, 4.0);
        for (int i = 0; i < 200; ++i) {
            double x = coord(eng), y = coord(eng);
            double expect = x >= 2 * y ? (1.5 * x - y) * std::sqrt(y)
                                       : std::pow(x, 1.5) / std::sqrt(2.0);
            Vec a(2);
            a << x, y;
            PolarValue pv = vol_curve(m, a);
            ck.expect(std::abs(pv.value - expect) <= 1e-5 * expect,
                      "value off at (" + detail::num(x) + "," + detail::num(y) +
                          "): got " + detail::num(pv.value) + " want " +
                          detail::num(expect));
        }
    });
}

inline SuiteResult suite_derivative_formula() {
    return detail::timed_suite("derivative-formula", [](detail::Checker& ck) {
        ChowModel m = make_preset("proj-bundle-p1");
        Vec beta(2);
        beta << -2, -1;
        for (double t : {0.0, 0.25, 0.5, 0.9}) {
            Vec at(2);
            at << 3 - 2 * t, 1 - t;
            double expect =
                -3 * std::sqrt(1 - t) - 0.75 / std::sqrt(1 - t);
            double closed = derivative(m, at, beta);
            ck.expect(std::abs(closed - expect) <=
                          1e-4 * std::max(1.0, std::abs(expect)),
                      "derivative at t=" + detail::num(t) + ": got " +
                          detail::num(closed) + " want " + detail::num(expect));
            DerivativeCheck dc = derivative_check(m, at, beta);
            ck.expect(dc.pass, "finite differences disagree at t=" +
                                   detail::num(t));
        }
    });
}

inline SuiteResult suite_flip_zariski() {
    return detail::timed_suite("flip-zariski", [](detail::Checker& ck) {
        ChowModel m = make_preset("toric-flip-3fold");

        const long table[3][3] = {{-1, 0, 1}, {-1, 1, 0}, {1, 0, 0}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                ck.expect(m.pairing(i, j) == Rat(table[i][j]),
                          "pairing entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");

        PolyhedralCone nef = PolyhedralCone::from_generators(
            3, {rat_vec({1, 0, 1}), rat_vec({0, 1, 1}), rat_vec({0, 0, 1})});
        PolyhedralCone axes = PolyhedralCone::from_generators(
            3, {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1})});
        PolyhedralCone mov = PolyhedralCone::from_generators(
            3, {rat_vec({1, 1, 1}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1})});
        ck.expect(m.nef_div.same_cone(nef), "nef cone");
        ck.expect(m.eff_div.same_cone(axes), "effective divisor cone");
        ck.expect(m.eff_cur.same_cone(axes), "effective curve cone");
        ck.expect(m.mov_cur.same_cone(mov), "movable curve cone");

        std::mt19937_64 eng(313);
        std::uniform_real_distribution<double> ux(0.8, 2.0);
        std::uniform_real_distribution<double> ratio(0.3, 1.8);
        int done = 0;
        while (done < 50) {
            double x = ux(eng), y = x * ratio(eng), z = x * ratio(eng);
            double b = 4 * y + 4 * z - 6 * x;
            double c = 4 * (y - x) * (z - x) - x * x;
            double disc = b * b - 12 * c;
            if (disc <= 1e-6) continue;
            double t = (-b + std::sqrt(disc)) / 6.0;
            if (t <= 0.02) continue;
            ck.expect(std::abs(4 * (y - x + t) * (z - x + t) -
                               (x - t) * (x - t)) <= 1e-9 * x * x,
                      "root does not solve its equation");
            Vec alpha(3);
            alpha << x, y, z;
            ZariskiResult zr = zariski(m, alpha);
            ck.expect(std::abs(zr.gamma[0] - t) <= 1e-6 * std::max(1.0, t) &&
                          std::abs(zr.gamma[1]) <= 1e-6 &&
                          std::abs(zr.gamma[2]) <= 1e-6,
                      "negative part off the flipping curve at (" +
                          detail::num(x) + "," + detail::num(y) + "," +
                          detail::num(z) + ")");
            ++done;
        }
    });
}

inline SuiteResult suite_nonconvex_nef_tables() {
    return detail::timed_suite("nonconvex-nef-tables", [](detail::Checker& ck) {
        ChowModel m = make_preset("fs-nonconvex");
        std::vector<RatVec> A = {rat_vec({1, 3, 2, 2, 1}), rat_vec({3, 6, 4, 4, 2}),
                                 rat_vec({6, 12, 9, 8, 4}), rat_vec({2, 4, 3, 2, 1}),
                                 rat_vec({4, 8, 6, 5, 2})};
        ck.expect(m.nef_div.same_cone(PolyhedralCone::from_generators(5, A)),
                  "nef cone generators");
        ck.expect(int(m.nef_div.minimal_generators().size()) == 5,
                  "nef cone is simplicial");

        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                RatVec e(5, Rat(0));
                e[std::size_t(j)] = Rat(1);
                ck.expect(pair_classes(m, A[std::size_t(i)], e) ==
                              Rat(i == j ? 1 : 0),
                          "nef basis is not dual to the curve basis");
            }

        std::vector<RatVec> squares = {
            rat_vec({1, 3, 6, 2, 4}), rat_vec({9, 22, 45, 15, 30}),
            rat_vec({36, 90, 180, 60, 120}), rat_vec({4, 10, 20, 6, 13}),
            rat_vec({16, 40, 80, 26, 52})};
        for (int i = 0; i < 5; ++i)
            ck.expect(curve_power(m, A[std::size_t(i)]) == squares[std::size_t(i)],
                      "square of generator " + std::to_string(i + 1));

        RatVec mixed_base = rat_vec({12, 30, 60, 20, 40});
        auto scaled = [](const RatVec& v, Rat s) {
            RatVec out = v;
            for (auto& e : out) e *= s;
            return out;
        };
        struct Cross {
            int i, j;
            RatVec twice;
        };
        std::vector<Cross> crosses = {
            {0, 1, scaled(squares[0], Rat(6))},
            {0, 2, scaled(squares[0], Rat(12))},
            {0, 3, scaled(squares[0], Rat(4))},
            {0, 4, scaled(squares[0], Rat(8))},
            {1, 2, scaled(mixed_base, Rat(3))},
            {1, 3, mixed_base},
            {1, 4, scaled(mixed_base, Rat(2))},
            {2, 3, scaled(mixed_base, Rat(2))},
            {2, 4, scaled(mixed_base, Rat(4))},
            {3, 4, squares[4]}};
        for (const auto& c : crosses) {
            RatVec twice = scaled(
                detail::mixed_product3(m, A[std::size_t(c.i)], A[std::size_t(c.j)]),
                Rat(2));
            ck.expect(twice == c.twice, "cross product A" + std::to_string(c.i + 1) +
                                            "A" + std::to_string(c.j + 1));
        }
        ck.expect(vol_nef(m, A[0]) == Rat(1), "top power of the first generator");

        RatVec witness = rat_vec({13, 32, 65, 21, 43});
        RatVec sum(5, Rat(0));
        for (int k = 0; k < 5; ++k)
            sum[std::size_t(k)] = squares[1][std::size_t(k)] + squares[3][std::size_t(k)];
        ck.expect(witness == sum, "witness is not the expected sum of squares");

        double dist = ci_distance(m, to_vec(witness), 4000);
        ck.expect(dist > 0.002,
                  "witness distance " + detail::num(dist) + " not above 0.002");

        RatVec ample(5, Rat(0));
        for (int k = 0; k < 5; ++k)
            ample[std::size_t(k)] = A[1][std::size_t(k)] + A[3][std::size_t(k)];
        double inside = ci_distance(m, to_vec(curve_power(m, ample)), 4000);
        ck.expect(inside < 1e-3, "control point distance " + detail::num(inside) +
                                     " not below 1e-3");
    });
}

inline SuiteResult suite_zariski_certificates() {
    return detail::timed_suite("zariski-certificates", [](detail::Checker& ck) {
        struct Quota {
            const char* preset;
            int runs;
        };
        const std::array<Quota, 6> quotas = {{{"proj-bundle-p1", 120},
                                              {"toric-flip-3fold", 100},
                                              {"fs-nonconvex", 60},
                                              {"diagonal-abelian(2)", 80},
                                              {"diagonal-abelian(3)", 60},
                                              {"quadratic-surface", 80}}};
        int serial = 0;
        for (const auto& q : quotas) {
            ChowModel m = make_preset(q.preset);
            std::mt19937_64 eng(4200 + serial);
            for (int i = 0; i < q.runs; ++i, ++serial) {
                Vec alpha = conezar::detail::random_big_curve(m, eng);
                PolarOptions first, second;
                first.seed = 9000 + std::uint64_t(serial);
                second.seed = 77000 + 13 * std::uint64_t(serial);
                ZariskiResult z = zariski(m, alpha, first);
                ZariskiResult again = zariski(m, alpha, second);
                std::string tag = std::string(q.preset) + " run " +
                                  std::to_string(i);
                ck.expect(z.residuals.orthogonality <= 1e-6 * z.volhat,
                          "orthogonality residual, " + tag);
                ck.expect(z.residuals.eff_margin >= -1e-7,
                          "negative part leaves the effective cone, " + tag);
                ck.expect(z.residuals.vol_gap <= 1e-6 * std::max(1.0, z.volhat),
                          "volume gap, " + tag);
                ck.expect(conezar::detail::ray_cosine(z.B, again.B) >=
                              1.0 - 1e-6,
                          "restarts disagree on the minimizer ray, " + tag);
                if (!z.gamma_zero)
                    ck.expect(!z.gamma_movable,
                              "nonzero negative part is movable, " + tag);
            }
        }
    });
}

inline SuiteResult suite_inequality_families() {
    return detail::timed_suite("inequality-families", [](detail::Checker& ck) {
        const std::array<const char*, 4> names = {
            "proj-bundle-p1", "toric-flip-3fold", "diagonal-abelian(3)",
            "quadratic-surface"};
        int base_seed = 600;
        for (const char* name : names) {
            ChowModel m = make_preset(name);
            Mat nefg = conezar::detail::generator_columns(m.nef_div, false);
            Mat movg = conezar::detail::generator_columns(m.mov_cur, false);
            std::mt19937_64 eng(base_seed++);
            const double nn = double(m.n);

            for (int i = 0; i < 200; ++i) {
                Vec a = detail::random_nef(nefg, eng);
                Vec b = detail::random_nef(nefg, eng);

                double lhs = pair_classes(m, b, curve_power(m, a));
                double rhs = std::pow(vol_nef(m, a), (nn - 1) / nn) *
                             std::pow(vol_nef(m, b), 1 / nn);
                double scale = std::max({1.0, lhs, rhs});
                ck.expect(lhs - rhs >= -1e-7 * scale,
                          std::string("pairing bound violated on ") + name);
                if (conezar::detail::ray_cosine(a, b) < 1.0 - 1e-3)
                    ck.expect(lhs - rhs > 1e-9 * scale,
                              std::string("equality without proportionality on ") +
                                  name);

                Vec prop = 1.7 * a;
                double plhs = pair_classes(m, prop, curve_power(m, a));
                double prhs = std::pow(vol_nef(m, a), (nn - 1) / nn) *
                              std::pow(vol_nef(m, prop), 1 / nn);
                ck.expect(std::abs(plhs - prhs) <=
                              1e-8 * std::max(1.0, std::abs(plhs)),
                          std::string("proportional pair misses equality on ") +
                              name);

                Vec y = detail::random_nef(movg, eng);
                InequalityReport rk = reverse_kt_check(m, a, b, y);
                ck.expect(rk.memberships_ok,
                          std::string("membership data wrong on ") + name);
                ck.expect(rk.slack >= -1e-7 * std::max({1.0, rk.lhs, rk.rhs}),
                          std::string("reverse bound violated on ") + name);

                Vec g = detail::random_nef(nefg, eng);
                for (int k = 1; k <= m.n - 1; ++k) {
                    InequalityReport ak = appendix_kt_check(m, a, b, g, k);
                    ck.expect(ak.slack >= -1e-7 * std::max({1.0, ak.lhs, ak.rhs}),
                              std::string("mixed-power bound violated on ") + name);
                }
            }

            for (int i = 0; i < 200; ++i) {
                Vec alpha = conezar::detail::random_big_curve(m, eng);
                std::uniform_real_distribution<double> small(0.0, 0.6);
                Mat cg = conezar::detail::generator_columns(m.eff_cur, true);
                Vec beta = Vec::Zero(m.rho);
                std::uniform_int_distribution<int> pick(0, int(cg.cols()) - 1);
                beta += small(eng) * cg.col(pick(eng));
                MorseReport mr = morse_check(m, alpha, beta);
                if (mr.alpha_big && mr.criterion_positive && mr.beta_movable) {
                    ck.expect(mr.big_certificate,
                              std::string("positivity criterion without interior "
                                          "certificate on ") +
                                  name);
                    ck.expect(mr.lower_bound <=
                                  mr.vol_diff + 1e-6 * std::max(1.0, mr.vol_diff),
                              std::string("volume bound exceeded on ") + name);
                }
            }

            ConcavityReport cr = concavity_suite(m, 200);
            ck.expect(cr.min_superadd_slack >= -1e-7,
                      std::string("superadditivity violated on ") + name);
            ck.expect(cr.equality_implies_proportional,
                      std::string("equality case without proportional parts on ") +
                          name);
            ck.expect(cr.continuity_ok,
                      std::string("volume not locally Lipschitz on ") + name);
            ck.expect(cr.linearity_ok,
                      std::string("minimizer not linear along the segment on ") +
                          name);
        }
    });
}

inline SuiteResult suite_polar_involution() {
    return detail::timed_suite("polar-involution", [](detail::Checker& ck) {
        for (const char* name : {"proj-bundle-p1", "quadratic-surface"}) {
            ChowModel m = make_preset(name);
            InvolutionReport rep = involution_check(m, 20);
            ck.expect(rep.samples == 20,
                      std::string("sample count wrong on ") + name);
            ck.expect(rep.max_rel_err <= 1e-4,
                      std::string("double transform drifts by ") +
                          detail::num(rep.max_rel_err) + " on " + name);
        }
    });
}

inline SuiteResult suite_tensor_mixed_volume() {
    return detail::timed_suite("tensor-mixed-volume", [](detail::Checker& ck) {
        struct ToricPreset {
            const char* name;
            Fan fan;
            std::optional<std::vector<int>> basis_rays;
        };
        std::vector<ToricPreset> presets;
        presets.push_back({"toric-flip-3fold", conezar::detail::flip_fan3(),
                           std::nullopt});
        presets.push_back({"fs-nonconvex", conezar::detail::fs_fan3(),
                           std::vector<int>{0, 4, 5, 6, 7}});

        for (auto& p : presets) {
            ChowModel m = make_preset(p.name);
            ClassGroup cg = class_groups(p.fan, p.basis_rays);

            std::vector<RatVec> basis;
            for (const auto& g : m.nef_div.minimal_generators()) {
                basis.push_back(g);
                if (rank_of_rows(basis) != int(basis.size())) basis.pop_back();
                if (int(basis.size()) == m.rho) break;
            }
            ck.expect(int(basis.size()) == m.rho,
                      std::string("nef cone does not span on ") + p.name);
            if (int(basis.size()) != m.rho) continue;

            std::vector<HPolytope> polys;
            for (const auto& cls : basis)
                polys.push_back(polytope_from_divisor(
                    p.fan, cg.representative(cls, p.fan.rays.size())));

            BigInt nfact = 1;
            for (int i = 2; i <= m.n; ++i) nfact *= i;

            std::vector<int> idx(std::size_t(m.n), 0);
            while (true) {
                bool sorted = true;
                for (int k = 0; k + 1 < m.n; ++k)
                    if (idx[std::size_t(k)] > idx[std::size_t(k) + 1]) sorted = false;
                if (sorted) {
                    std::vector<RatVec> args;
                    std::vector<HPolytope> tuple;
                    for (int k = 0; k < m.n; ++k) {
                        args.push_back(basis[std::size_t(idx[std::size_t(k)])]);
                        tuple.push_back(polys[std::size_t(idx[std::size_t(k)])]);
                    }
                    Rat lhs = m.tensor.eval_mixed(args);
                    Rat rhs = Rat(nfact) * mixed_volume(tuple, true);
                    ck.expect(lhs == rhs,
                              std::string("tensor entry disagrees with the scaled "
                                          "mixed volume on ") +
                                  p.name);
                }
                int pos = m.n - 1;
                while (pos >= 0 && idx[std::size_t(pos)] == m.rho - 1) {
                    idx[std::size_t(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++idx[std::size_t(pos)];
            }
        }
    });
}

inline SuiteResult suite_quadratic_certificates() {
    return detail::timed_suite("quadratic-certificates", [](detail::Checker& ck) {
        std::mt19937_64 eng(2468);

        for (int i = 0; i < 850; ++i) {
            int rho = 2 + i % 6;
            QuadraticModel qm =
                conezar::detail::random_quadratic_instance(rho, 2, eng);
            RatVec w = conezar::detail::random_big_class(qm, eng);
            QuadraticZariski z = zariski_q(qm, w);
            std::string tag = " (surface instance " + std::to_string(i) + ")";
            ck.expect(z.cross == Rat(0), "support pairing nonzero" + tag);
            ck.expect(z.p_square > 0, "positive part degenerate" + tag);
            ck.expect(qm.cone.contains(z.p), "positive part outside the cone" + tag);
            if (!z.gamma_zero)
                ck.expect(z.gamma_square < 0,
                          "negative part has nonnegative square" + tag);

            RatVec inside(std::size_t(rho), Rat(0));
            for (const auto& g : qm.cone.minimal_generators())
                for (int k = 0; k < rho; ++k) inside[std::size_t(k)] += g[std::size_t(k)];
            ClosedFormValue on_cone = polar_closed_form(qm, to_vec(inside));
            double fv = double(quad_pair(qm, inside, inside));
            ck.expect(std::abs(on_cone.value - fv) <= 1e-9 * std::max(1.0, fv),
                      "transform does not fix the form on the cone" + tag);

            if (i % 10 == 0) {
                ChowModel chow = to_chow(qm);
                RatVec d = inside, e = z.p;
                ck.expect(psi(qm, d) == d, "curve image changes coordinates" + tag);
                ck.expect(pair_classes(chow, e, psi(qm, d)) == quad_pair(qm, e, d),
                          "pairing disagrees with the form" + tag);
                if (i % 50 == 0) {
                    PolarValue pv = vol_curve(chow, to_vec(w));
                    ck.expect(std::abs(pv.value - double(z.p_square)) <=
                                  1e-6 * std::max(1.0, double(z.p_square)),
                              "generic optimizer disagrees with the exact value" +
                                  tag);
                }
            }
        }

        for (int i = 0; i < 150; ++i) {
            int rho = 2 + i % 5;
            QuadraticModel qm =
                conezar::detail::random_quadratic_instance(rho, 4, eng);
            RatVec w = conezar::detail::random_big_class(qm, eng);
            QuadraticZariski z = zariski_q(qm, w);
            std::string tag = " (fourfold instance " + std::to_string(i) + ")";
            ck.expect(z.cross == Rat(0), "support pairing nonzero" + tag);
            if (!z.gamma_zero)
                ck.expect(z.gamma_square < 0,
                          "negative part has nonnegative square" + tag);

            if (i % 15 == 0) {
                ChowModel chow = to_chow(qm);
                RatVec a(std::size_t(rho), Rat(0));
                for (const auto& g : qm.cone.minimal_generators())
                    for (int k = 0; k < rho; ++k) a[std::size_t(k)] += g[std::size_t(k)];
                Rat qa = quad_pair(qm, a, a);
                ck.expect(vol_nef(chow, a) == qa * qa,
                          "top power disagrees with the squared form" + tag);
                RatVec scaled_image = psi(qm, a);
                for (auto& e : scaled_image) e *= qa;
                ck.expect(curve_power(chow, a) == scaled_image,
                          "curve power disagrees with the scaled image" + tag);
                PolarValue pv = vol_curve(chow, to_vec(psi(qm, a)));
                double expect = std::pow(double(qa), 2.0 / 3.0);
                ck.expect(std::abs(pv.value - expect) <=
                              1e-6 * std::max(1.0, expect),
                          "curve volume misses the closed form" + tag);
            }
        }
    });
}

inline SuiteResult suite_probe_constant() {
    return detail::timed_suite("probe-constant", [](detail::Checker& ck) {
        ProbeResult hit = optimality_probe(3, 0.5);
        ck.expect(hit.found, "no witness found for the relaxed constant");
        if (hit.found) {
            ck.expect(hit.criterion > 0, "witness criterion not positive");
            ck.expect(!hit.diff_big, "witness difference is big");
        }
        ProbeResult none = optimality_probe(3, 0.0);
        ck.expect(!none.found, "witness found for the exact constant");
        ck.expect(none.tried > 600, "exact-constant search ended early");
    });
}

struct SuiteEntry {
    const char* name;
    SuiteResult (*run)();
};

inline const std::array<SuiteEntry, 10>& registry() {
    static const std::array<SuiteEntry, 10> entries = {{
        {"bundle-closed-form", &suite_bundle_closed_form},
        {"derivative-formula", &suite_derivative_formula},
        {"flip-zariski", &suite_flip_zariski},
        {"nonconvex-nef-tables", &suite_nonconvex_nef_tables},
        {"zariski-certificates", &suite_zariski_certificates},
        {"inequality-families", &suite_inequality_families},
        {"polar-involution", &suite_polar_involution},
        {"tensor-mixed-volume", &suite_tensor_mixed_volume},
        {"quadratic-certificates", &suite_quadratic_certificates},
        {"probe-constant", &suite_probe_constant},
    }};
    return entries;
}

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.name);
    return out;
}

inline SuiteResult run_suite(const std::string& name) {
    for (const auto& e : registry())
        if (name == e.name) return e.run();
    throw ConfigError("unknown verification suite '" + name + "'");
}

inline std::vector<SuiteResult> run_all_suites() {
    std::vector<SuiteResult> out;
    for (const auto& e : registry()) out.push_back(e.run());
    return out;
}

}  // namespace verify
}  // namespace conezar
