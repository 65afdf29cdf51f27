#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "conezar/chow.hpp"
#include "conezar/presets.hpp"

namespace conezar {

/// Tuning knobs for the polar optimizer.  `tol` is the relative residual
/// tolerance used by decomposition certificates, the remaining fields
/// control the descent loop itself.
struct PolarOptions {
    double tol = 1e-6;
    double conv_tol = 1e-10;
    int conv_window = 5;
    int max_iters = 10000;
    int multistart = 8;
    std::uint64_t seed = 2026;
    int polish_sweeps = 60;
};

/// A homogeneous concave function of weight s on a polyhedral cone, given by
/// oracles.  `grad` may be empty, in which case central differences are used.
struct ConcaveFn {
    double s = 2.0;
    PolyhedralCone domain;
    std::function<double(const Vec&)> eval;
    std::function<Vec(const Vec&)> grad;
};

namespace detail {

inline constexpr double kHuge = 1e300;

inline Vec dirichlet(std::mt19937_64& eng, int k) {
    std::exponential_distribution<double> ex(1.0);
    Vec x(k);
    double sum = 0;
    for (int i = 0; i < k; ++i) {
        x[i] = ex(eng) + 1e-12;
        sum += x[i];
    }
    return x / sum;
}

/// Euclidean projection onto the probability simplex.
inline void simplex_project(Vec& x) {
    const int m = int(x.size());
    std::vector<double> u(x.data(), x.data() + m);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0, theta = 0;
    int k = 0;
    for (int i = 0; i < m; ++i) {
        css += u[std::size_t(i)];
        double t = (css - 1.0) / double(i + 1);
        if (u[std::size_t(i)] - t > 0) {
            k = i + 1;
            theta = t;
        }
    }
    if (k == 0) {
        x.setConstant(1.0 / double(m));
        return;
    }
    for (int i = 0; i < m; ++i) x[i] = std::max(x[i] - theta, 0.0);
}

/// Golden-section minimum of a one-dimensional function on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, int iters = 120) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Cyclic pairwise line search on the simplex.  Moves along e_i - e_j keep
/// the coordinate sum fixed, so each sweep stays feasible by construction.
/// When a full sweep yields no significant improvement the point is
/// pairwise-stationary, which `stationary` reports when supplied.
inline double pairwise_polish(const std::function<double(const Vec&)>& obj,
                              Vec& x, int max_sweeps, double rel_tol,
                              bool* stationary = nullptr) {
    const int m = int(x.size());
    double best = obj(x);
    if (stationary) *stationary = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double before = best;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                double lo = -x[i], hi = x[j];
                if (hi - lo < 1e-15) continue;
                Vec base = x;
                auto line = [&](double t) {
                    Vec y = base;
                    y[i] += t;
                    y[j] -= t;
                    if (y[i] < 0) y[i] = 0;
                    if (y[j] < 0) y[j] = 0;
                    return obj(y);
                };
                double t = golden_min(line, lo, hi, 80);
                double v = line(t);
                if (v < best) {
                    best = v;
                    x[i] = std::max(x[i] + t, 0.0);
                    x[j] = std::max(x[j] - t, 0.0);
                }
            }
        }
        if (before - best <= rel_tol * std::max(1.0, std::abs(best))) {
            if (stationary) *stationary = true;
            break;
        }
    }
    return best;
}

inline Vec interior_sample(const Mat& gens, std::mt19937_64& eng,
                           double lo = 0.6, double hi = 1.6) {
    std::uniform_real_distribution<double> scale(lo, hi);
    Vec x = dirichlet(eng, int(gens.cols()));
    return scale(eng) * (gens * x);
}

inline Mat generator_columns(const PolyhedralCone& cone, bool normalize) {
    auto gens = cone.minimal_generators();
    if (gens.empty()) throw MathError("cone has no generators");
    Mat g(cone.dim(), int(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j) {
        Vec col = to_vec(gens[j]);
        if (normalize) col /= col.norm();
        g.col(Eigen::Index(j)) = col;
    }
    return g;
}

inline double ray_cosine(const Vec& a, const Vec& b) {
    double na = a.norm(), nb = b.norm();
    if (na == 0 || nb == 0) return 0;
    return a.dot(b) / (na * nb);
}

}  // namespace detail

inline Vec fn_grad(const ConcaveFn& f, const Vec& v) {
    if (f.grad) return f.grad(v);
    Vec g(v.size());
    for (int i = 0; i < int(v.size()); ++i) {
        double h = 1e-6 * (1.0 + std::abs(v[i]));
        Vec vp = v, vm = v;
        vp[i] += h;
        vm[i] -= h;
        g[i] = (f.eval(vp) - f.eval(vm)) / (2 * h);
    }
    return g;
}

/// Builds a ConcaveFn and spot-checks homogeneity, weighted concavity and
/// positivity on random interior points of the domain.
inline ConcaveFn make_concave_fn(double s, PolyhedralCone domain,
                                 std::function<double(const Vec&)> eval,
                                 std::function<Vec(const Vec&)> grad = {}) {
    if (!(s > 1.0)) throw MathError("concave weight must exceed one");
    ConcaveFn f{s, std::move(domain), std::move(eval), std::move(grad)};
    Mat g = detail::generator_columns(f.domain, false);
    std::mt19937_64 eng(0x5EEDu);
    std::vector<Vec> probes;
    for (int i = 0; i < 6; ++i) probes.push_back(detail::interior_sample(g, eng));
    for (const auto& v : probes) {
        double fv = f.eval(v);
        if (!(fv > 0)) throw MathError("function is not positive on the cone interior");
        for (double t : {0.6, 1.9}) {
            double lhs = f.eval(t * v);
            double rhs = std::pow(t, s) * fv;
            if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs)))
                throw MathError("function is not homogeneous of the declared weight");
        }
    }
    for (std::size_t i = 0; i + 1 < probes.size(); i += 2) {
        const Vec& v = probes[i];
        const Vec& x = probes[i + 1];
        double lhs = std::pow(f.eval(v), 1.0 / s) + std::pow(f.eval(x), 1.0 / s);
        double rhs = std::pow(f.eval(v + x), 1.0 / s);
        if (lhs > rhs + 1e-9 * std::max(1.0, rhs))
            throw MathError("function fails the weighted concavity check");
    }
    return f;
}

/// The volume function of a model as a concave function of weight n on the
/// nef cone.  Copies the dense tensor, so the model may go out of scope.
inline ConcaveFn volume_fn(const ChowModel& m) {
    SymTensorD t = m.tensor_d;
    ConcaveFn f;
    f.s = double(m.n);
    f.domain = m.nef_div;
    f.eval = [t](const Vec& v) { return t.eval(v); };
    f.grad = [t](const Vec& v) { return t.grad(v); };
    return f;
}

/// Outcome of a polar-transform evaluation.  `ratio` is the minimal slice
/// ratio before the exponent is applied, `spread` the relative disagreement
/// across converged restarts.
struct PolarValue {
    double value = 0;
    Vec minimizer;
    int restarts = 0;
    double ratio = std::numeric_limits<double>::infinity();
    double spread = 0;
    bool boundary = false;
};

/// Evaluates Hf(w) = inf over the domain cone of (<w,v> / f(v)^{1/s})^{s/(s-1)}
/// together with a minimizer normalized so that f(v*) equals the value.
/// The bilinear form is v^T . pairing . w.  Arguments outside the dual cone
/// give zero, as do boundary points.
inline PolarValue polar_eval(const ConcaveFn& f, const Mat& pairing,
                             const Vec& w, const PolarOptions& opts = {}) {
    if (w.size() != pairing.cols() || f.domain.dim() != int(pairing.rows()))
        throw MathError("pairing shape does not match the polar arguments");
    Mat g = detail::generator_columns(f.domain, true);
    const int m = int(g.cols());
    Vec u = g.transpose() * (pairing * w);
    double wscale = std::max(w.norm(), 1e-300);

    PolarValue out;
    if (u.minCoeff() <= 1e-13 * wscale) {
        out.boundary = true;
        return out;
    }

    const double s = f.s;
    auto obj = [&](const Vec& x) {
        double num = u.dot(x);
        double fv = f.eval(g * x);
        if (!(fv > 1e-280) || !std::isfinite(fv)) return detail::kHuge;
        return num / std::pow(fv, 1.0 / s);
    };

    double best = detail::kHuge;
    Vec best_x;
    std::vector<double> converged_vals;
    std::ostringstream trace;
    trace.precision(12);

    if (m == 1) {
        Vec x = Vec::Ones(1);
        best = obj(x);
        best_x = x;
        converged_vals.push_back(best);
        out.restarts = 1;
    } else if (m == 2) {
        Vec x = Vec::Constant(2, 0.5);
        best = detail::pairwise_polish(obj, x, opts.polish_sweeps, 1e-14);
        best_x = x;
        converged_vals.push_back(best);
        out.restarts = 1;
    } else {
        std::mt19937_64 eng(opts.seed);
        std::vector<Vec> starts;
        starts.push_back(Vec::Constant(m, 1.0 / m));
        for (int i = 0; i < m && int(starts.size()) < opts.multistart; ++i) {
            Vec x = Vec::Constant(m, 0.1 / m);
            x[i] += 0.9;
            starts.push_back(x / x.sum());
        }
        while (int(starts.size()) < std::max(opts.multistart, 1))
            starts.push_back(detail::dirichlet(eng, m));

        for (std::size_t si = 0; si < starts.size(); ++si) {
            Vec x = starts[si];
            double val = obj(x);
            if (val >= detail::kHuge) {
                trace << " start " << si << ": degenerate";
                continue;
            }
            std::vector<double> window;
            bool converged = false;
            for (int it = 0; it < opts.max_iters; ++it) {
                Vec v = g * x;
                double fv = f.eval(v);
                double phi = std::pow(fv, 1.0 / s);
                Vec gf = fn_grad(f, v);
                Vec gphi = (std::pow(fv, 1.0 / s - 1.0) / s) * (g.transpose() * gf);
                Vec grad = u / phi - (u.dot(x) / (phi * phi)) * gphi;

                double step = 1.0 / (1.0 + grad.norm());
                bool moved = false;
                while (step > 1e-18) {
                    Vec y = x - step * grad;
                    detail::simplex_project(y);
                    double vy = obj(y);
                    double decrease = grad.dot(x - y);
                    if (vy <= val - 1e-4 * decrease && vy < val) {
                        x = y;
                        val = vy;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                window.push_back(val);
                if (int(window.size()) > opts.conv_window + 1)
                    window.erase(window.begin());
                if (int(window.size()) == opts.conv_window + 1 &&
                    window.front() - window.back() <=
                        opts.conv_tol * std::max(1.0, std::abs(val))) {
                    converged = true;
                    break;
                }
                if (!moved) {
                    converged = true;
                    break;
                }
            }
            bool stationary = false;
            val = detail::pairwise_polish(obj, x, opts.polish_sweeps, 1e-13,
                                          &stationary);
            out.restarts += 1;
            if (converged || stationary) converged_vals.push_back(val);
            converged = converged || stationary;
            trace << " start " << si << ": " << val << (converged ? "" : " (max iters)");
            if (val < best) {
                best = val;
                best_x = x;
            }
        }
        if (converged_vals.empty())
            throw MathError("polar optimizer did not converge; best ratio " +
                            std::to_string(best) + "; trace:" + trace.str());
    }

    if (!(best < detail::kHuge))
        throw MathError("polar objective is degenerate on the generator slice");
    double lo = *std::min_element(converged_vals.begin(), converged_vals.end());
    double hi = *std::max_element(converged_vals.begin(), converged_vals.end());
    out.spread = (hi - lo) / std::max(lo, 1e-300);
    out.ratio = best;
    out.value = std::pow(best, s / (s - 1.0));
    Vec vhat = g * best_x;
    double fhat = f.eval(vhat);
    if (out.value > 0 && fhat > 0)
        out.minimizer = std::pow(out.value / fhat, 1.0 / s) * vhat;
    else
        out.minimizer = vhat;
    return out;
}

/// Convenience wrapper evaluating the curve volume of a model class.
inline PolarValue vol_curve(const ChowModel& m, const Vec& alpha,
                            const PolarOptions& opts = {}) {
    return polar_eval(volume_fn(m), m.pairing_d, alpha, opts);
}

/// Certificate residuals for a decomposition of alpha.  eff_margin is the
/// signed facet margin of gamma against the effective cone, rescaled to the
/// size of alpha so it measures defects relative to the class being
/// decomposed rather than to a possibly tiny negative part.
struct ZariskiResiduals {
    double orthogonality = 0;
    double eff_margin = 0;
    double vol_gap = 0;
    double mov_margin = 0;
};

/// Zariski decomposition alpha = B^{n-1} + gamma.  B carries the convention
/// vol(B) = volhat, so the positive part is curve_power(B) directly.
struct ZariskiResult {
    Vec alpha;
    Vec B;
    Vec positive_part;
    Vec gamma;
    double volhat = 0;
    ZariskiResiduals residuals;
    bool gamma_zero = true;
    bool gamma_movable = true;
    int restarts = 0;
    std::uint64_t seed = 0;
    double spread = 0;
};

inline ZariskiResult zariski(const ChowModel& m, const RatVec& alpha,
                             const PolarOptions& opts = {}) {
    if (int(alpha.size()) != m.rho)
        throw MathError("curve class has wrong dimension");
    if (!m.eff_cur.interior_contains(alpha))
        throw MathError("decomposition defined only for big classes");
    Vec a = to_vec(alpha);
    PolarValue pv = polar_eval(volume_fn(m), m.pairing_d, a, opts);
    if (!(pv.value > 0))
        throw MathError("decomposition defined only for big classes");

    ZariskiResult z;
    z.alpha = a;
    z.B = pv.minimizer;
    z.volhat = pv.value;
    z.positive_part = curve_power(m, z.B);
    z.gamma = a - z.positive_part;
    z.restarts = pv.restarts;
    z.seed = opts.seed;
    z.spread = pv.spread;

    z.residuals.orthogonality = std::abs(pair_classes(m, z.B, z.gamma));
    z.residuals.vol_gap = std::abs(z.volhat - vol_nef(m, z.B));

    double gnorm = z.gamma.norm();
    z.gamma_zero = gnorm <= 1e-7 * std::max(1.0, a.norm());
    if (z.gamma_zero) {
        z.residuals.eff_margin = 0;
        z.residuals.mov_margin = 0;
        z.gamma_movable = true;
    } else {
        double gmax = z.gamma.cwiseAbs().maxCoeff();
        double amax = a.cwiseAbs().maxCoeff();
        double rel = m.eff_cur.contains(z.gamma, opts.tol).margin;
        z.residuals.eff_margin = rel * gmax / std::max(1.0, amax);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& gd : m.eff_div.minimal_generators()) {
            Vec d = to_vec(gd);
            worst = std::min(worst, pair_classes(m, d, z.gamma) / (d.norm() * gnorm));
        }
        z.residuals.mov_margin = worst;
        z.gamma_movable = worst >= -1e-9;
    }
    return z;
}

inline ZariskiResult zariski(const ChowModel& m, const Vec& alpha,
                             const PolarOptions& opts = {}) {
    RatVec a(std::size_t(alpha.size()));
    for (int i = 0; i < int(alpha.size()); ++i)
        a[std::size_t(i)] = rat_from_double(alpha[i]);
    return zariski(m, a, opts);
}

/// d/dt vol^(alpha + t beta) at t = 0, which equals n/(n-1) B.beta.
inline double derivative(const ChowModel& m, const Vec& alpha, const Vec& beta,
                         const PolarOptions& opts = {}) {
    ZariskiResult z = zariski(m, alpha, opts);
    return double(m.n) / double(m.n - 1) * pair_classes(m, z.B, beta);
}

struct DerivativeCheck {
    double closed = 0;
    std::vector<std::pair<double, double>> finite_diffs;
    bool pass = true;
};

/// Central finite differences over a step sweep, compared against the
/// closed-form derivative.
inline DerivativeCheck derivative_check(const ChowModel& m, const Vec& alpha,
                                        const Vec& beta,
                                        const PolarOptions& opts = {}) {
    DerivativeCheck r;
    r.closed = derivative(m, alpha, beta, opts);
    ConcaveFn f = volume_fn(m);
    for (double h : {1e-3, 1e-4, 1e-5}) {
        double vp = polar_eval(f, m.pairing_d, Vec(alpha + h * beta), opts).value;
        double vm = polar_eval(f, m.pairing_d, Vec(alpha - h * beta), opts).value;
        double fd = (vp - vm) / (2 * h);
        r.finite_diffs.emplace_back(h, fd);
        double tol = std::max(1e-4, 10 * h) * std::max(1.0, std::abs(r.closed));
        if (std::abs(fd - r.closed) > tol) r.pass = false;
    }
    return r;
}

/// Morse-type bigness test for alpha - beta.
struct MorseReport {
    bool alpha_big = false;
    bool beta_movable = false;
    double beta_margin = 0;
    double criterion = 0;
    bool criterion_positive = false;
    bool big_certificate = false;
    double lower_bound = 0;
    double vol_diff = 0;
    bool diff_big = false;
};

inline MorseReport morse_check(const ChowModel& m, const Vec& alpha,
                               const Vec& beta, const PolarOptions& opts = {}) {
    MorseReport r;
    double bnorm = beta.norm();
    if (bnorm <= 1e-300) {
        r.beta_movable = true;
        r.beta_margin = 0;
    } else {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& gd : m.eff_div.minimal_generators()) {
            Vec d = to_vec(gd);
            worst = std::min(worst, pair_classes(m, d, beta) / (d.norm() * bnorm));
        }
        r.beta_margin = worst;
        r.beta_movable = worst >= -1e-9;
    }

    ZariskiResult z;
    try {
        z = zariski(m, alpha, opts);
    } catch (const MathError&) {
        return r;
    }
    r.alpha_big = true;

    const double n = double(m.n);
    double bdotbeta = pair_classes(m, z.B, beta);
    r.criterion = z.volhat - n * bdotbeta;
    r.criterion_positive = r.criterion > 0;
    r.lower_bound = z.volhat - n * n / (n - 1.0) * bdotbeta;

    RatVec diff(static_cast<std::size_t>(m.rho));
    for (int i = 0; i < m.rho; ++i)
        diff[std::size_t(i)] = rat_from_double(alpha[i] - beta[i]);
    bool interior = m.eff_cur.interior_contains(diff);
    if (r.criterion_positive) r.big_certificate = interior;
    r.diff_big = interior;
    r.vol_diff =
        polar_eval(volume_fn(m), m.pairing_d, Vec(alpha - beta), opts).value;
    return r;
}

/// Searches the diagonal abelian model of dimension n for a curve pair
/// showing that the constant in the bigness criterion cannot be improved
/// from n to n - epsilon.
struct ProbeResult {
    bool found = false;
    Vec lambda;
    Vec alpha;
    Vec gamma;
    double criterion = 0;
    bool diff_big = true;
    int tried = 0;
};

inline ProbeResult optimality_probe(int n, double epsilon,
                                    const PolarOptions& opts = {}) {
    if (n < 2) throw ConfigError("probe dimension must be at least 2");
    if (epsilon < 0 || epsilon >= double(n))
        throw ConfigError("probe offset must lie in [0, n)");
    ChowModel m = detail::diagonal_abelian(n);

    std::vector<Vec> candidates;
    for (int k = 1; k <= 240; ++k) {
        Vec l = Vec::Ones(n);
        l[n - 1] = 0.005 * k;
        candidates.push_back(l);
    }
    std::mt19937_64 eng(opts.seed);
    std::uniform_real_distribution<double> coord(0.05, 1.5);
    for (int i = 0; i < 400; ++i) {
        Vec l(n);
        for (int j = 0; j < n; ++j) l[j] = coord(eng);
        candidates.push_back(l);
    }

    ProbeResult r;
    const double bound = double(n) / (double(n) - epsilon);
    for (const Vec& l : candidates) {
        ++r.tried;
        double total = 1;
        for (int j = 0; j < n; ++j) total *= l[j];
        double sum = 0, maxprod = 0;
        for (int j = 0; j < n; ++j) {
            double p = total / l[j];
            sum += p;
            maxprod = std::max(maxprod, p);
        }
        if (!(sum < bound - 1e-9) || !(maxprod >= 1.0)) continue;

        Vec alpha = Vec::Ones(n);
        Vec gamma = curve_power(m, l);
        ZariskiResult z = zariski(m, alpha, opts);
        double crit = z.volhat - (double(n) - epsilon) * pair_classes(m, z.B, gamma);
        if (!(crit > 0)) continue;
        RatVec diff(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            diff[std::size_t(i)] = rat_from_double(alpha[i] - gamma[i]);
        if (m.eff_cur.interior_contains(diff)) continue;

        r.found = true;
        r.lambda = l;
        r.alpha = alpha;
        r.gamma = gamma;
        r.criterion = crit;
        r.diff_big = false;
        return r;
    }
    return r;
}

struct InequalityReport {
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
    bool memberships_ok = true;
};

/// n (y.v) (v^{n-1}.x) >= vol(v) (y.x) for nef v, x and movable y.  The
/// movability hypothesis matters: interior effective classes outside the
/// movable cone can violate the bound.
inline InequalityReport reverse_kt_check(const ChowModel& m, const Vec& v,
                                         const Vec& x, const Vec& y,
                                         double tol = 1e-9) {
    InequalityReport r;
    r.memberships_ok = m.nef_div.contains(v, tol).inside &&
                       m.nef_div.contains(x, tol).inside &&
                       m.mov_cur.contains(y, tol).inside;
    Vec dv = curve_power(m, v);
    r.lhs = double(m.n) * pair_classes(m, v, y) * pair_classes(m, x, dv);
    r.rhs = vol_nef(m, v) * pair_classes(m, x, y);
    r.slack = r.lhs - r.rhs;
    return r;
}

/// (b^k a^{n-k})(a^k g^{n-k}) >= (k!(n-k)!/n!) a^n (b^k g^{n-k}) for nef
/// classes a, b, g.
inline InequalityReport appendix_kt_check(const ChowModel& m, const Vec& a,
                                          const Vec& b, const Vec& g, int k,
                                          double tol = 1e-9) {
    if (k < 1 || k > m.n - 1) throw MathError("mixed exponent out of range");
    InequalityReport r;
    r.memberships_ok = m.nef_div.contains(a, tol).inside &&
                       m.nef_div.contains(b, tol).inside &&
                       m.nef_div.contains(g, tol).inside;
    auto mixed = [&](const Vec& p, int cp, const Vec& q, int cq) {
        std::vector<Vec> args;
        for (int i = 0; i < cp; ++i) args.push_back(p);
        for (int i = 0; i < cq; ++i) args.push_back(q);
        return m.tensor_d.eval_mixed(args);
    };
    double factor = 1;
    for (int i = 1; i <= k; ++i) factor *= double(i) / double(m.n - k + i);
    r.lhs = mixed(b, k, a, m.n - k) * mixed(a, k, g, m.n - k);
    r.rhs = factor * vol_nef(m, a) * mixed(b, k, g, m.n - k);
    r.slack = r.lhs - r.rhs;
    return r;
}

struct InvolutionReport {
    double max_rel_err = 0;
    int samples = 0;
};

/// Applies the polar transform twice and compares with the original
/// function on random interior points.  The inner transform is itself a
/// full optimization, so this is restricted to low ranks.
inline InvolutionReport involution_check(const ConcaveFn& f,
                                         const RatMat& pairing, int samples,
                                         const PolarOptions& opts = {}) {
    if (f.domain.dim() > 3)
        throw MathError("double transform supported up to rank 3");
    Mat pd = to_mat(pairing);
    PolarOptions inner = opts;
    inner.multistart = std::min(opts.multistart, 4);

    ConcaveFn h;
    h.s = f.s / (f.s - 1.0);
    h.domain = f.domain.dual(pairing.transposed());
    h.eval = [f, pd, inner](const Vec& w) {
        return polar_eval(f, pd, w, inner).value;
    };

    Mat pdt = pd.transpose();
    Mat g = detail::generator_columns(f.domain, false);
    std::mt19937_64 eng(opts.seed);
    InvolutionReport r;
    for (int i = 0; i < samples; ++i) {
        Vec v = detail::interior_sample(g, eng);
        double fv = f.eval(v);
        double back = polar_eval(h, pdt, v, inner).value;
        double rel = std::abs(back - fv) / std::max(std::abs(fv), 1e-300);
        r.max_rel_err = std::max(r.max_rel_err, rel);
        ++r.samples;
    }
    return r;
}

inline InvolutionReport involution_check(const ChowModel& m, int samples,
                                         const PolarOptions& opts = {}) {
    return involution_check(volume_fn(m), m.pairing, samples, opts);
}

namespace detail {

inline Vec random_big_curve(const ChowModel& m, std::mt19937_64& eng) {
    Mat g = generator_columns(m.eff_cur, false);
    std::uniform_real_distribution<double> coeff(0.2, 2.0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Vec x(g.cols());
        for (int i = 0; i < int(g.cols()); ++i) x[i] = coeff(eng);
        Vec a = g * x;
        RatVec ar(std::size_t(a.size()));
        for (int i = 0; i < int(a.size()); ++i) ar[std::size_t(i)] = rat_from_double(a[i]);
        if (m.eff_cur.interior_contains(ar)) return a;
    }
    throw MathError("could not sample a big curve class");
}

}  // namespace detail

/// Aggregate report for the concavity properties of the curve volume.
struct ConcavityReport {
    int trials = 0;
    double min_superadd_slack = std::numeric_limits<double>::infinity();
    int equality_cases = 0;
    bool equality_implies_proportional = true;
    double worst_equality_cosine = 1.0;
    double max_proportional_gap = 0;
    bool continuity_ok = true;
    double continuity_rate = 0;
    bool linearity_ok = true;
    double worst_linearity_cosine = 1.0;
};

inline ConcavityReport concavity_suite(const ChowModel& m, int trials,
                                       const PolarOptions& opts = {}) {
    ConcavityReport r;
    std::mt19937_64 eng(opts.seed);
    const double e = double(m.n - 1) / double(m.n);

    for (int t = 0; t < trials; ++t) {
        Vec a = detail::random_big_curve(m, eng);
        Vec b = detail::random_big_curve(m, eng);
        ZariskiResult za = zariski(m, a, opts);
        ZariskiResult zb = zariski(m, b, opts);
        ZariskiResult zab = zariski(m, Vec(a + b), opts);
        double sa = std::pow(zab.volhat, e) - std::pow(za.volhat, e) -
                    std::pow(zb.volhat, e);
        double scale = std::max(1.0, std::pow(zab.volhat, e));
        r.min_superadd_slack = std::min(r.min_superadd_slack, sa / scale);
        if (std::abs(sa) <= 1e-6 * scale) {
            ++r.equality_cases;
            double c = detail::ray_cosine(za.positive_part, zb.positive_part);
            r.worst_equality_cosine = std::min(r.worst_equality_cosine, c);
        }
        if (std::abs(sa) <= 1e-9 * scale &&
            detail::ray_cosine(za.positive_part, zb.positive_part) < 1.0 - 1e-4)
            r.equality_implies_proportional = false;
        ++r.trials;
    }

    std::uniform_real_distribution<double> tmul(0.4, 2.2);
    for (int t = 0; t < 3; ++t) {
        Vec a = detail::random_big_curve(m, eng);
        ZariskiResult za = zariski(m, a, opts);
        Vec b = tmul(eng) * za.positive_part;
        ZariskiResult zb = zariski(m, b, opts);
        ZariskiResult zab = zariski(m, Vec(a + b), opts);
        double sa = std::pow(zab.volhat, e) - std::pow(za.volhat, e) -
                    std::pow(zb.volhat, e);
        double scale = std::max(1.0, std::pow(zab.volhat, e));
        r.max_proportional_gap =
            std::max(r.max_proportional_gap, std::abs(sa) / scale);
    }

    {
        Vec a = detail::random_big_curve(m, eng);
        ZariskiResult za = zariski(m, a, opts);
        Vec eta;
        bool ok = false;
        for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
            eta = Vec(a.size());
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (int i = 0; i < int(eta.size()); ++i) eta[i] = gauss(eng);
            eta *= a.norm() / eta.norm();
            RatVec probe(std::size_t(a.size()));
            for (int i = 0; i < int(a.size()); ++i)
                probe[std::size_t(i)] = rat_from_double(a[i] + 1e-2 * eta[i]);
            RatVec probe2(std::size_t(a.size()));
            for (int i = 0; i < int(a.size()); ++i)
                probe2[std::size_t(i)] = rat_from_double(a[i] - 1e-2 * eta[i]);
            ok = m.eff_cur.interior_contains(probe) &&
                 m.eff_cur.interior_contains(probe2);
        }
        if (ok) {
            double base_rate = 0;
            for (double delta : {1e-2, 1e-3, 1e-4}) {
                ZariskiResult zd = zariski(m, Vec(a + delta * eta), opts);
                double d = (zd.B - za.B).norm();
                double rate = d / delta;
                if (delta == 1e-2) {
                    base_rate = rate;
                    r.continuity_rate = rate;
                } else if (d > std::max(3.0 * base_rate, 1.0) * delta +
                                   1e-7 * za.B.norm()) {
                    r.continuity_ok = false;
                }
            }
        }
    }

    std::uniform_real_distribution<double> cdist(0.3, 2.0);
    for (int t = 0; t < 3; ++t) {
        Vec a = detail::random_big_curve(m, eng);
        ZariskiResult za = zariski(m, a, opts);
        Vec mix = cdist(eng) * a + cdist(eng) * za.positive_part;
        ZariskiResult zm = zariski(m, mix, opts);
        double c = detail::ray_cosine(zm.B, za.B);
        r.worst_linearity_cosine = std::min(r.worst_linearity_cosine, c);
        if (c < 1.0 - 1e-6) r.linearity_ok = false;
    }
    return r;
}

/// Smallest normalized ray distance from `target` to the set of curve
/// classes of the form curve_power(nef), found by sampling plus local
/// refinement.  A strictly positive return is evidence of non-membership.
inline double ci_distance(const ChowModel& m, const Vec& target, int samples,
                          const PolarOptions& opts = {}) {
    Mat g = detail::generator_columns(m.nef_div, true);
    const int k = int(g.cols());
    Vec tn = target / target.norm();
    auto obj = [&](const Vec& x) {
        Vec xc = x.cwiseMax(0.0);
        Vec c = curve_power(m, Vec(g * xc));
        double n = c.norm();
        if (!(n > 1e-290)) return 2.0;
        return (c / n - tn).norm();
    };
    std::mt19937_64 eng(opts.seed);
    std::vector<std::pair<double, Vec>> pool;
    for (int i = 0; i < samples; ++i) {
        Vec x = detail::dirichlet(eng, k);
        pool.emplace_back(obj(x), x);
    }
    std::sort(pool.begin(), pool.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double best = pool.empty() ? 2.0 : pool.front().first;
    int refine = std::min<int>(8, int(pool.size()));
    for (int i = 0; i < refine; ++i) {
        Vec x = pool[std::size_t(i)].second;
        double v = detail::pairwise_polish(obj, x, 40, 1e-12);
        best = std::min(best, v);
    }
    return best;
}

/// Transports a decomposition along a morphism.  The positive part is pulled
/// back, the supplied negative part on the source must push forward to the
/// negative part downstairs; the result keeps the volume and pushes forward
/// to the original class.
struct LiftResult {
    Vec alpha_source;
    Vec B_source;
    Vec gamma_source;
    double volhat_source = 0;
    double volhat_target = 0;
    double push_alpha_err = 0;
    double push_gamma_err = 0;
    double minimizer_cosine = 1.0;
    bool gamma_effective = true;
    bool B_nef = true;
};

inline LiftResult lift_zariski(const ChowModel& source, const ChowModel& target,
                               const ModelMap& map, const Vec& alpha_target,
                               const Vec& gamma_source,
                               const PolarOptions& opts = {}) {
    validate_map(source, target, map);
    if (source.n != target.n)
        throw MathError("models must share the ambient dimension");
    ZariskiResult zt = zariski(target, alpha_target, opts);

    Mat push = to_mat(map.pushforward);
    Mat pull = to_mat(map.pullback);
    LiftResult r;
    r.volhat_target = zt.volhat;
    r.gamma_source = gamma_source;

    r.push_gamma_err = (push * gamma_source - zt.gamma).norm() /
                       std::max(1.0, zt.gamma.norm());
    if (r.push_gamma_err > opts.tol)
        throw MathError("negative part does not push forward to the target decomposition");
    r.gamma_effective =
        gamma_source.norm() <= 1e-300 ||
        source.eff_cur.contains(gamma_source, 1e-7).inside;

    r.B_source = pull * zt.B;
    r.B_nef = source.nef_div.contains(r.B_source, 1e-7).inside;
    if (!r.B_nef)
        throw MathError("pulled-back minimizer is not nef on the source");

    r.alpha_source = curve_power(source, r.B_source) + gamma_source;
    ZariskiResult zs = zariski(source, r.alpha_source, opts);
    r.volhat_source = zs.volhat;
    if (std::abs(zs.volhat - zt.volhat) > opts.tol * std::max(1.0, zt.volhat))
        throw MathError("lifted class changes the volume");
    r.push_alpha_err = (push * r.alpha_source - alpha_target).norm();
    if (r.push_alpha_err > opts.tol * (1.0 + alpha_target.norm()))
        throw MathError("lifted class does not push forward to the input");
    r.minimizer_cosine = detail::ray_cosine(zs.B, r.B_source);
    return r;
}

}  // namespace conezar
