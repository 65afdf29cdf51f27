#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "conezar/chow.hpp"

namespace conezar {

/// Intersection theory packaged as a quadratic form of signature (1, rho-1)
/// together with a cone on which the form is nonnegative.  `n` is 2 for
/// surfaces and the even complex dimension in the hyperkahler mode, where
/// the form determines top intersections through its polarization.
struct QuadraticModel {
    int rho = 0;
    int n = 2;
    RatMat q;
    PolyhedralCone cone;
    PolyhedralCone dual_cone;
    Mat q_d;
};

inline Rat quad_pair(const QuadraticModel& m, const RatVec& a, const RatVec& b) {
    return dot(a, mat_vec(m.q, b));
}

inline QuadraticModel make_quadratic(int n, RatMat q, PolyhedralCone cone) {
    if (n < 2 || n % 2 != 0)
        throw MathError("quadratic models need an even dimension of at least 2");
    const int rho = q.rows();
    if (q.cols() != rho || rho < 1)
        throw MathError("quadratic form must be square");
    for (int i = 0; i < rho; ++i)
        for (int j = i + 1; j < rho; ++j)
            if (q(i, j) != q(j, i))
                throw MathError("quadratic form must be symmetric");
    if (cone.dim() != rho)
        throw MathError("cone dimension does not match the form");
    if (!cone.full_dim() || !cone.pointed())
        throw MathError("cone must be pointed and full-dimensional");

    Mat qd = to_mat(q);
    Eigen::SelfAdjointEigenSolver<Mat> es(qd);
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    int pos = 0, neg = 0;
    for (int i = 0; i < rho; ++i) {
        double l = es.eigenvalues()[i];
        if (l > 1e-9 * scale)
            ++pos;
        else if (l < -1e-9 * scale)
            ++neg;
        else
            throw MathError("quadratic form is degenerate");
    }
    if (pos != 1 || neg != rho - 1)
        throw MathError("quadratic form must have signature (1, rho-1)");

    QuadraticModel m;
    m.rho = rho;
    m.n = n;
    m.q = std::move(q);
    m.q_d = std::move(qd);
    m.cone = std::move(cone);

    auto gens = m.cone.minimal_generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j)
            if (quad_pair(m, gens[i], gens[j]) < 0)
                throw MathError("form takes a negative product on the cone");
    m.dual_cone = m.cone.dual(m.q);
    return m;
}

/// Decomposition w = p + gamma with p in the cone, q(p, gamma) = 0 and the
/// negative part supported on a face with negative definite Gram matrix.
/// All arithmetic is exact, so the orthogonality certificate is literal.
struct QuadraticZariski {
    RatVec p;
    RatVec gamma;
    std::vector<int> active;
    Rat p_square;
    Rat gamma_square;
    Rat cross;
    bool gamma_zero = true;
};

namespace detail {

inline bool negative_definite(const RatMat& g) {
    const int k = g.rows();
    for (int s = 1; s <= k; ++s) {
        RatMat lead(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) lead(i, j) = g(i, j);
        Rat d = det(lead);
        if (s % 2 == 1 && d >= 0) return false;
        if (s % 2 == 0 && d <= 0) return false;
    }
    return true;
}

inline bool next_combination(std::vector<int>& c, int m) {
    const int k = int(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[std::size_t(i)] < m - (k - i)) {
            ++c[std::size_t(i)];
            for (int j = i + 1; j < k; ++j)
                c[std::size_t(j)] = c[std::size_t(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline QuadraticZariski zariski_q(const QuadraticModel& m, const RatVec& w) {
    if (int(w.size()) != m.rho)
        throw MathError("class has wrong dimension");
    if (!m.dual_cone.interior_contains(w))
        throw MathError("decomposition defined only for big classes");
    auto gens = m.dual_cone.minimal_generators();
    const int ng = int(gens.size());
    if (ng > 16)
        throw MathError("dual cone has too many extreme rays for face enumeration");

    for (int k = 0; k <= std::min(m.rho - 1, ng); ++k) {
        std::vector<int> sel(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) sel[std::size_t(i)] = i;
        bool more = k <= ng;
        while (more) {
            RatMat gram(k, k);
            RatVec rhs(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j)
                    gram(i, j) = quad_pair(m, gens[std::size_t(sel[std::size_t(i)])],
                                           gens[std::size_t(sel[std::size_t(j)])]);
                rhs[std::size_t(i)] =
                    quad_pair(m, gens[std::size_t(sel[std::size_t(i)])], w);
            }
            bool usable = k == 0 || detail::negative_definite(gram);
            if (usable) {
                std::optional<RatVec> a =
                    k == 0 ? std::optional<RatVec>(RatVec{}) : solve(gram, rhs);
                if (a) {
                    bool nonneg = true;
                    for (const Rat& c : *a)
                        if (c < 0) nonneg = false;
                    if (nonneg) {
                        RatVec p = w;
                        for (int i = 0; i < k; ++i) {
                            const RatVec& c = gens[std::size_t(sel[std::size_t(i)])];
                            for (std::size_t d = 0; d < p.size(); ++d)
                                p[d] -= (*a)[std::size_t(i)] * c[d];
                        }
                        Rat psq = quad_pair(m, p, p);
                        if (psq > 0 && m.cone.contains(p)) {
                            QuadraticZariski z;
                            z.p = p;
                            z.gamma = RatVec(p.size());
                            for (std::size_t d = 0; d < p.size(); ++d)
                                z.gamma[d] = w[d] - p[d];
                            z.active.assign(sel.begin(), sel.end());
                            z.p_square = psq;
                            z.gamma_square = quad_pair(m, z.gamma, z.gamma);
                            z.cross = quad_pair(m, p, z.gamma);
                            z.gamma_zero = is_zero(z.gamma);
                            return z;
                        }
                    }
                }
            }
            more = k > 0 && detail::next_combination(sel, ng);
        }
    }
    throw MathError("no cone face supports a decomposition");
}

/// Closed-form polar transform.  On the cone the value is a power of the
/// form itself; on the rest of the big region it is the same power of the
/// positive part.  The exponent n/(2(n-1)) matches the curve-volume
/// convention of the generic engine.
struct ClosedFormValue {
    double value = 0;
    Vec minimizer;
    bool boundary = false;
};

inline ClosedFormValue polar_closed_form(const QuadraticModel& m, const Vec& w) {
    RatVec wr = to_rat_vec(w);
    const double expo = double(m.n) / (2.0 * double(m.n - 1));
    ClosedFormValue out;

    Containment inside = m.dual_cone.contains(w, 1e-12);
    if (!inside.inside || std::abs(inside.margin) <= 1e-12) {
        out.boundary = std::abs(inside.margin) <= 1e-12;
        return out;
    }

    RatVec p;
    if (m.cone.contains(wr)) {
        p = wr;
    } else {
        QuadraticZariski z = zariski_q(m, wr);
        p = z.p;
    }
    Rat psq = quad_pair(m, p, p);
    if (psq <= 0) return out;
    double psd = double(psq);
    out.value = std::pow(psd, expo);
    Vec pd = to_vec(p);
    double fp = std::pow(psd, double(m.n) / 2.0);
    out.minimizer = pd * std::pow(out.value / fp, 1.0 / double(m.n));
    return out;
}

/// The q-image of a divisor class in curve coordinates.  The curve basis is
/// declared as the image of the divisor basis, so coordinates carry over
/// and the pairing matrix is the form itself.
inline RatVec psi(const QuadraticModel&, const RatVec& divisor) {
    return divisor;
}

namespace detail {

inline Rat matching_sum(const QuadraticModel& m, const std::vector<int>& idx) {
    if (idx.empty()) return Rat(1);
    Rat total(0);
    for (std::size_t j = 1; j < idx.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t t = 1; t < idx.size(); ++t)
            if (t != j) rest.push_back(idx[t]);
        total += m.q(idx[0], idx[std::size_t(j)]) * matching_sum(m, rest);
    }
    return total;
}

inline void sorted_tuples(int degree, int rho, std::vector<int>& cur,
                          const std::function<void(const std::vector<int>&)>& emit) {
    if (int(cur.size()) == degree) {
        emit(cur);
        return;
    }
    int lo = cur.empty() ? 0 : cur.back();
    for (int i = lo; i < rho; ++i) {
        cur.push_back(i);
        sorted_tuples(degree, rho, cur, emit);
        cur.pop_back();
    }
}

}  // namespace detail

/// Expands the quadratic model into a full intersection model.  The top
/// intersection tensor is the polarization of q^{n/2}, normalized so that
/// vol(A) = q(A,A)^{n/2} on nef classes.
inline ChowModel to_chow(const QuadraticModel& qm) {
    ChowModel m;
    m.n = qm.n;
    m.rho = qm.rho;
    for (int i = 0; i < qm.rho; ++i) {
        m.divisor_labels.push_back("D" + std::to_string(i + 1));
        m.curve_labels.push_back("C" + std::to_string(i + 1));
    }
    m.pairing = qm.q;

    Rat dfact(1);
    for (int k = qm.n - 1; k > 1; k -= 2) dfact *= k;
    SymTensor t(qm.n, qm.rho);
    std::vector<int> cur;
    detail::sorted_tuples(qm.n, qm.rho, cur, [&](const std::vector<int>& idx) {
        Rat v = detail::matching_sum(qm, idx) / dfact;
        if (v != 0) t.set(idx, v);
    });
    m.tensor = std::move(t);

    m.nef_div = qm.cone;
    m.eff_div = qm.dual_cone;
    m.eff_cur = qm.dual_cone;
    m.mov_cur = qm.cone;
    return finish_model(std::move(m));
}

/// Reverse Cauchy-Schwarz on the positive cone of a signature (1, rho-1)
/// form: q(v,x) >= sqrt(q(v,v) q(x,x)), with equality only on proportional
/// pairs.
struct HodgeReport {
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
    bool proportional = false;
};

inline HodgeReport hodge_check(const QuadraticModel& m, const Vec& v,
                               const Vec& x) {
    HodgeReport r;
    r.lhs = v.dot(m.q_d * x);
    double vv = v.dot(m.q_d * v), xx = x.dot(m.q_d * x);
    r.rhs = std::sqrt(std::max(vv, 0.0) * std::max(xx, 0.0));
    r.slack = r.lhs - r.rhs;
    double nv = v.norm(), nx = x.norm();
    r.proportional =
        nv > 0 && nx > 0 && std::abs(v.dot(x)) / (nv * nx) > 1.0 - 1e-9;
    return r;
}

namespace detail {

/// Random signature (1, k) instance.  Starts from a diagonal form with a
/// simplicial cone touching the light cone and applies integer shears, so
/// the generated matrices are dense but exactly equivalent to the seed
/// data.
inline QuadraticModel random_quadratic_instance(int rho, int n,
                                                std::mt19937_64& eng) {
    if (rho < 2) throw ConfigError("instance rank must be at least 2");
    RatMat q0(rho, rho);
    q0(0, 0) = Rat(1);
    std::vector<RatVec> gens;
    RatVec e1(static_cast<std::size_t>(rho), Rat(0));
    e1[0] = Rat(1);
    gens.push_back(e1);
    std::uniform_int_distribution<int> dnum(1, 8);
    std::uniform_int_distribution<int> extra(0, 2);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int j = 1; j < rho; ++j) {
        Rat d(dnum(eng), 2);
        q0(j, j) = -d;
        int c = 1;
        while (Rat(c * c) < d) ++c;
        c += extra(eng);
        RatVec g = e1;
        g[std::size_t(j)] = Rat(sign(eng) ? 1 : -1, c);
        gens.push_back(g);
    }

    RatMat shear = RatMat::identity(rho);
    std::uniform_int_distribution<int> pick(0, rho - 1);
    std::uniform_int_distribution<int> tval(-2, 2);
    for (int step = 0; step < 2; ++step) {
        int i = pick(eng), j = pick(eng);
        if (i == j) continue;
        RatMat e = RatMat::identity(rho);
        e(i, j) = Rat(tval(eng));
        RatMat next(rho, rho);
        for (int r = 0; r < rho; ++r)
            for (int cidx = 0; cidx < rho; ++cidx) {
                Rat s(0);
                for (int t = 0; t < rho; ++t) s += e(r, t) * shear(t, cidx);
                next(r, cidx) = s;
            }
        shear = next;
    }
    auto inv = inverse(shear);
    if (!inv) throw MathError("shear matrix is singular");
    RatMat qt = inv->transposed();
    RatMat qmid(rho, rho);
    for (int r = 0; r < rho; ++r)
        for (int c = 0; c < rho; ++c) {
            Rat s(0);
            for (int t = 0; t < rho; ++t) s += q0(r, t) * (*inv)(t, c);
            qmid(r, c) = s;
        }
    RatMat q(rho, rho);
    for (int r = 0; r < rho; ++r)
        for (int c = 0; c < rho; ++c) {
            Rat s(0);
            for (int t = 0; t < rho; ++t) s += qt(r, t) * qmid(t, c);
            q(r, c) = s;
        }

    std::vector<RatVec> sheared;
    for (const auto& g : gens) sheared.push_back(mat_vec(shear, g));
    return make_quadratic(n, std::move(q),
                          PolyhedralCone::from_generators(rho, sheared));
}

/// Strictly big class: a positive rational combination of all extreme rays
/// of the dual cone.
inline RatVec random_big_class(const QuadraticModel& m, std::mt19937_64& eng) {
    auto gens = m.dual_cone.minimal_generators();
    std::uniform_int_distribution<int> num(2, 20);
    RatVec w(static_cast<std::size_t>(m.rho), Rat(0));
    for (const auto& g : gens) {
        Rat c(num(eng), 10);
        for (std::size_t d = 0; d < w.size(); ++d) w[d] += c * g[d];
    }
    if (!m.dual_cone.interior_contains(w))
        throw MathError("sampled class is not big");
    return w;
}

}  // namespace detail

}  // namespace conezar
