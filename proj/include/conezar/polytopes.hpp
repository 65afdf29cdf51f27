#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conezar/cones.hpp"
#include "conezar/fan.hpp"
#include "conezar/linalg.hpp"
#include "conezar/lp.hpp"
#include "conezar/rational.hpp"

namespace conezar {

// Bounded rational polytope in H-representation.  Every inequality reads
// <u, normals[i]> + offsets[i] >= 0.  Vertices are enumerated exactly and
// each carries the set of inequalities tight at it, which certifies the
// vertex and drives the face lattice used for volume computation.
struct HPolytope {
    int dim = 0;
    std::vector<RatVec> normals;
    RatVec offsets;
    std::vector<RatVec> vertices;
    std::vector<std::vector<int>> tight;
    bool empty = false;
    bool degenerate = false;
    Rat volume = Rat(0);
};

namespace detail {

inline int affine_rank_of(const std::vector<RatVec>& vertices,
                          const std::vector<int>& idx) {
    std::vector<RatVec> pts;
    pts.reserve(idx.size());
    for (int i : idx) pts.push_back(vertices[static_cast<std::size_t>(i)]);
    return affine_rank(pts);
}

// Triangulates a face of dimension d (given by a sorted vertex index set)
// into d-simplices by coning the first vertex over the triangulations of
// the facets of the face that avoid it.
inline void triangulate_face(
    const HPolytope& p, const std::vector<std::vector<int>>& tight_vertices,
    const std::vector<int>& face, int d,
    std::map<std::vector<int>, std::vector<std::vector<int>>>& memo,
    std::vector<std::vector<int>>& out) {
    if (static_cast<int>(face.size()) == d + 1) {
        out.push_back(face);
        return;
    }
    auto it = memo.find(face);
    if (it != memo.end()) {
        out.insert(out.end(), it->second.begin(), it->second.end());
        return;
    }
    std::vector<std::vector<int>> mine;
    const int v0 = face[0];
    std::set<std::vector<int>> seen;
    for (std::size_t j = 0; j < p.normals.size(); ++j) {
        std::vector<int> sub;
        std::set_intersection(face.begin(), face.end(),
                              tight_vertices[j].begin(), tight_vertices[j].end(),
                              std::back_inserter(sub));
        if (static_cast<int>(sub.size()) < d) continue;
        if (sub == face) continue;
        if (std::binary_search(sub.begin(), sub.end(), v0)) continue;
        if (!seen.insert(sub).second) continue;
        if (affine_rank_of(p.vertices, sub) != d - 1) continue;
        std::vector<std::vector<int>> pieces;
        triangulate_face(p, tight_vertices, sub, d - 1, memo, pieces);
        for (auto& s : pieces) {
            std::vector<int> simplex;
            simplex.push_back(v0);
            simplex.insert(simplex.end(), s.begin(), s.end());
            mine.push_back(std::move(simplex));
        }
    }
    out.insert(out.end(), mine.begin(), mine.end());
    memo.emplace(face, std::move(mine));
}

inline Rat volume_from_vertices(const HPolytope& p) {
    const int n = p.dim;
    if (static_cast<int>(p.vertices.size()) < n + 1) return Rat(0);
    std::vector<int> all(p.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    if (affine_rank_of(p.vertices, all) != n) return Rat(0);

    std::vector<std::vector<int>> tight_vertices(p.normals.size());
    for (std::size_t v = 0; v < p.vertices.size(); ++v)
        for (int j : p.tight[v])
            tight_vertices[static_cast<std::size_t>(j)].push_back(static_cast<int>(v));

    RatVec apex(static_cast<std::size_t>(n), Rat(0));
    for (const auto& v : p.vertices)
        for (int i = 0; i < n; ++i) apex[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i)
        apex[static_cast<std::size_t>(i)] /= Rat(static_cast<long long>(p.vertices.size()));

    BigInt nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;

    std::map<std::vector<int>, std::vector<std::vector<int>>> memo;
    std::set<std::vector<int>> seen_facets;
    Rat total(0);
    for (std::size_t j = 0; j < p.normals.size(); ++j) {
        const auto& fv = tight_vertices[j];
        if (static_cast<int>(fv.size()) < n) continue;
        if (!seen_facets.insert(fv).second) continue;
        if (affine_rank_of(p.vertices, fv) != n - 1) continue;
        std::vector<std::vector<int>> simplices;
        triangulate_face(p, tight_vertices, fv, n - 1, memo, simplices);
        for (const auto& s : simplices) {
            RatMat M(n, n);
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < n; ++r)
                    M(r, c) = p.vertices[static_cast<std::size_t>(s[static_cast<std::size_t>(c)])]
                                        [static_cast<std::size_t>(r)] -
                              apex[static_cast<std::size_t>(r)];
            Rat d = det(M);
            if (d < 0) d = -d;
            total += d / Rat(nfact);
        }
    }
    return total;
}

inline bool halfspaces_feasible(const std::vector<RatVec>& normals,
                                const RatVec& offsets, int dim) {
    const int m = static_cast<int>(normals.size());
    RatMat A(m, 2 * dim + m);
    RatVec b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < dim; ++j) {
            A(i, j) = normals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            A(i, dim + j) = -A(i, j);
        }
        A(i, 2 * dim + i) = Rat(-1);
        b[static_cast<std::size_t>(i)] = -offsets[static_cast<std::size_t>(i)];
    }
    return lp_feasible_point(A, b).has_value();
}

} // namespace detail

inline HPolytope polytope_from_inequalities(int dim, std::vector<RatVec> normals,
                                            RatVec offsets) {
    if (normals.size() != offsets.size())
        throw MathError("inequality normals and offsets disagree in count");
    for (const auto& nv : normals)
        if (static_cast<int>(nv.size()) != dim)
            throw MathError("inequality normal has wrong dimension");

    HPolytope p;
    p.dim = dim;
    p.normals = std::move(normals);
    p.offsets = std::move(offsets);

    if (!detail::halfspaces_feasible(p.normals, p.offsets, dim)) {
        p.empty = true;
        p.degenerate = true;
        return p;
    }

    DualDescription rec = dual_description(p.normals, dim);
    if (!rec.rays.empty() || !rec.lineality.empty())
        throw MathError("polytope is unbounded");

    const int m = static_cast<int>(p.normals.size());
    std::set<RatVec> found;
    std::vector<int> subset(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) subset[static_cast<std::size_t>(i)] = i;
    bool done = m < dim;
    while (!done) {
        RatMat M(dim, dim);
        RatVec rhs(static_cast<std::size_t>(dim));
        for (int r = 0; r < dim; ++r) {
            const auto& nv = p.normals[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])];
            for (int c = 0; c < dim; ++c) M(r, c) = nv[static_cast<std::size_t>(c)];
            rhs[static_cast<std::size_t>(r)] =
                -p.offsets[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])];
        }
        if (det(M) != 0) {
            auto sol = solve(M, rhs);
            if (sol) {
                bool inside = true;
                for (int i = 0; i < m && inside; ++i)
                    if (dot(p.normals[static_cast<std::size_t>(i)], *sol) +
                            p.offsets[static_cast<std::size_t>(i)] < 0)
                        inside = false;
                if (inside) found.insert(*sol);
            }
        }
        int k = dim - 1;
        while (k >= 0 && subset[static_cast<std::size_t>(k)] == m - dim + k) --k;
        if (k < 0) {
            done = true;
        } else {
            ++subset[static_cast<std::size_t>(k)];
            for (int j = k + 1; j < dim; ++j)
                subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    p.vertices.assign(found.begin(), found.end());
    if (p.vertices.empty())
        throw MathError("feasible bounded polytope produced no vertices");
    for (const auto& v : p.vertices) {
        std::vector<int> t;
        for (int i = 0; i < m; ++i)
            if (dot(p.normals[static_cast<std::size_t>(i)], v) +
                    p.offsets[static_cast<std::size_t>(i)] == 0)
                t.push_back(i);
        p.tight.push_back(std::move(t));
    }

    std::vector<int> all(p.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    p.degenerate = detail::affine_rank_of(p.vertices, all) < dim;
    p.volume = p.degenerate ? Rat(0) : detail::volume_from_vertices(p);
    return p;
}

// Lattice polytope of a divisor on a complete fan: one inequality per ray,
// offsets given by the divisor coefficients.  The zero divisor yields the
// origin as a degenerate point polytope.
inline HPolytope polytope_from_divisor(const Fan& f, const RatVec& coeffs) {
    if (coeffs.size() != f.rays.size())
        throw MathError("divisor coefficient count does not match ray count");
    return polytope_from_inequalities(f.dim, f.rays, coeffs);
}

inline HPolytope scale_polytope(const HPolytope& p, const Rat& t) {
    if (t < 0) throw MathError("polytope scaling factor must be nonnegative");
    if (p.empty) throw MathError("cannot scale an empty polytope");
    RatVec offs = p.offsets;
    for (auto& a : offs) a *= t;
    return polytope_from_inequalities(p.dim, p.normals, offs);
}

// Convex hull of finitely many rational points, via the double description
// of the cone of valid inequalities over the homogenized points.
inline HPolytope hull_of_points(int dim, const std::vector<RatVec>& points) {
    if (points.empty()) throw MathError("hull of an empty point set");
    std::vector<RatVec> homog;
    homog.reserve(points.size());
    for (const auto& pt : points) {
        if (static_cast<int>(pt.size()) != dim)
            throw MathError("hull point has wrong dimension");
        RatVec h(static_cast<std::size_t>(dim) + 1);
        h[0] = Rat(1);
        for (int i = 0; i < dim; ++i) h[static_cast<std::size_t>(i) + 1] = pt[static_cast<std::size_t>(i)];
        homog.push_back(std::move(h));
    }
    DualDescription valid = dual_description(homog, dim + 1);
    std::vector<RatVec> normals;
    RatVec offsets;
    auto add_row = [&](const RatVec& c) {
        RatVec nv(c.begin() + 1, c.end());
        if (is_zero(nv)) return;
        normals.push_back(std::move(nv));
        offsets.push_back(c[0]);
    };
    for (const auto& r : valid.rays) add_row(r);
    for (const auto& l : valid.lineality) {
        add_row(l);
        add_row(scaled(l, Rat(-1)));
    }
    if (normals.empty()) {
        // All points coincide; pin the single point with coordinate equalities.
        for (int i = 0; i < dim; ++i) {
            RatVec e(static_cast<std::size_t>(dim), Rat(0));
            e[static_cast<std::size_t>(i)] = Rat(1);
            normals.push_back(e);
            offsets.push_back(-points[0][static_cast<std::size_t>(i)]);
            e[static_cast<std::size_t>(i)] = Rat(-1);
            normals.push_back(e);
            offsets.push_back(points[0][static_cast<std::size_t>(i)]);
        }
    }
    return polytope_from_inequalities(dim, normals, offsets);
}

inline HPolytope minkowski_sum(const HPolytope& a, const HPolytope& b) {
    if (a.dim != b.dim) throw MathError("Minkowski sum of mismatched dimensions");
    if (a.empty || b.empty) throw MathError("Minkowski sum with an empty polytope");
    std::vector<RatVec> pts;
    pts.reserve(a.vertices.size() * b.vertices.size());
    for (const auto& va : a.vertices)
        for (const auto& vb : b.vertices) {
            RatVec s(va.size());
            for (std::size_t i = 0; i < va.size(); ++i) s[i] = va[i] + vb[i];
            pts.push_back(std::move(s));
        }
    return hull_of_points(a.dim, pts);
}

namespace detail {

inline void bounded_exponents(int vars, int maxdeg,
                              std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<std::size_t>(vars), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == vars) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
    };
    rec(rec, 0, maxdeg);
}

inline bool offsets_are_tight(const HPolytope& p) {
    std::set<int> attained;
    for (const auto& t : p.tight)
        for (int i : t) attained.insert(i);
    return attained.size() == p.normals.size();
}

} // namespace detail

// Mixed volume of dim polytopes, normalized so that the diagonal recovers
// the ordinary volume.  The scaled-sum volumes are polynomial in the scale
// factors; fitting that polynomial on an interpolation grid and reading off
// the coefficient of the all-distinct monomial gives the mixed term.
//
// When every input comes from divisors on one complete fan with the support
// inequalities tight (the nef case), the sum of scaled polytopes is cut out
// by the summed offsets directly, so the caller may request that shortcut.
// Otherwise each grid evaluation builds the sum as a hull of vertex sums.
inline Rat mixed_volume(const std::vector<HPolytope>& ps,
                        bool shared_fan_shortcut = false) {
    if (ps.empty()) throw MathError("mixed volume of an empty list");
    const int n = ps[0].dim;
    if (static_cast<int>(ps.size()) != n)
        throw MathError("mixed volume needs exactly dim polytopes");
    for (const auto& p : ps) {
        if (p.dim != n) throw MathError("mixed volume inputs disagree in dimension");
        if (p.empty) throw MathError("mixed volume of an empty polytope");
    }
    if (shared_fan_shortcut) {
        for (const auto& p : ps) {
            if (p.normals != ps[0].normals)
                throw MathError("shared-fan shortcut requires identical normal lists");
            if (!detail::offsets_are_tight(p))
                throw MathError("shared-fan shortcut requires tight support offsets");
        }
    }

    std::vector<std::vector<int>> expos;
    detail::bounded_exponents(n - 1, n, expos);
    const int cnt = static_cast<int>(expos.size());

    RatMat M(cnt, cnt);
    RatVec rhs(static_cast<std::size_t>(cnt));
    for (int r = 0; r < cnt; ++r) {
        RatVec t(static_cast<std::size_t>(n));
        for (int j = 0; j < n - 1; ++j)
            t[static_cast<std::size_t>(j)] = Rat(expos[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] + 1);
        t[static_cast<std::size_t>(n) - 1] = Rat(1);

        Rat vol;
        if (shared_fan_shortcut) {
            RatVec offs(ps[0].offsets.size(), Rat(0));
            for (int i = 0; i < n; ++i)
                for (std::size_t k = 0; k < offs.size(); ++k)
                    offs[k] += t[static_cast<std::size_t>(i)] *
                               ps[static_cast<std::size_t>(i)].offsets[k];
            vol = polytope_from_inequalities(n, ps[0].normals, offs).volume;
        } else {
            HPolytope acc = scale_polytope(ps[0], t[0]);
            for (int i = 1; i < n; ++i)
                acc = minkowski_sum(acc, scale_polytope(ps[static_cast<std::size_t>(i)],
                                                        t[static_cast<std::size_t>(i)]));
            vol = acc.volume;
        }
        rhs[static_cast<std::size_t>(r)] = vol;

        for (int c = 0; c < cnt; ++c) {
            Rat term(1);
            for (int j = 0; j < n - 1; ++j) {
                Rat base = Rat(expos[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] + 1);
                for (int e = 0; e < expos[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]; ++e)
                    term *= base;
            }
            M(r, c) = term;
        }
    }

    auto coeffs = solve(M, rhs);
    if (!coeffs) throw MathError("volume interpolation system is singular");

    std::vector<int> diag(static_cast<std::size_t>(n) - 1, 1);
    BigInt nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;
    for (int c = 0; c < cnt; ++c)
        if (expos[static_cast<std::size_t>(c)] == diag)
            return (*coeffs)[static_cast<std::size_t>(c)] / Rat(nfact);
    throw MathError("interpolation basis missed the mixed monomial");
}

} // namespace conezar
