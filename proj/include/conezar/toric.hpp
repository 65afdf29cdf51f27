#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conezar/chow.hpp"
#include "conezar/cones.hpp"
#include "conezar/fan.hpp"
#include "conezar/linalg.hpp"
#include "conezar/polytopes.hpp"
#include "conezar/rational.hpp"
#include "conezar/tensor.hpp"

namespace conezar {

// Divisor class group data for a complete simplicial fan: a choice of ray
// divisors whose classes form a basis, plus the linear map that expands an
// arbitrary ray-coefficient divisor in that basis.
struct ClassGroup {
    int rank = 0;
    std::vector<int> basis_rays;
    RatMat reduce;

    RatVec divisor_class(const RatVec& ray_coeffs) const {
        RatVec full = mat_vec(reduce, ray_coeffs);
        return RatVec(full.begin(), full.begin() + rank);
    }

    // A representative with support on the basis rays only.
    RatVec representative(const RatVec& cls, std::size_t ray_count) const {
        RatVec out(ray_count, Rat(0));
        for (int i = 0; i < rank; ++i)
            out[static_cast<std::size_t>(basis_rays[static_cast<std::size_t>(i)])] =
                cls[static_cast<std::size_t>(i)];
        return out;
    }
};

namespace detail {

inline bool complement_invertible(const Fan& f, const std::vector<int>& basis) {
    std::set<int> in_basis(basis.begin(), basis.end());
    std::vector<int> comp;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        if (!in_basis.count(static_cast<int>(i))) comp.push_back(static_cast<int>(i));
    if (static_cast<int>(comp.size()) != f.dim) return false;
    RatMat M(f.dim, f.dim);
    for (int r = 0; r < f.dim; ++r)
        for (int c = 0; c < f.dim; ++c)
            M(r, c) = f.rays[static_cast<std::size_t>(comp[static_cast<std::size_t>(r)])]
                            [static_cast<std::size_t>(c)];
    return det(M) != 0;
}

} // namespace detail

inline ClassGroup class_groups(const Fan& f,
                               std::optional<std::vector<int>> preferred_rays = {}) {
    const int r = static_cast<int>(f.rays.size());
    const int rank = r - f.dim;
    if (rank < 1) throw MathError("fan has too few rays for a positive-rank class group");

    std::vector<int> basis;
    if (preferred_rays) {
        basis = *preferred_rays;
        std::sort(basis.begin(), basis.end());
        if (static_cast<int>(basis.size()) != rank)
            throw MathError("preferred basis ray count does not match the rank");
        if (!detail::complement_invertible(f, basis))
            throw MathError("preferred basis rays do not span the class group");
    } else {
        std::vector<int> subset(static_cast<std::size_t>(rank));
        for (int i = 0; i < rank; ++i) subset[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (detail::complement_invertible(f, subset)) {
                basis = subset;
                break;
            }
            int k = rank - 1;
            while (k >= 0 && subset[static_cast<std::size_t>(k)] == r - rank + k) --k;
            if (k < 0) throw MathError("no ray subset spans the class group");
            ++subset[static_cast<std::size_t>(k)];
            for (int j = k + 1; j < rank; ++j)
                subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    // Solve a = sum_i x_i e_{basis_i} + V m for (x, m); the class map keeps x.
    RatMat A(r, r);
    for (int i = 0; i < rank; ++i)
        A(basis[static_cast<std::size_t>(i)], i) = Rat(1);
    for (int row = 0; row < r; ++row)
        for (int c = 0; c < f.dim; ++c)
            A(row, rank + c) = f.rays[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
    auto Ainv = inverse(A);
    if (!Ainv) throw MathError("class group reduction matrix is singular");

    ClassGroup cg;
    cg.rank = rank;
    cg.basis_rays = basis;
    cg.reduce = *Ainv;
    return cg;
}

// Intersection numbers of the wall curves against every ray divisor.  Each
// row is indexed by ray.  The two off-wall entries come from the lattice
// multiplicity quotients; the entries at the wall rays are then forced by
// linear equivalence.
struct WallCurve {
    std::vector<int> wall_rays;
    RatVec row;
};

namespace detail {

inline BigInt lattice_mult(const Fan& f, const std::vector<int>& rays) {
    const int k = static_cast<int>(rays.size());
    const int n = f.dim;
    std::vector<std::vector<BigInt>> M(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const RatVec& v = f.rays[static_cast<std::size_t>(rays[static_cast<std::size_t>(i)])];
        for (int j = 0; j < n; ++j) {
            Rat e = v[static_cast<std::size_t>(j)];
            if (denominator(e) != 1)
                throw MathError("lattice multiplicity needs integral rays");
            M[static_cast<std::size_t>(i)].push_back(numerator(e));
        }
    }
    // gcd over all k x k minors
    std::vector<int> cols(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cols[static_cast<std::size_t>(i)] = i;
    BigInt g = 0;
    while (true) {
        RatMat sub(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                sub(r, c) = Rat(M[static_cast<std::size_t>(r)]
                                 [static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])]);
        Rat d = det(sub);
        BigInt di = numerator(d);
        if (di < 0) di = -di;
        g = boost::multiprecision::gcd(g, di);
        int kk = k - 1;
        while (kk >= 0 && cols[static_cast<std::size_t>(kk)] == n - k + kk) --kk;
        if (kk < 0) break;
        ++cols[static_cast<std::size_t>(kk)];
        for (int j = kk + 1; j < k; ++j)
            cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (g == 0) throw MathError("degenerate cone has zero lattice multiplicity");
    return g;
}

} // namespace detail

inline std::vector<WallCurve> wall_curves(const Fan& f) {
    const int n = f.dim;
    const std::size_t r = f.rays.size();
    std::vector<WallCurve> out;
    for (const Wall& w : fan_walls(f)) {
        auto other_ray = [&](int cone_idx) {
            for (int ray : f.max_cones[static_cast<std::size_t>(cone_idx)])
                if (!std::binary_search(w.rays.begin(), w.rays.end(), ray)) return ray;
            throw MathError("wall equals its maximal cone");
        };
        int u0 = other_ray(w.cone_a);
        int u1 = other_ray(w.cone_b);

        BigInt mw = detail::lattice_mult(f, w.rays);
        BigInt ma = detail::lattice_mult(f, f.max_cones[static_cast<std::size_t>(w.cone_a)]);
        BigInt mb = detail::lattice_mult(f, f.max_cones[static_cast<std::size_t>(w.cone_b)]);

        RatVec row(r, Rat(0));
        row[static_cast<std::size_t>(u0)] = Rat(mw) / Rat(ma);
        row[static_cast<std::size_t>(u1)] = Rat(mw) / Rat(mb);

        // sum_rho <m, v_rho> row[rho] = 0 for all m forces the wall entries.
        RatMat A(n, n - 1);
        RatVec rhs(static_cast<std::size_t>(n), Rat(0));
        for (int c = 0; c < n - 1; ++c) {
            const RatVec& v = f.rays[static_cast<std::size_t>(w.rays[static_cast<std::size_t>(c)])];
            for (int rr = 0; rr < n; ++rr) A(rr, c) = v[static_cast<std::size_t>(rr)];
        }
        for (int rr = 0; rr < n; ++rr)
            rhs[static_cast<std::size_t>(rr)] =
                -(row[static_cast<std::size_t>(u0)] *
                      f.rays[static_cast<std::size_t>(u0)][static_cast<std::size_t>(rr)] +
                  row[static_cast<std::size_t>(u1)] *
                      f.rays[static_cast<std::size_t>(u1)][static_cast<std::size_t>(rr)]);
        auto sol = solve(A, rhs);
        if (!sol) throw MathError("wall curve relations are inconsistent");
        for (int c = 0; c < n - 1; ++c)
            row[static_cast<std::size_t>(w.rays[static_cast<std::size_t>(c)])] =
                (*sol)[static_cast<std::size_t>(c)];

        WallCurve wc;
        wc.wall_rays = w.rays;
        wc.row = std::move(row);
        out.push_back(std::move(wc));
    }
    std::sort(out.begin(), out.end(), [](const WallCurve& a, const WallCurve& b) {
        return a.wall_rays < b.wall_rays;
    });
    return out;
}

struct ToricOptions {
    std::optional<std::vector<int>> basis_rays;
    std::optional<std::vector<std::vector<int>>> basis_walls;
};

// Builds the full intersection-theoretic model of a complete simplicial
// toric variety: class group bases on both sides, the pairing from the wall
// curve table, the four positivity cones, and the intersection tensor fit
// from exact mixed volumes of nef divisor polytopes.
inline ChowModel build_chow(const Fan& f, const ToricOptions& opts = {}) {
    FanReport rep = validate_fan(f);
    if (!rep.valid) {
        std::string msg = "fan validation failed:";
        for (const auto& p : rep.problems) msg += " " + p + ";";
        throw MathError(msg);
    }

    const int n = f.dim;
    const std::size_t r = f.rays.size();
    ClassGroup cg = class_groups(f, opts.basis_rays);
    const int rho = cg.rank;
    std::vector<WallCurve> walls = wall_curves(f);

    // Functional coordinates of a curve: pairings with the basis ray divisors.
    auto phi = [&](const WallCurve& wc) {
        RatVec out(static_cast<std::size_t>(rho));
        for (int i = 0; i < rho; ++i)
            out[static_cast<std::size_t>(i)] =
                wc.row[static_cast<std::size_t>(cg.basis_rays[static_cast<std::size_t>(i)])];
        return out;
    };

    std::vector<int> wall_basis;
    if (opts.basis_walls) {
        for (const auto& want : *opts.basis_walls) {
            std::vector<int> key = want;
            std::sort(key.begin(), key.end());
            bool found = false;
            for (std::size_t i = 0; i < walls.size(); ++i)
                if (walls[i].wall_rays == key) {
                    wall_basis.push_back(static_cast<int>(i));
                    found = true;
                    break;
                }
            if (!found) throw MathError("preferred wall is not a wall of the fan");
        }
        if (static_cast<int>(wall_basis.size()) != rho)
            throw MathError("preferred wall count does not match the rank");
    } else {
        std::vector<RatVec> rows;
        for (std::size_t i = 0; i < walls.size() && static_cast<int>(wall_basis.size()) < rho; ++i) {
            rows.push_back(phi(walls[i]));
            if (rank_of_rows(rows) == static_cast<int>(rows.size()))
                wall_basis.push_back(static_cast<int>(i));
            else
                rows.pop_back();
        }
        if (static_cast<int>(wall_basis.size()) != rho)
            throw MathError("wall curves do not span the curve class group");
    }

    RatMat P(rho, rho);
    for (int j = 0; j < rho; ++j) {
        RatVec col = phi(walls[static_cast<std::size_t>(wall_basis[static_cast<std::size_t>(j)])]);
        for (int i = 0; i < rho; ++i) P(i, j) = col[static_cast<std::size_t>(i)];
    }
    auto Pinv = inverse(P);
    if (!Pinv) throw MathError("chosen wall curves do not form a basis");

    // Effective cones on both sides.
    std::vector<RatVec> eff_div_gens;
    for (std::size_t i = 0; i < r; ++i) {
        RatVec e(r, Rat(0));
        e[i] = Rat(1);
        eff_div_gens.push_back(cg.divisor_class(e));
    }
    std::vector<RatVec> eff_cur_gens;
    for (const auto& wc : walls) eff_cur_gens.push_back(mat_vec(*Pinv, phi(wc)));

    PolyhedralCone eff_div = PolyhedralCone::from_generators(rho, eff_div_gens);
    PolyhedralCone eff_cur = PolyhedralCone::from_generators(rho, eff_cur_gens);
    PolyhedralCone nef_div = eff_cur.dual(P);
    PolyhedralCone mov_cur = eff_div.dual(P.transposed());

    // Independent nef classes span the divisor space; their polytopes feed
    // the mixed-volume fit of the intersection tensor.
    std::vector<RatVec> nef_basis;
    for (const auto& g : nef_div.generators()) {
        nef_basis.push_back(g);
        if (rank_of_rows(nef_basis) != static_cast<int>(nef_basis.size()))
            nef_basis.pop_back();
        if (static_cast<int>(nef_basis.size()) == rho) break;
    }
    if (static_cast<int>(nef_basis.size()) != rho)
        throw MathError("nef cone is not full-dimensional; intersection tensor unavailable");

    std::vector<HPolytope> nef_polytopes;
    for (const auto& cls : nef_basis)
        nef_polytopes.push_back(polytope_from_divisor(f, cg.representative(cls, r)));

    BigInt nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;

    SymTensor t_nef(n, rho);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        bool sorted = true;
        for (int k = 0; k + 1 < n; ++k)
            if (idx[static_cast<std::size_t>(k)] > idx[static_cast<std::size_t>(k) + 1])
                sorted = false;
        if (sorted) {
            std::vector<HPolytope> tuple;
            for (int k = 0; k < n; ++k)
                tuple.push_back(nef_polytopes[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])]);
            t_nef.set(idx, Rat(nfact) * mixed_volume(tuple, true));
        }
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == rho - 1) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }

    // Standard basis vectors expressed in the nef basis give the pullback.
    RatMat nef_mat = RatMat::from_cols(nef_basis);
    auto nef_inv = inverse(nef_mat);
    if (!nef_inv) throw MathError("nef basis matrix is singular");
    SymTensor tensor = t_nef.pullback(*nef_inv);

    ChowModel m;
    m.n = n;
    m.rho = rho;
    for (int i = 0; i < rho; ++i)
        m.divisor_labels.push_back(
            "D" + std::to_string(cg.basis_rays[static_cast<std::size_t>(i)] + 1));
    for (int j = 0; j < rho; ++j) {
        const auto& wr = walls[static_cast<std::size_t>(wall_basis[static_cast<std::size_t>(j)])].wall_rays;
        std::string lab = "C";
        for (int ray : wr) lab += std::to_string(ray + 1);
        m.curve_labels.push_back(lab);
    }
    m.pairing = P;
    m.tensor = tensor;
    m.eff_div = eff_div;
    m.nef_div = nef_div;
    m.eff_cur = eff_cur;
    m.mov_cur = mov_cur;
    return finish_model(std::move(m));
}

} // namespace conezar
