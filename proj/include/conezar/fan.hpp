#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "conezar/linalg.hpp"
#include "conezar/lp.hpp"
#include "conezar/rational.hpp"

namespace conezar {

// A rational simplicial fan, stored as primitive ray vectors plus the
// ray-index sets of its maximal cones.
struct Fan {
    int dim = 0;
    std::vector<RatVec> rays;
    std::vector<std::vector<int>> max_cones;
    bool rays_were_normalized = false;
};

struct FanReport {
    bool valid = true;
    std::vector<std::string> problems;
};

inline Fan make_fan(int dim, std::vector<RatVec> rays,
                    std::vector<std::vector<int>> max_cones) {
    Fan f;
    f.dim = dim;
    for (auto& r : rays) {
        if (static_cast<int>(r.size()) != dim)
            throw MathError("fan ray has wrong dimension");
        if (is_zero(r)) throw MathError("fan ray is zero");
        RatVec p = primitive_ray(r);
        if (p != r) f.rays_were_normalized = true;
        f.rays.push_back(std::move(p));
    }
    for (auto& mc : max_cones) {
        std::sort(mc.begin(), mc.end());
        for (int i : mc)
            if (i < 0 || i >= static_cast<int>(f.rays.size()))
                throw MathError("max cone references unknown ray");
        f.max_cones.push_back(std::move(mc));
    }
    return f;
}

namespace detail {

// Do the interiors of two simplicial full-dimensional cones meet?  Any
// common interior point can be rescaled so that all barycentric
// coefficients are at least one, which turns the question into an exact
// feasibility problem in the shifted coefficients.
inline bool interiors_meet(const Fan& f, const std::vector<int>& a,
                           const std::vector<int>& b) {
    const int n = f.dim;
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    RatMat A(n, na + nb);
    RatVec rhs(static_cast<std::size_t>(n), Rat(0));
    for (int j = 0; j < na; ++j)
        for (int i = 0; i < n; ++i) {
            A(i, j) = f.rays[static_cast<std::size_t>(a[j])][static_cast<std::size_t>(i)];
            rhs[static_cast<std::size_t>(i)] -= A(i, j);
        }
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < n; ++i) {
            A(i, na + j) = -f.rays[static_cast<std::size_t>(b[j])][static_cast<std::size_t>(i)];
            rhs[static_cast<std::size_t>(i)] -= A(i, na + j);
        }
    return lp_feasible_point(A, rhs).has_value();
}

} // namespace detail

// Structural validation: primitive rays, simplicial full-dimensional
// maximal cones, every wall shared by exactly two maximal cones, and
// pairwise disjoint cone interiors.  Together with the wall condition the
// disjointness check certifies that the fan is complete.
inline FanReport validate_fan(const Fan& f) {
    FanReport rep;
    auto fail = [&](std::string msg) {
        rep.valid = false;
        rep.problems.push_back(std::move(msg));
    };

    if (f.dim <= 0) {
        fail("fan dimension must be positive");
        return rep;
    }
    if (f.max_cones.empty()) fail("fan has no maximal cones");

    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        if (is_zero(f.rays[i])) fail("ray " + std::to_string(i) + " is zero");
        if (f.rays[i] != primitive_ray(f.rays[i]))
            fail("ray " + std::to_string(i) + " is not primitive");
        for (std::size_t j = i + 1; j < f.rays.size(); ++j)
            if (f.rays[i] == f.rays[j])
                fail("rays " + std::to_string(i) + " and " + std::to_string(j) +
                     " coincide");
    }

    std::set<int> used;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const auto& mc = f.max_cones[c];
        std::string tag = "max cone " + std::to_string(c);
        if (static_cast<int>(mc.size()) != f.dim) {
            fail(tag + " does not have exactly dim rays");
            continue;
        }
        if (std::set<int>(mc.begin(), mc.end()).size() != mc.size()) {
            fail(tag + " repeats a ray");
            continue;
        }
        RatMat M(f.dim, f.dim);
        for (int j = 0; j < f.dim; ++j)
            for (int i = 0; i < f.dim; ++i)
                M(i, j) = f.rays[static_cast<std::size_t>(mc[static_cast<std::size_t>(j)])]
                                [static_cast<std::size_t>(i)];
        if (det(M) == 0) fail(tag + " is not full-dimensional");
        for (int i : mc) used.insert(i);
    }
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        if (used.find(static_cast<int>(i)) == used.end())
            fail("ray " + std::to_string(i) + " lies in no maximal cone");

    if (!rep.valid) return rep;

    std::map<std::vector<int>, std::vector<int>> wall_owners;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const auto& mc = f.max_cones[c];
        for (std::size_t drop = 0; drop < mc.size(); ++drop) {
            std::vector<int> wall;
            for (std::size_t k = 0; k < mc.size(); ++k)
                if (k != drop) wall.push_back(mc[k]);
            wall_owners[wall].push_back(static_cast<int>(c));
        }
    }
    for (const auto& [wall, owners] : wall_owners) {
        if (owners.size() != 2) {
            std::string w;
            for (int i : wall) w += (w.empty() ? "" : ",") + std::to_string(i);
            fail("wall {" + w + "} lies in " + std::to_string(owners.size()) +
                 " maximal cones (expected 2)");
        }
    }

    for (std::size_t a = 0; a < f.max_cones.size(); ++a)
        for (std::size_t b = a + 1; b < f.max_cones.size(); ++b)
            if (detail::interiors_meet(f, f.max_cones[a], f.max_cones[b]))
                fail("maximal cones " + std::to_string(a) + " and " +
                     std::to_string(b) + " have overlapping interiors");

    return rep;
}

// Walls (codimension-one shared faces) as sorted ray-index sets together
// with the indices of the two maximal cones containing each wall.
struct Wall {
    std::vector<int> rays;
    int cone_a = -1;
    int cone_b = -1;
};

inline std::vector<Wall> fan_walls(const Fan& f) {
    std::map<std::vector<int>, std::vector<int>> wall_owners;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const auto& mc = f.max_cones[c];
        for (std::size_t drop = 0; drop < mc.size(); ++drop) {
            std::vector<int> wall;
            for (std::size_t k = 0; k < mc.size(); ++k)
                if (k != drop) wall.push_back(mc[k]);
            wall_owners[wall].push_back(static_cast<int>(c));
        }
    }
    std::vector<Wall> out;
    for (const auto& [wall, owners] : wall_owners) {
        if (owners.size() != 2)
            throw MathError("fan wall is not shared by exactly two cones");
        Wall w;
        w.rays = wall;
        w.cone_a = owners[0];
        w.cone_b = owners[1];
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace conezar
