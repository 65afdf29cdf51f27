#pragma once

#include <string>
#include <vector>

#include "conezar/chow.hpp"
#include "conezar/toric.hpp"

namespace conezar {

namespace detail {

inline ChowModel proj_bundle_p1() {
    ChowModel m;
    m.n = 3;
    m.rho = 2;
    m.divisor_labels = {"F", "Xi"};
    m.curve_labels = {"XiF", "Xi2"};

    m.tensor = SymTensor(3, 2);
    m.tensor.set({0, 1, 1}, Rat(1));
    m.tensor.set({1, 1, 1}, Rat(-1));

    m.pairing = RatMat(2, 2);
    m.pairing(0, 0) = Rat(0);
    m.pairing(0, 1) = Rat(1);
    m.pairing(1, 0) = Rat(1);
    m.pairing(1, 1) = Rat(-1);

    m.eff_div = PolyhedralCone::from_generators(2, {rat_vec({1, 0}), rat_vec({0, 1})});
    m.nef_div = PolyhedralCone::from_generators(2, {rat_vec({1, 0}), rat_vec({1, 1})});
    m.eff_cur = PolyhedralCone::from_generators(2, {rat_vec({1, 0}), rat_vec({0, 1})});
    m.mov_cur = PolyhedralCone::from_generators(2, {rat_vec({1, 0}), rat_vec({1, 1})});
    return finish_model(std::move(m));
}

inline Fan flip_fan3() {
    return make_fan(3,
                    {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({1, 1, 1}),
                     rat_vec({-1, 0, 0}), rat_vec({0, -1, 0}), rat_vec({0, 0, -1})},
                    {{0, 1, 2}, {0, 1, 5}, {0, 2, 4}, {0, 4, 5},
                     {1, 2, 3}, {1, 3, 5}, {2, 3, 4}, {3, 4, 5}});
}

inline Fan fs_fan3() {
    return make_fan(3,
                    {rat_vec({1, 0, 0}), rat_vec({0, 1, 0}), rat_vec({0, 0, 1}),
                     rat_vec({-1, -1, -1}), rat_vec({1, -1, -2}),
                     rat_vec({1, 0, -1}), rat_vec({0, -1, -2}), rat_vec({0, 0, -1})},
                    {{0, 1, 2}, {0, 1, 5}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5},
                     {1, 2, 3}, {1, 3, 7}, {1, 4, 5}, {1, 4, 7},
                     {3, 4, 6}, {3, 6, 7}, {4, 6, 7}});
}

inline ChowModel diagonal_abelian(int N) {
    if (N < 2) throw ConfigError("diagonal-abelian needs dimension at least 2");
    ChowModel m;
    m.n = N;
    m.rho = N;
    for (int i = 1; i <= N; ++i) {
        m.divisor_labels.push_back("D" + std::to_string(i));
        m.curve_labels.push_back("C" + std::to_string(i));
    }
    m.tensor = SymTensor(N, N);
    std::vector<int> diag(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) diag[static_cast<std::size_t>(i)] = i;
    m.tensor.set(diag, Rat(1));

    BigInt fact = 1;
    for (int i = 2; i <= N - 1; ++i) fact *= i;
    m.pairing = RatMat::identity(N);
    for (int i = 0; i < N; ++i) m.pairing(i, i) = Rat(fact);

    std::vector<RatVec> orthant;
    for (int i = 0; i < N; ++i) {
        RatVec e(static_cast<std::size_t>(N), Rat(0));
        e[static_cast<std::size_t>(i)] = Rat(1);
        orthant.push_back(e);
    }
    m.eff_div = PolyhedralCone::from_generators(N, orthant);
    m.nef_div = m.eff_div;
    m.eff_cur = m.eff_div;
    m.mov_cur = m.eff_div;
    return finish_model(std::move(m));
}

// Surface model carried by a diagonal quadratic form of signature (1,k).
// The nef cone is a polyhedral cone inside the positive light cone, and the
// remaining cones follow by duality under the form itself.
inline ChowModel quadratic_surface(const RatVec& diag) {
    const int rho = static_cast<int>(diag.size());
    if (rho < 1) throw ConfigError("quadratic-surface needs at least one diagonal entry");
    if (diag[0] <= 0)
        throw ConfigError("quadratic-surface needs a positive leading diagonal entry");
    for (int i = 1; i < rho; ++i)
        if (diag[static_cast<std::size_t>(i)] >= 0)
            throw ConfigError("quadratic-surface needs negative trailing diagonal entries");

    ChowModel m;
    m.n = 2;
    m.rho = rho;
    for (int i = 1; i <= rho; ++i) {
        m.divisor_labels.push_back("D" + std::to_string(i));
        m.curve_labels.push_back("C" + std::to_string(i));
    }
    m.tensor = SymTensor(2, rho);
    m.pairing = RatMat(rho, rho);
    for (int i = 0; i < rho; ++i) {
        m.tensor.set({i, i}, diag[static_cast<std::size_t>(i)]);
        m.pairing(i, i) = diag[static_cast<std::size_t>(i)];
    }

    std::vector<RatVec> nef_gens;
    RatVec e1(static_cast<std::size_t>(rho), Rat(0));
    e1[0] = Rat(1);
    nef_gens.push_back(e1);
    for (int j = 1; j < rho; ++j) {
        // Pick 1/c with c the smallest integer whose square dominates the
        // ratio of diagonal entries, keeping the generators inside the cone
        // where the form is nonnegative.
        Rat ratio = -diag[static_cast<std::size_t>(j)] / diag[0];
        BigInt c = 1;
        while (Rat(c * c) < ratio) ++c;
        RatVec g = e1;
        g[static_cast<std::size_t>(j)] = Rat(1) / Rat(c);
        nef_gens.push_back(primitive_ray(g));
    }
    m.nef_div = PolyhedralCone::from_generators(rho, nef_gens);
    m.eff_div = m.nef_div.dual(m.pairing);
    m.eff_cur = m.eff_div;
    m.mov_cur = m.eff_div.dual(m.pairing);
    return finish_model(std::move(m));
}

inline RatVec parse_quadratic_diag(const std::string& inner) {
    RatVec diag;
    std::string cur;
    for (char ch : inner + ",") {
        if (ch == ',') {
            if (cur.empty()) throw ConfigError("empty diagonal entry in quadratic-surface");
            diag.push_back(parse_rat(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return diag;
}

} // namespace detail

inline std::vector<std::string> preset_names() {
    return {"proj-bundle-p1", "toric-flip-3fold", "fs-nonconvex",
            "diagonal-abelian(N)", "quadratic-surface"};
}

// Built-in models addressable from the command line and the test suites.
inline ChowModel make_preset(const std::string& name) {
    if (name == "proj-bundle-p1") return detail::proj_bundle_p1();
    if (name == "toric-flip-3fold") return build_chow(detail::flip_fan3());
    if (name == "fs-nonconvex") {
        ToricOptions opts;
        opts.basis_rays = std::vector<int>{0, 4, 5, 6, 7};
        opts.basis_walls =
            std::vector<std::vector<int>>{{0, 3}, {0, 5}, {1, 4}, {3, 6}, {3, 7}};
        return build_chow(detail::fs_fan3(), opts);
    }
    if (name == "quadratic-surface")
        return detail::quadratic_surface({Rat(1), Rat(-1)});
    if (name.rfind("quadratic-surface(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(18, name.size() - 19);
        return detail::quadratic_surface(detail::parse_quadratic_diag(inner));
    }
    if (name.rfind("diagonal-abelian(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(17, name.size() - 18);
        try {
            std::size_t used = 0;
            int N = std::stoi(inner, &used);
            if (used != inner.size()) throw std::invalid_argument(inner);
            return detail::diagonal_abelian(N);
        } catch (const std::invalid_argument&) {
            throw ConfigError("malformed dimension in '" + name + "'");
        } catch (const std::out_of_range&) {
            throw ConfigError("dimension out of range in '" + name + "'");
        }
    }
    throw ConfigError("unknown preset '" + name + "'");
}

} // namespace conezar
