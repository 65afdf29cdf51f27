#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conezar/cones.hpp"
#include "conezar/linalg.hpp"
#include "conezar/rational.hpp"
#include "conezar/tensor.hpp"

namespace conezar {

// Numerical model of divisor and curve classes on an n-dimensional variety:
// a rank-rho basis on each side, the intersection pairing between them, the
// degree-n intersection form on divisors, and the four positivity cones.
// Divisor-side cones live in divisor coordinates, curve-side cones in curve
// coordinates.
struct ChowModel {
    int n = 0;
    int rho = 0;
    std::vector<std::string> divisor_labels;
    std::vector<std::string> curve_labels;
    RatMat pairing;
    SymTensor tensor;
    PolyhedralCone eff_div;
    PolyhedralCone nef_div;
    PolyhedralCone eff_cur;
    PolyhedralCone mov_cur;

    SymTensorD tensor_d;
    Mat pairing_d;
};

inline Rat pair_classes(const ChowModel& m, const RatVec& divisor,
                        const RatVec& curve) {
    return dot(divisor, mat_vec(m.pairing, curve));
}

inline double pair_classes(const ChowModel& m, const Vec& divisor,
                           const Vec& curve) {
    return divisor.dot(m.pairing_d * curve);
}

// Top self-intersection number of a divisor class.  This equals the volume
// exactly when the class is nef.
inline Rat vol_nef(const ChowModel& m, const RatVec& divisor) {
    return m.tensor.eval_power(divisor);
}

inline double vol_nef(const ChowModel& m, const Vec& divisor) {
    Vec v = divisor;
    return m.tensor_d.eval(v);
}

// Curve class of the (n-1)-st self-intersection of a divisor, determined by
// its pairings against the divisor basis.
inline RatVec curve_power(const ChowModel& m, const RatVec& divisor) {
    RatVec rhs(static_cast<std::size_t>(m.rho));
    for (int i = 0; i < m.rho; ++i) {
        std::vector<RatVec> args(static_cast<std::size_t>(m.n), divisor);
        RatVec basis(static_cast<std::size_t>(m.rho), Rat(0));
        basis[static_cast<std::size_t>(i)] = Rat(1);
        args[0] = basis;
        rhs[static_cast<std::size_t>(i)] = m.tensor.eval_mixed(args);
    }
    auto c = solve(m.pairing, rhs);
    if (!c) throw MathError("intersection pairing is degenerate");
    return *c;
}

inline Vec curve_power(const ChowModel& m, const Vec& divisor) {
    Vec rhs(m.rho);
    std::vector<Vec> args(static_cast<std::size_t>(m.n), divisor);
    for (int i = 0; i < m.rho; ++i) {
        args[0] = Vec::Unit(m.rho, i);
        rhs[i] = m.tensor_d.eval_mixed(args);
    }
    return m.pairing_d.fullPivLu().solve(rhs);
}

// Assembles the derived double-precision members and checks the structural
// consistency of the model: matching ranks, invertible pairing, and the two
// cone dualities that tie the divisor side to the curve side.
inline ChowModel finish_model(ChowModel m) {
    if (m.n < 2) throw MathError("model dimension must be at least 2");
    if (m.rho < 1) throw MathError("model rank must be positive");
    if (m.pairing.rows() != m.rho || m.pairing.cols() != m.rho)
        throw MathError("pairing matrix has wrong shape");
    if (m.tensor.degree() != m.n || m.tensor.dim() != m.rho)
        throw MathError("intersection tensor has wrong shape");
    if (static_cast<int>(m.divisor_labels.size()) != m.rho ||
        static_cast<int>(m.curve_labels.size()) != m.rho)
        throw MathError("label lists must match the rank");
    if (m.eff_div.dim() != m.rho || m.nef_div.dim() != m.rho ||
        m.eff_cur.dim() != m.rho || m.mov_cur.dim() != m.rho)
        throw MathError("cone dimensions must match the rank");

    if (!inverse(m.pairing)) throw MathError("intersection pairing is singular");

    PolyhedralCone nef_expected = m.eff_cur.dual(m.pairing);
    if (!m.nef_div.same_cone(nef_expected))
        throw MathError("nef cone is not dual to the curve cone under the pairing");
    PolyhedralCone mov_expected = m.eff_div.dual(m.pairing.transposed());
    if (!m.mov_cur.same_cone(mov_expected))
        throw MathError("movable cone is not dual to the effective cone");

    for (const auto& g : m.nef_div.generators())
        if (!m.eff_div.contains(g))
            throw MathError("nef generator escapes the effective cone");
    for (const auto& g : m.mov_cur.generators())
        if (!m.eff_cur.contains(g))
            throw MathError("movable generator escapes the curve cone");

    m.tensor_d = SymTensorD::from_exact(m.tensor);
    m.pairing_d = to_mat(m.pairing);
    return m;
}

// Morphism data for a map from a source model to a target model: divisor
// pullback (target coordinates to source coordinates) and curve pushforward
// (source to target).  The projection formula ties them to the pairings:
// pairing_target(a, push(b)) = pairing_source(pull(a), b).
struct ModelMap {
    RatMat pullback;
    RatMat pushforward;
};

inline void validate_map(const ChowModel& source, const ChowModel& target,
                         const ModelMap& f) {
    if (f.pullback.rows() != source.rho || f.pullback.cols() != target.rho)
        throw MathError("pullback matrix has wrong shape");
    if (f.pushforward.rows() != target.rho || f.pushforward.cols() != source.rho)
        throw MathError("pushforward matrix has wrong shape");
    for (int i = 0; i < target.rho; ++i)
        for (int j = 0; j < source.rho; ++j) {
            Rat lhs(0);
            for (int k = 0; k < target.rho; ++k)
                lhs += target.pairing(i, k) * f.pushforward(k, j);
            Rat rhs(0);
            for (int k = 0; k < source.rho; ++k)
                rhs += f.pullback(k, i) * source.pairing(k, j);
            if (lhs != rhs)
                throw MathError("pullback and pushforward violate the projection formula");
        }
}

} // namespace conezar
