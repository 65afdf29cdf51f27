#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conezar/linalg.hpp"
#include "conezar/lp.hpp"
#include "conezar/rational.hpp"

namespace conezar {

/// Minimal V-description of a polyhedral cone: lin(lineality) + cone(rays).
struct DualDescription {
  std::vector<RatVec> lineality;
  std::vector<RatVec> rays;
};

namespace detail {

inline void canonicalize_rays(std::vector<RatVec>& rays) {
  for (auto& r : rays) r = primitive_ray(r);
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  rays.erase(std::remove_if(rays.begin(), rays.end(),
                            [](const RatVec& r) { return is_zero(r); }),
             rays.end());
}

}  // namespace detail

/// Generators of {x : <x, h> >= 0 for every h in halfspaces}, computed by
/// incremental double description over exact rationals.  Starts from the
/// full space and peels one lineality dimension per independent constraint.
inline DualDescription dual_description(const std::vector<RatVec>& halfspaces, int dim) {
  std::vector<RatVec> lineality;
  for (int i = 0; i < dim; ++i) {
    RatVec e(std::size_t(dim), Rat(0));
    e[std::size_t(i)] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<RatVec> rays;
  std::vector<RatVec> processed;

  auto prune = [&]() {
    detail::canonicalize_rays(rays);
    std::vector<RatVec> kept;
    int need = dim - int(lineality.size()) - 1;
    for (const auto& r : rays) {
      std::vector<RatVec> active;
      bool in_lineality = true;
      for (const auto& h : processed) {
        Rat p = dot(r, h);
        if (p == 0)
          active.push_back(h);
        else
          in_lineality = false;
      }
      if (in_lineality && !processed.empty()) continue;  // degenerate combination
      if (need > 0 && rank_of_rows(active) < need) continue;
      kept.push_back(r);
    }
    rays = std::move(kept);
  };

  for (const auto& h : halfspaces) {
    if (is_zero(h)) continue;
    int pivot = -1;
    for (std::size_t i = 0; i < lineality.size(); ++i)
      if (dot(lineality[i], h) != 0) { pivot = int(i); break; }

    if (pivot >= 0) {
      RatVec l0 = scaled(lineality[std::size_t(pivot)], Rat(1) / dot(lineality[std::size_t(pivot)], h));
      std::vector<RatVec> new_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (int(i) == pivot) continue;
        new_lin.push_back(axpy(lineality[i], -dot(lineality[i], h), l0));
      }
      lineality = std::move(new_lin);
      for (auto& r : rays) r = axpy(r, -dot(r, h), l0);
      rays.push_back(l0);
    } else {
      std::vector<RatVec> plus, zero, minus;
      std::vector<Rat> pp, mm;
      for (const auto& r : rays) {
        Rat p = dot(r, h);
        if (p > 0) { plus.push_back(r); pp.push_back(p); }
        else if (p < 0) { minus.push_back(r); mm.push_back(p); }
        else zero.push_back(r);
      }
      std::vector<RatVec> next = plus;
      next.insert(next.end(), zero.begin(), zero.end());
      for (std::size_t a = 0; a < plus.size(); ++a)
        for (std::size_t b = 0; b < minus.size(); ++b) {
          RatVec w = axpy(scaled(minus[b], pp[a]), -mm[b], plus[a]);
          next.push_back(std::move(w));
        }
      rays = std::move(next);
    }
    processed.push_back(h);
    prune();
  }

  for (auto& l : lineality) {
    l = primitive_ray(l);
    // Lineality direction has free sign; normalize leading entry positive.
    for (const auto& x : l) {
      if (x > 0) break;
      if (x < 0) { l = scaled(l, Rat(-1)); break; }
    }
  }
  std::sort(lineality.begin(), lineality.end());
  detail::canonicalize_rays(rays);
  return {lineality, rays};
}

struct Containment {
  bool inside = false;
  double margin = 0.0;
};

/// Polyhedral cone given by rational generators.  The facet description is
/// computed on demand and cached; exact queries run through LP, float
/// queries through normalized facet margins.
class PolyhedralCone {
 public:
  PolyhedralCone() : dim_(0) {}

  static PolyhedralCone from_generators(int dim, std::vector<RatVec> gens) {
    PolyhedralCone c;
    c.dim_ = dim;
    for (const auto& g : gens) {
      if (int(g.size()) != dim) throw MathError("cone generator has wrong dimension");
      if (is_zero(g)) throw MathError("cone generator must be nonzero");
    }
    c.gens_ = std::move(gens);
    return c;
  }

  static PolyhedralCone from_generators_double(int dim, const std::vector<Vec>& gens,
                                               std::int64_t max_den = 1000000) {
    std::vector<RatVec> rg;
    rg.reserve(gens.size());
    for (const auto& g : gens) rg.push_back(to_rat_vec(g, max_den));
    return from_generators(dim, std::move(rg));
  }

  int dim() const { return dim_; }
  const std::vector<RatVec>& generators() const { return gens_; }

  bool full_dim() const { return rank_of_rows(gens_) == dim_; }

  bool pointed() const {
    for (const auto& g : gens_) {
      RatVec neg = scaled(g, Rat(-1));
      if (in_cone_hull(gens_, neg)) return false;
    }
    return true;
  }

  /// Facet data of this cone: the standard dual's rays are the facet
  /// normals; its lineality is nonempty exactly when the cone is not
  /// full-dimensional.
  const DualDescription& facets() const {
    if (!facets_) facets_ = dual_description(gens_, dim_);
    return *facets_;
  }

  bool contains(const RatVec& v) const {
    if (int(v.size()) != dim_) throw MathError("membership query has wrong dimension");
    return in_cone_hull(gens_, v);
  }

  Containment contains(const Vec& v, double tol = 1e-9) const {
    if (int(v.size()) != dim_) throw MathError("membership query has wrong dimension");
    double margin = float_margin(v);
    return {margin >= -tol, margin};
  }

  bool interior_contains(const RatVec& v) const {
    if (!full_dim()) throw MathError("interior test requires a full-dimensional cone");
    const auto& f = facets();
    for (const auto& n : f.rays)
      if (dot(n, v) <= 0) return false;
    return true;
  }

  Containment interior_contains(const Vec& v, double tol = 1e-9) const {
    if (!full_dim()) throw MathError("interior test requires a full-dimensional cone");
    double margin = float_margin(v);
    return {margin > tol, margin};
  }

  /// Signed margin of v against the facet description: negative outside,
  /// roughly the distance after scaling v to unit max-norm.
  double float_margin(const Vec& v) const {
    const auto& f = facets();
    double vmax = v.cwiseAbs().maxCoeff();
    Vec vn = vmax > 0 ? Vec(v / vmax) : v;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& n : f.rays) {
      Vec nd = to_vec(n);
      margin = std::min(margin, nd.dot(vn) / nd.norm());
    }
    for (const auto& l : f.lineality) {
      Vec ld = to_vec(l);
      margin = std::min(margin, -std::abs(ld.dot(vn)) / ld.norm());
    }
    if (!std::isfinite(margin)) margin = 1.0;  // whole space
    return margin;
  }

  /// Dual cone under the bilinear form <w, v> = w . (M v); identity when
  /// M is not supplied.  The result lives in the pairing's left slot.
  PolyhedralCone dual(const std::optional<RatMat>& pairing = std::nullopt) const {
    std::vector<RatVec> hs;
    hs.reserve(gens_.size());
    for (const auto& g : gens_) hs.push_back(pairing ? mat_vec(*pairing, g) : g);
    int ddim = pairing ? pairing->rows() : dim_;
    DualDescription dd = dual_description(hs, ddim);
    std::vector<RatVec> gens = dd.rays;
    for (const auto& l : dd.lineality) {
      gens.push_back(l);
      gens.push_back(scaled(l, Rat(-1)));
    }
    if (gens.empty()) {
      PolyhedralCone zero;
      zero.dim_ = ddim;
      return zero;
    }
    return from_generators(ddim, std::move(gens));
  }

  /// Extreme generator set: redundant generators removed, primitive form.
  std::vector<RatVec> minimal_generators() const {
    std::vector<RatVec> gens = gens_;
    detail::canonicalize_rays(gens);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<RatVec> rest;
        for (std::size_t j = 0; j < gens.size(); ++j)
          if (j != i) rest.push_back(gens[j]);
        if (!rest.empty() && in_cone_hull(rest, gens[i])) {
          gens.erase(gens.begin() + long(i));
          changed = true;
          break;
        }
      }
    }
    std::sort(gens.begin(), gens.end());
    return gens;
  }

  bool same_cone(const PolyhedralCone& other) const {
    if (dim_ != other.dim_) return false;
    for (const auto& g : gens_)
      if (!other.contains(g)) return false;
    for (const auto& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }

  Mat generator_matrix() const {
    Mat m(dim_, int(gens_.size()));
    for (std::size_t j = 0; j < gens_.size(); ++j) m.col(Eigen::Index(j)) = to_vec(gens_[j]);
    return m;
  }

 private:
  int dim_;
  std::vector<RatVec> gens_;
  mutable std::optional<DualDescription> facets_;
};

}  // namespace conezar
