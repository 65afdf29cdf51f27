#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "conezar/rational.hpp"

namespace conezar {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Dense rational matrix, row major.  Sized for desk-scale problems
/// (class groups, dual cones, interpolation systems), not bulk numerics.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  RatVec row(int i) const {
    RatVec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  RatVec col(int j) const {
    RatVec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMat from_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return RatMat(0, 0);
    RatMat m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[std::size_t(i)][std::size_t(j)];
    return m;
  }

  static RatMat from_cols(const std::vector<RatVec>& cols) {
    if (cols.empty()) return RatMat(0, 0);
    RatMat m(int(cols[0].size()), int(cols.size()));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = cols[std::size_t(j)][std::size_t(i)];
    return m;
  }

  RatMat transposed() const {
    RatMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec mat_vec(const RatMat& m, const RatVec& x) {
  RatVec y(std::size_t(m.rows()), Rat(0));
  for (int i = 0; i < m.rows(); ++i) {
    Rat s = 0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[std::size_t(j)];
    y[std::size_t(i)] = s;
  }
  return y;
}

inline bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline RatVec scaled(const RatVec& v, const Rat& t) {
  RatVec r = v;
  for (auto& x : r) x *= t;
  return r;
}

inline RatVec axpy(const RatVec& x, const Rat& t, const RatVec& y) {
  RatVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += t * y[i];
  return r;
}

/// Row echelon reduction in place.  Returns pivot column indices.
/// `column_order` permutes the column scan so callers can steer which
/// coordinates become pivots (class-group basis selection relies on this).
inline std::vector<int> rref(RatMat& m, const std::vector<int>* column_order = nullptr) {
  std::vector<int> cols(static_cast<std::size_t>(m.cols()));
  for (int j = 0; j < m.cols(); ++j) cols[std::size_t(j)] = j;
  if (column_order) cols = *column_order;

  std::vector<int> pivots;
  int r = 0;
  for (int cj : cols) {
    if (r >= m.rows()) break;
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, cj) != 0) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Rat inv = Rat(1) / m(r, cj);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, cj) == 0) continue;
      Rat f = m(i, cj);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(cj);
    ++r;
  }
  return pivots;
}

inline int rank(RatMat m) { return int(rref(m).size()); }

inline int rank_of_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  RatMat m = RatMat::from_rows(rows);
  return rank(m);
}

/// Rank of the affine hull of a point set.
inline int affine_rank(const std::vector<RatVec>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<RatVec> diffs;
  diffs.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVec d = pts[i];
    for (std::size_t j = 0; j < d.size(); ++j) d[j] -= pts[0][j];
    diffs.push_back(std::move(d));
  }
  return rank_of_rows(diffs);
}

/// Solves A x = b exactly.  Empty optional when inconsistent; for
/// underdetermined systems one particular solution is returned.
inline std::optional<RatVec> solve(const RatMat& A, const RatVec& b) {
  RatMat m(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) m(i, j) = A(i, j);
    m(i, A.cols()) = b[std::size_t(i)];
  }
  std::vector<int> order(static_cast<std::size_t>(A.cols()));
  for (int j = 0; j < A.cols(); ++j) order[std::size_t(j)] = j;
  auto pivots = rref(m, &order);
  // Inconsistent iff a pivot would land in the augmented column.
  for (int i = 0; i < m.rows(); ++i) {
    bool all_zero = true;
    for (int j = 0; j < A.cols(); ++j)
      if (m(i, j) != 0) { all_zero = false; break; }
    if (all_zero && m(i, A.cols()) != 0) return std::nullopt;
  }
  RatVec x(std::size_t(A.cols()), Rat(0));
  for (std::size_t k = 0; k < pivots.size(); ++k)
    x[std::size_t(pivots[k])] = m(int(k), A.cols());
  return x;
}

inline std::optional<RatMat> inverse(const RatMat& A) {
  if (A.rows() != A.cols()) return std::nullopt;
  int n = A.rows();
  RatMat m(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = A(i, j);
    m(i, n + i) = 1;
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) order[std::size_t(j)] = j;
  auto pivots = rref(m, &order);
  if (int(pivots.size()) != n) return std::nullopt;
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
  return inv;
}

inline Rat det(RatMat m) {
  if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
  int n = m.rows();
  Rat d = 1;
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c) != 0) { sel = i; break; }
    if (sel < 0) return 0;
    if (sel != c) {
      for (int j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Rat inv = Rat(1) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

/// Basis of the right nullspace {x : A x = 0}.
inline std::vector<RatVec> nullspace(RatMat A) {
  int n = A.cols();
  auto pivots = rref(A);
  std::vector<bool> is_pivot(std::size_t(n), false);
  for (int p : pivots) is_pivot[std::size_t(p)] = true;
  std::vector<RatVec> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[std::size_t(f)]) continue;
    RatVec v(std::size_t(n), Rat(0));
    v[std::size_t(f)] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      // Row k has leading 1 in column pivots[k].
      v[std::size_t(pivots[k])] = -A(int(k), f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Scales a rational ray to its primitive integer representative.
/// Direction is preserved (positive scaling only).
inline RatVec primitive_ray(const RatVec& v) {
  BigInt l = 1;
  for (const auto& x : v) {
    BigInt d = boost::multiprecision::denominator(x);
    l = boost::multiprecision::lcm(l, d);
  }
  std::vector<BigInt> ints;
  ints.reserve(v.size());
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt n = boost::multiprecision::numerator(x * Rat(l));
    ints.push_back(n);
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(n));
  }
  RatVec out(v.size(), Rat(0));
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(ints[i] / g);
  return out;
}

inline Vec to_vec(const RatVec& v) {
  Vec out(Eigen::Index(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[Eigen::Index(i)] = to_double(v[i]);
  return out;
}

inline RatVec to_rat_vec(const Vec& v, std::int64_t max_den = 1000000) {
  RatVec out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[std::size_t(i)] = rat_from_double(v[i], max_den);
  return out;
}

inline Mat to_mat(const RatMat& m) {
  Mat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

}  // namespace conezar
