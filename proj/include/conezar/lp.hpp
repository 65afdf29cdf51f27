#pragma once

#include <optional>
#include <vector>

#include "conezar/linalg.hpp"
#include "conezar/rational.hpp"

namespace conezar {

/// Exact feasibility test for {x >= 0 : A x = b} via phase-one simplex
/// with Bland's rule.  Returns a feasible point when one exists.
inline std::optional<RatVec> lp_feasible_point(const RatMat& A, const RatVec& b) {
  int m = A.rows(), n = A.cols();
  if (m == 0) return RatVec(std::size_t(n), Rat(0));

  // Tableau over structural plus artificial columns; artificial basis.
  int total = n + m;
  RatMat T(m, total + 1);
  for (int i = 0; i < m; ++i) {
    Rat s = b[std::size_t(i)] < 0 ? Rat(-1) : Rat(1);
    for (int j = 0; j < n; ++j) T(i, j) = s * A(i, j);
    T(i, n + i) = 1;
    T(i, total) = s * b[std::size_t(i)];
  }
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis[std::size_t(i)] = n + i;

  // Reduced costs for minimizing the sum of artificials.
  RatVec cost(std::size_t(total), Rat(0));
  Rat obj = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < total; ++j) cost[std::size_t(j)] -= T(i, j);
    obj -= T(i, total);
  }
  for (int i = 0; i < m; ++i) cost[std::size_t(n + i)] = 0;

  auto pivot = [&](int row, int col) {
    Rat inv = Rat(1) / T(row, col);
    for (int j = 0; j <= total; ++j) T(row, j) *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || T(i, col) == 0) continue;
      Rat f = T(i, col);
      for (int j = 0; j <= total; ++j) T(i, j) -= f * T(row, j);
    }
    Rat f = cost[std::size_t(col)];
    if (f != 0) {
      for (int j = 0; j < total; ++j) cost[std::size_t(j)] -= f * T(row, j);
      obj -= f * T(row, total);
    }
    basis[std::size_t(row)] = col;
  };

  while (true) {
    int enter = -1;
    for (int j = 0; j < total; ++j)
      if (cost[std::size_t(j)] < 0) { enter = j; break; }  // Bland: lowest index
    if (enter < 0) break;
    int leave = -1;
    Rat best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) <= 0) continue;
      Rat ratio = T(i, total) / T(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[std::size_t(i)] < basis[std::size_t(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw MathError("phase-one LP unbounded (inconsistent tableau)");
    pivot(leave, enter);
  }

  if (obj != 0) return std::nullopt;  // artificials cannot be driven out: infeasible

  RatVec x(std::size_t(n), Rat(0));
  for (int i = 0; i < m; ++i)
    if (basis[std::size_t(i)] < n) x[std::size_t(basis[std::size_t(i)])] = T(i, total);
  return x;
}

/// Exact membership of v in the cone generated by `gens`.
inline bool in_cone_hull(const std::vector<RatVec>& gens, const RatVec& v) {
  if (is_zero(v)) return true;
  if (gens.empty()) return false;
  RatMat A = RatMat::from_cols(gens);
  return lp_feasible_point(A, v).has_value();
}

}  // namespace conezar
