#include "mixsing/lp.hpp"

#include <stdexcept>

namespace mixsing {

LpFeasibility solve_feasibility(const RationalMatrix& A, const std::vector<Rational>& b) {
  const std::size_t m = A.size();
  if (b.size() != m) throw std::invalid_argument("lp: row count mismatch");
  const std::size_t n = m ? A[0].size() : 0;
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("lp: ragged matrix");

  // tableau [A | I | b] with rows flipped so that b >= 0
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols, Rational(0)));
  std::vector<int> flip(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    flip[i] = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = flip[i] * A[i][j];
    T[i][n + i] = 1;
    T[i][cols - 1] = flip[i] * b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  auto cost = [&](std::size_t j) { return j >= n ? 1 : 0; };

  for (;;) {
    // Bland: lowest-index column with negative reduced cost
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols && enter == cols; ++j) {
      Rational rc = cost(j);
      for (std::size_t r = 0; r < m; ++r)
        if (cost(basis[r])) rc -= T[r][j];
      if (sgn(rc) < 0) enter = j;
    }
    if (enter == cols) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(T[r][enter]) <= 0) continue;
      Rational ratio = T[r][cols - 1] / T[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) throw std::logic_error("lp: phase one unbounded");

    Rational piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || sgn(T[r][enter]) == 0) continue;
      Rational f = T[r][enter];
      for (std::size_t j = 0; j < cols; ++j) T[r][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }

  Rational objective = 0;
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] >= n) objective += T[r][cols - 1];

  LpFeasibility out;
  if (sgn(objective) == 0) {
    out.feasible = true;
    out.x.assign(n, Rational(0));
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] < n) out.x[basis[r]] = T[r][cols - 1];
    return out;
  }

  // phase-one duals y = c_B B^{-1}; B^{-1} sits in the artificial columns
  out.farkas.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    Rational y = 0;
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] >= n) y += T[r][n + i];
    out.farkas[i] = -flip[i] * y;
  }
  return out;
}

bool verify_feasible_point(const RationalMatrix& A, const std::vector<Rational>& b, const std::vector<Rational>& x) {
  for (const auto& v : x)
    if (sgn(v) < 0) return false;
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += A[i][j] * x[j];
    if (s != b[i]) return false;
  }
  return true;
}

bool verify_farkas(const RationalMatrix& A, const std::vector<Rational>& b, const std::vector<Rational>& y) {
  if (y.size() != A.size()) return false;
  const std::size_t n = A.empty() ? 0 : A[0].size();
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < A.size(); ++i) s += y[i] * A[i][j];
    if (sgn(s) < 0) return false;
  }
  Rational yb = 0;
  for (std::size_t i = 0; i < b.size(); ++i) yb += y[i] * b[i];
  return sgn(yb) < 0;
}

}  // namespace mixsing
