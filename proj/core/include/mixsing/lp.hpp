#pragma once

#include <vector>

#include "mixsing/rational.hpp"

namespace mixsing {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Exact feasibility of { A x = b, x >= 0 } by two-phase simplex with Bland's rule.
// On infeasibility, `farkas` holds y with y^T A >= 0 componentwise and y^T b < 0.
struct LpFeasibility {
  bool feasible = false;
  std::vector<Rational> x;
  std::vector<Rational> farkas;
};

LpFeasibility solve_feasibility(const RationalMatrix& A, const std::vector<Rational>& b);

// Exact checks, independent of the solver.
bool verify_feasible_point(const RationalMatrix& A, const std::vector<Rational>& b, const std::vector<Rational>& x);
bool verify_farkas(const RationalMatrix& A, const std::vector<Rational>& b, const std::vector<Rational>& y);

}  // namespace mixsing
