#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "mixsing/numeric.hpp"

namespace mixsing {

// Residual and Jacobian of a real system at x.
using ResidualFn = std::function<void(const RealVector& x, RealVector& r, RealMatrix& J)>;

struct SolveResult {
  RealVector x;
  double residual = 0.0;  // infinity norm
  int iterations = 0;
};

using Retraction = std::function<void(RealVector& x)>;

// Minimum-norm Gauss-Newton steps with Armijo backtracking. Trial points pass through `retract`
// (when given) before evaluation.
SolveResult gauss_newton(const ResidualFn& fn, RealVector x0, int max_iter, double stop_tol = 1e-15,
                         const Retraction& retract = {});

PointC random_sphere_point(std::mt19937_64& rng, std::size_t n, double r);
PointC random_ball_point(std::mt19937_64& rng, std::size_t n, double r);

struct SampleOptions {
  std::size_t workers = 1;
  int max_iter = 200;
  double accept_tol = 1e-9;
  std::size_t attempt_factor = 20;  // give up after attempt_factor * count starts
};

struct LinkSample {
  double radius = 0.0;
  std::vector<PointC> points;
  std::size_t attempts = 0;
  double acceptance_ratio = 0.0;
  bool failed() const { return points.empty(); }
};

// Points of {F = 0, |z| = r}. Start points are uniform on the sphere; stream (seed, attempt).
LinkSample sample_link(const MixedMap& F, double r, std::size_t count, std::uint64_t seed, const SampleOptions& opt = {});

// Points of {F = target(attempt), |z| = r} for a caller-chosen target per attempt, or, when
// `modulus` is set, of {|F| = modulus, |z| = r}. In modulus mode accept_tol is relative to the modulus.
struct FiberTarget {
  std::function<std::vector<cplx>(std::mt19937_64&)> target;
  double modulus = -1.0;
};
LinkSample sample_fiber(const MixedMap& F, double r, const FiberTarget& fiber, std::size_t count, std::uint64_t seed,
                        const SampleOptions& opt = {});

}  // namespace mixsing
