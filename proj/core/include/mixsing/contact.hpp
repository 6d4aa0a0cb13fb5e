#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mixsing/geometry.hpp"
#include "mixsing/numeric.hpp"

namespace mixsing {

// A_ij = 2 conj(z_i) z_j
Eigen::MatrixXcd coeff_A(const PointC& p);
// B_ij = (f_{z_i} conj(f_{z_j}) - conj(f_{zbar_i}) f_{zbar_j}) / 2
Eigen::MatrixXcd coeff_B(const MixedPolynomial& f, const PointC& p);
// C_ij = |conj(z_i) f_{z_j} - conj(z_j) f_{z_i}|^2 - |z_i f_{zbar_j} - z_j f_{zbar_i}|^2
Eigen::MatrixXd coeff_C(const MixedPolynomial& f, const PointC& p);

// Volume coefficient of drho ^ alpha ^ (dalpha)^(n-k-1) ^ dRe f1 ^ dIm f1 ^ ... divided by normalization(n, k).
double D_oracle(const MixedMap& F, const PointC& p);
// Volume coefficient produced by a configuration whose D value is 1 (computed with the same wedge engine).
double normalization_constant(std::size_t n, std::size_t k);

// Sum over (k+1)-subsets J of det[ d_rho^(1,0); d_rho^(0,1); df^1; d conj f^1; ... ] on the columns (dz_a, dzbar_a), a in J.
double D_closed(const MixedMap& F, const PointC& p);
// k = 1: sum_{i<j} C_ij.
double D_pairs(const MixedPolynomial& f, const PointC& p);

struct PullbackFactor {
  std::vector<std::size_t> subset;  // 0-based
  double sign_factor = 0.0;         // (a^2 - b^2)^k
  double modulus_factor = 0.0;      // prod_{j in J} |w_j|^2
  double determinant_factor = 0.0;  // |det[1 ... 1; w_j^{a-1} wbar_j^{b-1} f^l_{z_j}(phi(w))]|^2
  double value() const { return sign_factor * modulus_factor * determinant_factor; }
};

// F holomorphic, phi homogeneous. Summing value() over the result gives D_closed(phi^* F, w).
std::vector<PullbackFactor> pullback_D_factor(const MixedMap& F, const MixedCovering& phi, const PointC& w);

struct DScanOptions {
  std::size_t workers = 1;
  bool on_link = true;
  double sigma_tol = 1e-8;
};

struct DScanReport {
  std::size_t samples = 0;
  std::size_t excluded = 0;
  double min_D = 0.0;
  double max_D = 0.0;
  std::size_t violations = 0;
  std::string verdict;  // strictly_positive_on_samples | strictly_negative_on_samples | nonnegative_on_samples |
                        // nonpositive_on_samples | mixed_sign | all_zero | sampling_failure
  double acceptance_ratio = 0.0;
  std::vector<PointC> points;
  std::vector<double> values;
  std::vector<PointC> excluded_points;
  double radius = 0.0;
  std::uint64_t seed = 0;
};

DScanReport holomorphic_like_scan(const MixedMap& F, double r, std::size_t samples, std::uint64_t seed,
                                  const DScanOptions& opt = {});
// Shared verdict logic for a list of D values.
void classify_D(DScanReport& rep);

}  // namespace mixsing
