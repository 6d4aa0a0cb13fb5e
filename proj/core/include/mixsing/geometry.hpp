#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mixsing/lp.hpp"
#include "mixsing/polynomial.hpp"

namespace mixsing {

using ComplexMatrix = std::vector<std::vector<ComplexRational>>;  // row-major

// k x n matrix whose columns are the frame vectors in C^k.
struct SiegelFrame {
  ComplexMatrix lambda;

  SiegelFrame() = default;
  explicit SiegelFrame(ComplexMatrix m);

  std::size_t k() const { return lambda.size(); }
  std::size_t n() const { return lambda.empty() ? 0 : lambda[0].size(); }
  // column i as a vector of R^{2k}: (Re l_1, Im l_1, Re l_2, ...)
  std::vector<Rational> column_real(std::size_t i) const;
  SiegelFrame columns(const std::vector<std::size_t>& subset) const;
  // 0 < 2k < n and complex rank k
  bool shape_ok() const;
};

std::size_t complex_rank(const ComplexMatrix& m);
ComplexRational determinant(ComplexMatrix m);

// Exact membership of 0 in the convex hull of the given columns.
struct HullMembership {
  bool contains_origin = false;
  std::vector<Rational> weights;     // t >= 0, sum t = 1, sum t_i col_i = 0
  std::vector<Rational> functional;  // c with <c, col_i> > 0 for all i, when 0 is outside
};
HullMembership origin_in_hull(const SiegelFrame& frame, const std::vector<std::size_t>& subset);

struct SubsetFunctional {
  std::vector<std::size_t> subset;
  std::vector<Rational> functional;
};

struct AdmissibilityReport {
  bool siegel = false;
  std::vector<Rational> weights;
  bool weakly_hyperbolic = false;
  std::vector<SubsetFunctional> functionals;
  std::optional<std::vector<std::size_t>> violating_subset;
  bool admissible() const { return siegel && weakly_hyperbolic; }
};

std::optional<std::vector<Rational>> is_siegel(const SiegelFrame& frame);
AdmissibilityReport is_admissible(const SiegelFrame& frame);

struct SubsetAdmissibility {
  std::vector<std::size_t> subset;
  bool siegel = false;
  bool weakly_hyperbolic = false;
};

struct StrongAdmissibilityReport {
  bool strongly_admissible = false;
  std::vector<SubsetAdmissibility> subsets;
  std::optional<std::vector<std::size_t>> failing_subset;
};

// Every column subset of size >= 2k is weakly hyperbolic, every such subset containing 0 in its hull
// is admissible, and the full frame is admissible.
StrongAdmissibilityReport is_strongly_admissible(const SiegelFrame& frame);

MixedMap build_siegel_map(const SiegelFrame& frame);

// sum_i lambda_i z_i^{a_i} zbar_{sigma(i)}; sigma is a 0-based permutation.
MixedPolynomial twisted_pham_brieskorn(const std::vector<std::uint32_t>& a, const std::vector<std::size_t>& sigma,
                                       const std::vector<ComplexRational>& lambda);

// z_j -> w_j^{a_j} wbar_j^{b_j}
struct MixedCovering {
  std::vector<std::uint32_t> a, b;

  MixedCovering() = default;
  MixedCovering(std::vector<std::uint32_t> a_, std::vector<std::uint32_t> b_);
  std::size_t nvars() const { return a.size(); }
  bool homogeneous() const;
};

MixedPolynomial pullback(const MixedCovering& phi, const MixedPolynomial& f);
MixedMap pullback(const MixedCovering& phi, const MixedMap& F);

// components sum_j lambda_ij z_j^{a_j}
MixedMap hamm_map(const ComplexMatrix& lambda, const std::vector<std::uint32_t>& a);
// components sum_j lambda_ij z_j^{a_j + b_j} zbar_j^{b_j}
MixedMap mixed_hamm_map(const ComplexMatrix& lambda, const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b);
// (1 - t) G + t F
MixedMap hamm_family(const MixedMap& G, const MixedMap& F, const Rational& t);

struct Minor {
  std::vector<std::size_t> columns;
  ComplexRational value;
};
std::vector<Minor> maximal_minors(const ComplexMatrix& lambda);

// Small nonzero integer entries with every k x k minor nonzero; deterministic in seed.
ComplexMatrix random_hamm_matrix(std::size_t k, std::size_t n, std::uint64_t seed);
// Strongly admissible frame with small Gaussian-integer entries; deterministic in seed.
SiegelFrame random_admissible_frame(std::size_t k, std::size_t n, std::uint64_t seed);

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t m);

}  // namespace mixsing
