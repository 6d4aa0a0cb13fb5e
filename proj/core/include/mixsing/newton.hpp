#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mixsing/polynomial.hpp"

namespace mixsing {

using Weight = std::vector<std::uint32_t>;

// Distinct mu + nu over the terms, sorted.
std::vector<Exponent> radial_support(const MixedPolynomial& f);

// Minimum of <P, mu + nu> over the support. Throws on the zero polynomial.
std::uint64_t radial_degree(const MixedPolynomial& f, const Weight& P);

// Terms of f minimizing <P, mu + nu>. Throws on the zero polynomial.
MixedPolynomial face_function(const MixedPolynomial& f, const Weight& P);
// Same, but the zero polynomial maps to itself.
MixedPolynomial face_or_zero(const MixedPolynomial& f, const Weight& P);
MixedMap face_map(const MixedMap& F, const Weight& P);

bool is_convenient(const MixedPolynomial& f);

struct PurelyMixedResult {
  bool purely_mixed = false;
  // for each term, a variable i with mu_i >= 1, nu_i >= 1, mu_i + nu_i >= 3 (when one exists)
  std::vector<std::optional<std::size_t>> witnesses;
};
PurelyMixedResult purely_mixed(const MixedPolynomial& f);

// Strictly positive primitive integer normals of the compact facets of conv(S) + R^n_{>=0}.
std::vector<Weight> compact_facet_normals(const std::vector<Exponent>& support);

struct WeightClass {
  Weight P;
  std::vector<MixedPolynomial> faces;
};

struct WeightEnumeration {
  std::uint32_t bound = 8;
  std::vector<WeightClass> weights;
};

// Box {1..bound}^n plus compact facet normals (n <= 4), one representative per distinct face tuple,
// sorted by P. Zero components contribute zero faces.
WeightEnumeration enumerate_weights(const MixedMap& F, std::uint32_t bound = 8);

}  // namespace mixsing
