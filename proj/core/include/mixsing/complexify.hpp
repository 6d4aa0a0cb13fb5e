#pragma once

#include "mixsing/polynomial.hpp"

namespace mixsing {

// Holomorphic polynomial in 2n variables (xi1_1..xi1_n, xi2_1..xi2_n) obtained from
// z_j -> xi1_j + i xi2_j and zbar_j -> xi1_j - i xi2_j.
MixedPolynomial complexify_polynomial(const MixedPolynomial& f);

// Real and imaginary parts of each component, complexified: 2k components in 2n variables,
// ordered (Re f1, Im f1, Re f2, ...). Coefficients are real rationals.
MixedMap complexify(const MixedMap& F);

}  // namespace mixsing
