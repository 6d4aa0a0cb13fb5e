#include "mixsing/complexify.hpp"

#include <map>

namespace mixsing {

MixedPolynomial complexify_polynomial(const MixedPolynomial& f) {
  const std::size_t n = f.nvars();
  const std::size_t N = 2 * n;
  const ComplexRational I = ComplexRational::imag_unit();

  std::vector<MixedPolynomial> zsub, zbsub;
  for (std::size_t j = 0; j < n; ++j) {
    MixedPolynomial a = MixedPolynomial::variable(N, j);
    MixedPolynomial b = scale(MixedPolynomial::variable(N, n + j), I);
    zsub.push_back(a + b);
    zbsub.push_back(a - b);
  }

  std::map<std::pair<std::size_t, unsigned>, MixedPolynomial> cache;
  auto power = [&](bool conj_side, std::size_t j, unsigned e) -> const MixedPolynomial& {
    auto key = std::make_pair(conj_side ? n + j : j, e);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, pow(conj_side ? zbsub[j] : zsub[j], e)).first;
    return it->second;
  };

  MixedPolynomial out(N);
  for (const auto& t : f.terms()) {
    MixedPolynomial term = MixedPolynomial::constant(N, t.coeff);
    for (std::size_t j = 0; j < n; ++j) {
      if (t.mu[j]) term *= power(false, j, t.mu[j]);
      if (t.nu[j]) term *= power(true, j, t.nu[j]);
    }
    out += term;
  }
  return out;
}

MixedMap complexify(const MixedMap& F) {
  const ComplexRational half(Rational(1, 2));
  const ComplexRational inv_two_i(Rational(0), Rational(-1, 2));  // 1/(2i)
  std::vector<MixedPolynomial> comps;
  for (const auto& f : F.components) {
    MixedPolynomial fc = conjugate(f);
    comps.push_back(complexify_polynomial(scale(f + fc, half)));
    comps.push_back(complexify_polynomial(scale(f - fc, inv_two_i)));
  }
  return MixedMap(2 * F.nvars, std::move(comps));
}

}  // namespace mixsing
