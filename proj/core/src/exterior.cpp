#include "mixsing/exterior.hpp"

#include <bit>
#include <stdexcept>

namespace mixsing {

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  // count pairs (i in a, j in b) with i > j
  int swaps = 0;
  while (b) {
    std::uint32_t j = static_cast<std::uint32_t>(std::countr_zero(b));
    b &= b - 1;
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

Multivector Multivector::scalar(std::size_t dim, double v) {
  Multivector m(dim);
  m.add(0, v);
  return m;
}

Multivector Multivector::covector(const std::vector<double>& coeffs) {
  if (coeffs.size() > 32) throw std::invalid_argument("multivector dimension above 32");
  Multivector m(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) m.add(std::uint32_t{1} << i, coeffs[i]);
  return m;
}

void Multivector::add(std::uint32_t mask, double v) {
  if (v == 0.0) return;
  terms_[mask] += v;
}

double Multivector::coefficient(std::uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? 0.0 : it->second;
}

double Multivector::top() const {
  std::uint32_t full = dim_ == 32 ? 0xffffffffu : ((std::uint32_t{1} << dim_) - 1);
  return coefficient(full);
}

Multivector Multivector::wedge(const Multivector& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("wedge of multivectors of different dimension");
  Multivector out(dim_);
  for (const auto& [a, x] : terms_)
    for (const auto& [b, y] : o.terms_) {
      int s = wedge_sign(a, b);
      if (s) out.add(a | b, s * x * y);
    }
  return out;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  for (const auto& [m, v] : o.terms_) add(m, v);
  return *this;
}

}  // namespace mixsing
