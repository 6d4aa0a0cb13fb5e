#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace mixsing {

// Sparse real multivector on R^dim (dim <= 32); keys are bitmasks of basis covectors.
class Multivector {
 public:
  explicit Multivector(std::size_t dim) : dim_(dim) {}

  static Multivector scalar(std::size_t dim, double v);
  static Multivector covector(const std::vector<double>& coeffs);

  std::size_t dim() const { return dim_; }
  const std::map<std::uint32_t, double>& terms() const { return terms_; }
  void add(std::uint32_t mask, double v);
  double coefficient(std::uint32_t mask) const;
  double top() const;  // coefficient of e_0 ^ e_1 ^ ... ^ e_{dim-1}

  Multivector wedge(const Multivector& o) const;
  Multivector& operator+=(const Multivector& o);

 private:
  std::size_t dim_;
  std::map<std::uint32_t, double> terms_;
};

// Sign of e_A ^ e_B relative to e_{A|B}; 0 when A and B overlap.
int wedge_sign(std::uint32_t a, std::uint32_t b);

}  // namespace mixsing
