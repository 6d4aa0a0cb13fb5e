#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixsing/rational.hpp"

namespace mixsing {

using Exponent = std::vector<std::uint32_t>;

// Thrown for contract violations on polynomial operations (nvars mismatch, bad index, ...).
class PolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// coeff * z^mu * zbar^nu
struct MixedMonomial {
  ComplexRational coeff;
  Exponent mu;
  Exponent nu;

  std::uint32_t degree() const;
  std::uint32_t radial(std::size_t j) const { return mu[j] + nu[j]; }
};

// Terms are kept merged, nonzero and sorted by (mu, nu).
class MixedPolynomial {
 public:
  MixedPolynomial() = default;
  explicit MixedPolynomial(std::size_t nvars) : nvars_(nvars) {}
  MixedPolynomial(std::size_t nvars, std::vector<MixedMonomial> terms);

  static MixedPolynomial constant(std::size_t nvars, const ComplexRational& c);
  static MixedPolynomial variable(std::size_t nvars, std::size_t j);       // z_{j+1}
  static MixedPolynomial conj_variable(std::size_t nvars, std::size_t j);  // zbar_{j+1}
  static MixedPolynomial monomial(const ComplexRational& c, Exponent mu, Exponent nu);

  std::size_t nvars() const { return nvars_; }
  const std::vector<MixedMonomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::uint32_t degree() const;
  bool is_holomorphic() const;
  bool is_real_valued() const;  // equals its conjugate

  MixedPolynomial& operator+=(const MixedPolynomial& o);
  MixedPolynomial& operator-=(const MixedPolynomial& o);
  MixedPolynomial& operator*=(const MixedPolynomial& o);

  friend bool operator==(const MixedPolynomial& a, const MixedPolynomial& b);

 private:
  std::size_t nvars_ = 0;
  std::vector<MixedMonomial> terms_;
};

MixedPolynomial operator+(MixedPolynomial a, const MixedPolynomial& b);
MixedPolynomial operator-(MixedPolynomial a, const MixedPolynomial& b);
MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b);
MixedPolynomial operator-(const MixedPolynomial& a);
MixedPolynomial scale(const MixedPolynomial& f, const ComplexRational& c);
MixedPolynomial pow(const MixedPolynomial& f, unsigned e);

// Swaps mu and nu and conjugates coefficients: the polynomial of conj(f(z)).
MixedPolynomial conjugate(const MixedPolynomial& f);

MixedPolynomial wirtinger_z(const MixedPolynomial& f, std::size_t j);
MixedPolynomial wirtinger_zbar(const MixedPolynomial& f, std::size_t j);

// Drops every term touching a variable outside `subset` (0-based indices). nvars is kept.
MixedPolynomial restrict_to(const MixedPolynomial& f, const std::vector<std::size_t>& subset);

// Pads to more variables (new ones appended at the end).
MixedPolynomial embed(const MixedPolynomial& f, std::size_t nvars);

// Removes variable j, which must not occur in f.
MixedPolynomial drop_variable(const MixedPolynomial& f, std::size_t j);

struct MixedMap {
  std::size_t nvars = 0;
  std::vector<MixedPolynomial> components;

  MixedMap() = default;
  MixedMap(std::size_t n, std::vector<MixedPolynomial> comps);

  std::size_t k() const { return components.size(); }
  bool is_holomorphic() const;
  friend bool operator==(const MixedMap& a, const MixedMap& b) = default;
};

MixedMap conjugate(const MixedMap& F);
MixedMap restrict_to(const MixedMap& F, const std::vector<std::size_t>& subset);
MixedMap drop_variable(const MixedMap& F, std::size_t j);

// All nonempty subsets of {0..n-1}, in order of increasing bitmask.
std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n);

}  // namespace mixsing
