#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace mixsing {

using Rational = mpq_class;

// Exact Gaussian rational re + i*im.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() : re(0), im(0) {}
  ComplexRational(long v) : re(v), im(0) {}  // NOLINT
  ComplexRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexRational imag_unit() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  ComplexRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  ComplexRational& operator/=(const ComplexRational& o);
};

ComplexRational operator+(ComplexRational a, const ComplexRational& b);
ComplexRational operator-(ComplexRational a, const ComplexRational& b);
ComplexRational operator*(ComplexRational a, const ComplexRational& b);
ComplexRational operator/(ComplexRational a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a);
bool operator==(const ComplexRational& a, const ComplexRational& b);
inline bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

ComplexRational pow(const ComplexRational& base, unsigned e);

// "p" or "p/q", canonical form.
std::string rational_to_string(const Rational& q);
// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.25". Throws std::invalid_argument.
Rational rational_from_string(const std::string& s);
// Exact value of a finite double.
Rational rational_from_double(double d);

}  // namespace mixsing
