#include "mixsing/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mixsing {

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
  Rational d = o.norm2();
  if (sgn(d) == 0) throw std::domain_error("division by zero");
  Rational r = (re * o.re + im * o.im) / d;
  Rational i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }

bool operator==(const ComplexRational& a, const ComplexRational& b) {
  return a.re == b.re && a.im == b.im;
}

ComplexRational pow(const ComplexRational& base, unsigned e) {
  ComplexRational result(1);
  ComplexRational b = base;
  while (e) {
    if (e & 1u) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational rational_from_string(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty rational");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    bool neg = s[0] == '-';
    std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
    dot = body.find('.');
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("bad decimal: " + raw);
    for (char ch : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("bad decimal: " + raw);
    mpz_class num(ip.empty() ? std::string("0") : ip);
    mpz_class scale = 1;
    for (char ch : fp) {
      num = num * 10 + (ch - '0');
      scale *= 10;
    }
    Rational r(num, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false, digits = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/' && !seen_slash && digits) {
      seen_slash = true;
      digits = false;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else {
      throw std::invalid_argument("bad rational: " + raw);
    }
  }
  if (!digits) throw std::invalid_argument("bad rational: " + raw);
  std::string t = s[0] == '+' ? s.substr(1) : s;
  Rational r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + raw);
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + raw);
  r.canonicalize();
  return r;
}

Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("non-finite value");
  Rational r(d);
  r.canonicalize();
  return r;
}

}  // namespace mixsing
