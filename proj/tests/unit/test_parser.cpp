#include <doctest.h>

#include <random>

#include "mixsing/parser.hpp"
#include "oracles.hpp"

using namespace mixsing;

namespace {

MixedMonomial term(ComplexRational c, Exponent mu, Exponent nu) { return {std::move(c), std::move(mu), std::move(nu)}; }

const ParseDiagnostic& diag_of(const std::variant<MixedPolynomial, ParseDiagnostic>& r) {
  REQUIRE(std::holds_alternative<ParseDiagnostic>(r));
  return std::get<ParseDiagnostic>(r);
}

}  // namespace

TEST_CASE("parse sum of holomorphic and conjugate squares") {
  MixedPolynomial f = parse_polynomial("z1^2 + zb2^2", 2);
  REQUIRE(f.size() == 2);
  // sorted by (mu, nu): (0,0),(0,2) before (2,0),(0,0)
  CHECK(f.terms()[0].mu == Exponent{0, 0});
  CHECK(f.terms()[0].nu == Exponent{0, 2});
  CHECK(f.terms()[1].mu == Exponent{2, 0});
  CHECK(f.terms()[1].nu == Exponent{0, 0});
  CHECK(f.terms()[0].coeff == ComplexRational(1));
}

TEST_CASE("parse modulus squared") {
  MixedPolynomial f = parse_polynomial("z1*zb1", 1);
  REQUIRE(f.size() == 1);
  CHECK(f.terms()[0].mu == Exponent{1});
  CHECK(f.terms()[0].nu == Exponent{1});
}

TEST_CASE("parse expands powers of sums") {
  MixedPolynomial f = parse_polynomial("z1 + (z2+z3)^2", 3);
  MixedPolynomial g = parse_polynomial("z1 + z2^2 + 2*z2*z3 + z3^2", 3);
  CHECK(f == g);
  CHECK(parse_polynomial("(z2+z3)^2", 3) == parse_polynomial("z2^2+2*z2*z3+z3^2", 3));
}

TEST_CASE("parse map") {
  MixedMap F = parse_map({"z1+(z2+z3)^2", "z1^2+z2^2+z3^2"}, 3);
  CHECK(F.k() == 2);
  CHECK(F.nvars == 3);
  auto empty = try_parse_map({}, 1);
  REQUIRE(std::holds_alternative<ParseDiagnostic>(empty));
  CHECK(std::get<ParseDiagnostic>(empty).kind == DiagnosticKind::arity);
  MixedMap twice = parse_map({"z1", "z1"}, 1);
  CHECK(twice.k() == 2);
}

TEST_CASE("literals") {
  CHECK(parse_polynomial("i", 1) == MixedPolynomial::constant(1, ComplexRational::imag_unit()));
  CHECK(parse_polynomial("3/6", 1) == MixedPolynomial::constant(1, Rational(1, 2)));
  CHECK(parse_polynomial("(1/2+3i)", 1) == MixedPolynomial::constant(1, {Rational(1, 2), Rational(3)}));
  CHECK(parse_polynomial("(-1-i)", 1) == MixedPolynomial::constant(1, {Rational(-1), Rational(-1)}));
  CHECK(parse_polynomial("(0+2i)", 1) == MixedPolynomial::constant(1, {Rational(0), Rational(2)}));
  CHECK(parse_polynomial("(2*i)", 1) == MixedPolynomial::constant(1, {Rational(0), Rational(2)}));
  CHECK_THROWS_AS(parse_polynomial("(2i)", 1), ParseError);
  CHECK(parse_polynomial("-z1", 1) == -MixedPolynomial::variable(1, 0));
  CHECK(parse_polynomial("z1-z1", 1).is_zero());
}

TEST_CASE("precedence") {
  CHECK(parse_polynomial("2*z1^2", 1) == scale(pow(MixedPolynomial::variable(1, 0), 2), 2));
  CHECK(parse_polynomial("-z1^2", 1) == -pow(MixedPolynomial::variable(1, 0), 2));
  CHECK(parse_polynomial("z1+z1*z1", 1) == MixedPolynomial::variable(1, 0) + pow(MixedPolynomial::variable(1, 0), 2));
}

TEST_CASE("diagnostics carry kind and position") {
  auto out_of_range = diag_of(try_parse_polynomial("z1 + z3", 2));
  CHECK(out_of_range.kind == DiagnosticKind::arity);
  CHECK(out_of_range.position == 5);
  CHECK(diag_of(try_parse_polynomial("z1^-2", 1)).kind == DiagnosticKind::exponent);
  CHECK(diag_of(try_parse_polynomial("1/0", 1)).kind == DiagnosticKind::coefficient);
  CHECK(diag_of(try_parse_polynomial("z1 +", 1)).kind == DiagnosticKind::syntax);
  CHECK(diag_of(try_parse_polynomial("(z1", 1)).position <= 3);
  CHECK(diag_of(try_parse_polynomial("", 1)).kind == DiagnosticKind::syntax);
  CHECK(diag_of(try_parse_polynomial("z0", 1)).kind == DiagnosticKind::arity);
  CHECK_THROWS_AS(parse_polynomial("z1 z2", 2), ParseError);
}

TEST_CASE("format") {
  CHECK(format_polynomial(MixedPolynomial(2)) == "0");
  MixedPolynomial f(2, {term({Rational(1, 2), Rational(3)}, {0, 1}, {0, 2})});
  CHECK(format_polynomial(f) == "(1/2+3i)*z2*zb2^2");
  MixedPolynomial g = parse_polynomial("z1^3*zb1", 1);
  CHECK(parse_polynomial(format_polynomial(g), 1) == g);
  CHECK(format_polynomial(parse_polynomial("z1-2*zb1", 1)) == "-2*zb1+z1");
}

TEST_CASE("round trip on random canonical polynomials") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 4;
    MixedPolynomial f = oracle::random_poly(rng, n, 5, 1 + rng() % 6);
    std::string s = format_polynomial(f);
    auto back = try_parse_polynomial(s, n);
    REQUIRE_MESSAGE(std::holds_alternative<MixedPolynomial>(back), s);
    CHECK(std::get<MixedPolynomial>(back) == f);
  }
}
