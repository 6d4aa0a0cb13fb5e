#include <doctest.h>

#include <random>

#include "mixsing/parser.hpp"
#include "oracles.hpp"

using namespace mixsing;

TEST_CASE("evaluation examples") {
  CHECK(std::abs(evaluate(parse_polynomial("z1*zb1", 1), {cplx(3, 4)}) - cplx(25, 0)) < 1e-12);
  CHECK(std::abs(evaluate(parse_polynomial("z1+(z2+z3)^2", 3), {0, 1, -1})) < 1e-15);
  CHECK(std::abs(evaluate(parse_polynomial("z1*zb1+i*z2*zb2+(-1-i)*z3*zb3", 3), {1, 1, 1})) < 1e-15);
}

TEST_CASE("double evaluation matches exact evaluation at rational points") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-8, 8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 4;
    MixedPolynomial f = oracle::random_poly(rng, n, 5, 6);
    std::vector<ComplexRational> z;
    PointC p;
    for (std::size_t j = 0; j < n; ++j) {
      ComplexRational c{Rational(num(rng), 8), Rational(num(rng), 8)};
      c.re.canonicalize();
      c.im.canonicalize();
      z.push_back(c);
      p.push_back(c.to_complex());
    }
    cplx exact = oracle::exact_value(f, z).to_complex();
    CHECK(std::abs(evaluate(f, p) - exact) <= 1e-12 * (1 + std::abs(exact)));
  }
}

TEST_CASE("evaluation is multiplicative") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    MixedPolynomial f = oracle::random_poly(rng, 3, 3, 4), g = oracle::random_poly(rng, 3, 3, 4);
    PointC p = oracle::random_point(rng, 3);
    cplx a = evaluate(f * g, p), b = evaluate(f, p) * evaluate(g, p);
    CHECK(std::abs(a - b) <= 1e-9 * (1 + std::abs(b)));
  }
}

TEST_CASE("real jacobian examples") {
  MixedMap F = parse_map({"z1"}, 1);
  RealMatrix J = real_jacobian(F, {cplx(0.3, -2)});
  CHECK((J - RealMatrix::Identity(2, 2)).norm() < 1e-15);
  MixedMap G = parse_map({"z1*zb1"}, 1);
  CHECK(real_jacobian(G, {0}).norm() == 0.0);
}

TEST_CASE("real jacobian matches central differences") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    MixedMap F(3, {oracle::random_poly(rng, 3, 4, 5), oracle::random_poly(rng, 3, 4, 5)});
    PointC p = oracle::random_point(rng, 3);
    RealMatrix J = real_jacobian(F, p), D = oracle::fd_jacobian(F, p);
    CHECK((J - D).norm() <= 1e-6 * std::max(1.0, J.norm()));
  }
}

TEST_CASE("real/complex coordinate packing") {
  PointC p{cplx(1, 2), cplx(-3, 4)};
  RealVector x = to_real(p);
  CHECK(x[0] == 1);
  CHECK(x[1] == 2);
  CHECK(x[2] == -3);
  CHECK(to_complex(x) == p);
}

TEST_CASE("smallest singular value conventions") {
  RealMatrix wide(1, 2);
  wide << 1, 0;
  SmallestSingular s = smallest_singular(wide);
  CHECK(s.sigma_min == doctest::Approx(1.0));
  CHECK(std::abs(s.right_vector[0]) < 1e-12);
  RealMatrix tall(2, 1);
  tall << 0, 0;
  CHECK(rank_deficient(smallest_singular(tall), 1e-8));
}
