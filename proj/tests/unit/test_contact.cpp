#include <doctest.h>

#include <random>

#include "mixsing/contact.hpp"
#include "mixsing/exterior.hpp"
#include "mixsing/geometry.hpp"
#include "mixsing/parser.hpp"
#include "oracles.hpp"

using namespace mixsing;

namespace {
const cplx I(0, 1);

MixedMap conj_map(const MixedMap& F) {
  std::vector<MixedPolynomial> c;
  for (const auto& f : F.components) c.push_back(conjugate(f));
  return MixedMap(F.nvars, c);
}
}  // namespace

TEST_CASE("coefficient A") {
  Eigen::MatrixXcd A = coeff_A({1, I});
  CHECK(std::abs(A(0, 0) - 2.0) < 1e-15);
  CHECK(std::abs(A(0, 1) - 2.0 * I) < 1e-15);
  CHECK(std::abs(A(1, 0) + 2.0 * I) < 1e-15);
  CHECK(std::abs(A(1, 1) - 2.0) < 1e-15);
  CHECK(coeff_A({0, 0, 0}).norm() == 0.0);
  std::mt19937_64 rng(61);
  Eigen::MatrixXcd R = coeff_A(oracle::random_point(rng, 4));
  CHECK((R - R.adjoint()).norm() < 1e-14);
}

TEST_CASE("coefficient B") {
  std::mt19937_64 rng(62);
  PointC p = oracle::random_point(rng, 3);
  MixedPolynomial h = parse_polynomial("z1^2+z2*z3+(2-i)*z3^3", 3);
  Eigen::MatrixXcd B = coeff_B(h, p);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(B(i, i).imag()) < 1e-14);
    CHECK(std::abs(B(i, i).real() - 0.5 * std::norm(evaluate(wirtinger_z(h, std::size_t(i)), p))) < 1e-12);
  }
  CHECK(std::abs(coeff_B(parse_polynomial("zb1", 1), {cplx(0.4, 0.2)})(0, 0) + 0.5) < 1e-15);
  MixedPolynomial f = oracle::random_poly(rng, 3, 3, 4);
  Eigen::MatrixXcd Bf = coeff_B(f, p), Bc = coeff_B(conjugate(f), p);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(Bf(i, i) + Bc(i, i)) < 1e-12);
}

TEST_CASE("coefficient C") {
  Eigen::MatrixXd C = coeff_C(parse_polynomial("z1^2+z2^2", 2), {1, I});
  CHECK(std::abs(C(0, 1) - 16.0) < 1e-12);
  CHECK(std::abs(C(1, 0) - 16.0) < 1e-12);
  std::mt19937_64 rng(63);
  for (int t = 0; t < 20; ++t) {
    PointC p = oracle::random_point(rng, 3);
    MixedPolynomial h = oracle::random_poly(rng, 3, 3, 4, true);
    Eigen::MatrixXd Ch = coeff_C(h, p), Cc = coeff_C(conjugate(h), p);
    for (int i = 0; i < 3; ++i) {
      CHECK(Ch(i, i) == doctest::Approx(0.0));
      for (int j = 0; j < 3; ++j) {
        CHECK(Ch(i, j) >= -1e-12);
        CHECK(Cc(i, j) <= 1e-12);
        CHECK(std::abs(Ch(i, j) - Ch(j, i)) < 1e-12);
      }
    }
  }
}

TEST_CASE("normalization constant") {
  CHECK(normalization_constant(3, 1) == 16.0);
  CHECK(normalization_constant(2, 1) == 4.0);
  CHECK(normalization_constant(4, 1) == 128.0);
}

TEST_CASE("D for a single component matches the pair sum") {
  MixedMap F = parse_map({"z1^2+z2^2+z3^2"}, 3);
  std::mt19937_64 rng(64);
  for (int t = 0; t < 20; ++t) {
    PointC p = oracle::random_point(rng, 3);
    const double d = D_oracle(F, p);
    CHECK(oracle::rel_err(d, D_pairs(F.components[0], p)) < 1e-9);
    CHECK(oracle::rel_err(d, D_closed(F, p)) < 1e-9);
    CHECK(d >= 0.0);
  }
}

TEST_CASE("wedge engine agrees with the determinant expansion") {
  std::mt19937_64 rng(65);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng() % 3;
    const std::size_t k = 1 + rng() % (n - 1);
    std::vector<MixedPolynomial> comps;
    for (std::size_t i = 0; i < k; ++i) comps.push_back(oracle::random_poly(rng, n, 3, 4));
    MixedMap F(n, comps);
    PointC p = oracle::random_point(rng, n);
    const double direct = oracle::wedge_top_by_determinants(F, p) / normalization_constant(n, k);
    const double d = D_oracle(F, p);
    CHECK(oracle::rel_err_scaled(d, direct, std::max(1.0, std::abs(direct))) < 1e-9);
    CHECK(oracle::rel_err_scaled(d, D_closed(F, p), std::max(1.0, std::abs(d))) < 1e-9);
  }
}

TEST_CASE("two components: closed form against the oracle") {
  MixedMap F = parse_map({"z1^2+z2^2+z3^2", "z1*z2*z3"}, 3);
  std::mt19937_64 rng(66);
  for (int t = 0; t < 20; ++t) {
    PointC p = oracle::random_point(rng, 3);
    const double d = D_oracle(F, p);
    CHECK(oracle::rel_err_scaled(d, D_closed(F, p), std::max(1.0, std::abs(d))) < 1e-9);
  }
}

TEST_CASE("constant component gives zero") {
  MixedMap F = parse_map({"z1^2+z2^2+z3^2", "3"}, 3);
  CHECK(D_oracle(F, {0.3, I, cplx(0.1, 0.5)}) == doctest::Approx(0.0));
  CHECK(D_closed(F, {0.3, I, cplx(0.1, 0.5)}) == doctest::Approx(0.0));
}

TEST_CASE("scaling and conjugation") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3;
    MixedPolynomial f = oracle::random_poly(rng, n, 3, 4);
    MixedMap F(n, {f});
    PointC p = oracle::random_point(rng, n);
    const double d = D_oracle(F, p);
    MixedMap S(n, {scale(f, ComplexRational(Rational(3, 2)))});
    CHECK(oracle::rel_err_scaled(D_oracle(S, p), 2.25 * d, std::max(1.0, std::abs(d))) < 1e-9);
    CHECK(oracle::rel_err_scaled(D_oracle(conj_map(F), p), -d, std::max(1.0, std::abs(d))) < 1e-9);
  }
}

TEST_CASE("wedge antisymmetry and the contact condition") {
  std::mt19937_64 rng(68);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a(6), b(6);
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = g(rng);
    Multivector u = Multivector::covector(a), v = Multivector::covector(b);
    Multivector uv = u.wedge(v), vu = v.wedge(u);
    for (const auto& [mask, c] : uv.terms()) CHECK(std::abs(c + vu.coefficient(mask)) < 1e-12);
    Multivector uu = u.wedge(u);
    for (const auto& [mask, c] : uu.terms()) CHECK(std::abs(c) < 1e-14);
  }
  // alpha ^ (dalpha)^(n-1) on the sphere
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 3;
    PointC p = oracle::random_point(rng, n);
    const double r = norm(p);
    for (auto& z : p) z /= r;
    std::vector<double> alpha(2 * n);
    Multivector dalpha(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      alpha[2 * j] = -2 * p[j].imag();
      alpha[2 * j + 1] = 2 * p[j].real();
      dalpha.add((1u << (2 * j)) | (1u << (2 * j + 1)), 4.0);
    }
    Multivector w = Multivector::covector(alpha);
    for (std::size_t i = 0; i + 1 < n; ++i) w = w.wedge(dalpha);
    CHECK(w.terms().size() > 0);
    double s = 0;
    for (const auto& [mask, c] : w.terms()) s += c * c;
    CHECK(s > 1e-6);
  }
}

TEST_CASE("pullback factors reassemble D") {
  MixedCovering phi({2, 2, 2}, {1, 1, 1});
  MixedMap F = parse_map({"z1+z2", "z1-z2"}, 3);
  MixedMap G = pullback(phi, F);
  std::mt19937_64 rng(69);
  for (int t = 0; t < 20; ++t) {
    PointC w = oracle::random_point(rng, 3);
    double sum = 0;
    for (const auto& pf : pullback_D_factor(F, phi, w)) {
      CHECK(pf.sign_factor == 9.0);
      CHECK(pf.value() >= 0.0);
      sum += pf.value();
    }
    const double d = D_oracle(G, w);
    CHECK(oracle::rel_err_scaled(sum, d, std::max(1.0, std::abs(d))) < 1e-9);
    CHECK(oracle::rel_err_scaled(sum, D_closed(G, w), std::max(1.0, std::abs(d))) < 1e-9);
  }
  MixedCovering anti({1, 1, 1}, {2, 2, 2});
  MixedMap F1 = parse_map({"z1^2+z2^2+z3^2"}, 3);
  PointC w = oracle::random_point(rng, 3);
  for (const auto& pf : pullback_D_factor(F1, anti, w)) CHECK(pf.value() <= 0.0);
  CHECK_THROWS(pullback_D_factor(F1, MixedCovering({1, 2, 1}, {2, 1, 2}), w));
}

TEST_CASE("sign scans on pullback links") {
  MixedMap F = parse_map({"z1^2+z2^2+z3^2"}, 3);
  DScanReport pos = holomorphic_like_scan(pullback(MixedCovering({2, 2, 2}, {1, 1, 1}), F), 0.5, 30, 0);
  CHECK(pos.verdict == "strictly_positive_on_samples");
  DScanReport neg = holomorphic_like_scan(pullback(MixedCovering({1, 1, 1}, {2, 2, 2}), F), 0.5, 30, 0);
  CHECK(neg.verdict == "strictly_negative_on_samples");
  DScanReport hol = holomorphic_like_scan(F, 0.5, 30, 0);
  for (double d : hol.values) CHECK(d >= 0.0);
  DScanOptions amb;
  amb.on_link = false;
  DScanReport ball = holomorphic_like_scan(F, 0.5, 30, 0, amb);
  CHECK(ball.samples == 30);
}
