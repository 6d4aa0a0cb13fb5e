#include <doctest.h>

#include <random>

#include "mixsing/geometry.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/nondegen.hpp"
#include "mixsing/parser.hpp"
#include "oracles.hpp"

using namespace mixsing;

namespace {
MixedMap pndnd() { return parse_map({"z1+(z2+z3)^2", "z1^2+z2^2+z3^2"}, 3); }

double relative_sigma_min(const RealMatrix& m) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  auto s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0) return 0.0;
  return s[s.size() - 1] / s[0];
}

// rank of the real Jacobian, independent of the relation-matrix route
bool jacobian_deficient(const MixedMap& F, const PointC& p) {
  RealMatrix J = real_jacobian(F, p);
  Eigen::JacobiSVD<RealMatrix> svd(J);
  auto s = svd.singularValues();
  if (s[0] < 1e-12) return true;
  return s.size() < Eigen::Index(2 * F.k()) || s[2 * F.k() - 1] < 1e-8 * s[0];
}
}  // namespace

TEST_CASE("mixed singular points") {
  CHECK(mixed_singular_at(parse_map({"z1^2+zb2^2"}, 2), {0, 0}).singular);
  CHECK(!mixed_singular_at(parse_map({"z1"}, 1), {cplx(0.3, 1)}).singular);

  MixedMap sq = parse_map({"z1*zb1"}, 1);
  std::mt19937_64 rng(51);
  for (int t = 0; t < 10; ++t) {
    PointC p = oracle::random_point(rng, 1);
    SingularityTest st = mixed_singular_at(sq, p);
    CHECK(st.singular);
    REQUIRE(st.alpha.size() == 1);
    CHECK(std::abs(std::abs(st.alpha[0]) - 1.0) < 1e-12);
    // alpha Dbar f - conj(alpha) conj(D f) = 0 with Df = zb1, Dbar f = z1
    cplx rel = st.alpha[0] * p[0] - std::conj(st.alpha[0]) * p[0];
    CHECK(std::abs(rel) < 1e-10);
  }
}

TEST_CASE("relation criterion agrees with the real Jacobian rank") {
  std::mt19937_64 rng(52);
  int singular_seen = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 2;
    MixedPolynomial f = oracle::random_poly(rng, n, 3, 4);
    if (f.is_zero()) continue;
    MixedMap F = (t % 3 == 0) ? MixedMap(n, {f, scale(f, ComplexRational::imag_unit())})
                              : MixedMap(n, {f, oracle::random_poly(rng, n, 3, 4)});
    if (F.components[1].is_zero()) continue;
    PointC p = (t % 5 == 0) ? PointC(n, 0.0) : oracle::random_point(rng, n);
    bool a = mixed_singular_at(F, p).singular;
    bool b = jacobian_deficient(F, p);
    CHECK(a == b);
    singular_seen += a;
  }
  CHECK(singular_seen > 0);
}

TEST_CASE("holomorphic maps: mixed singular iff complex rank drops") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3;
    MixedPolynomial f1 = oracle::random_poly(rng, n, 3, 4, true);
    MixedPolynomial f2 = (t % 4 == 0) ? scale(f1, ComplexRational(2, 1)) : oracle::random_poly(rng, n, 3, 4, true);
    if (f1.is_zero() || f2.is_zero()) continue;
    MixedMap F(n, {f1, f2});
    PointC p = oracle::random_point(rng, n);
    Eigen::MatrixXcd Jc(2, n);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < n; ++j) Jc(i, j) = evaluate(wirtinger_z(F.components[i], j), p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Jc);
    auto s = svd.singularValues();
    bool complex_deficient = s[0] < 1e-12 || s[1] < 1e-8 * s[0];
    CHECK(mixed_singular_at(F, p).singular == complex_deficient);
  }
}

TEST_CASE("worked example: strong non-degeneracy fails at P=(3,1,1)") {
  MixedMap F = pndnd();
  NondegOptions opt;
  opt.bound = 4;
  opt.seed = 0;
  NondegReport rep = refute_strong_nondegeneracy(F, opt);
  REQUIRE(rep.verdict == Verdict::refuted);
  REQUIRE(!rep.witnesses.empty());
  const Witness& w = rep.witnesses[0];
  CHECK(verify_witness(F, NondegMode::strong, w.weight, w.subset, w.point, opt.tol, opt.torus_guard).accepted);

  // independent: brute-force faces, real Jacobian of the face map
  std::vector<MixedPolynomial> faces;
  for (const auto& f : F.components) faces.push_back(oracle::brute_face(f, w.weight));
  MixedMap FP(3, faces);
  CHECK(relative_sigma_min(real_jacobian(FP, w.point)) < 1e-6);
  for (const auto& z : w.point) CHECK(std::abs(z) > 1e-3);

  // the stated point (1,1,1) on the face of P=(3,1,1)
  std::vector<MixedPolynomial> f311{oracle::brute_face(F.components[0], {3, 1, 1}),
                                    oracle::brute_face(F.components[1], {3, 1, 1})};
  CHECK(relative_sigma_min(real_jacobian(MixedMap(3, f311), {1, 1, 1})) < 1e-12);
  CHECK(verify_witness(F, NondegMode::strong, {3, 1, 1}, {0, 1, 2}, {1, 1, 1}, 1e-8, 1e-3).accepted);
}

TEST_CASE("worked example: plain and partial searches find nothing") {
  NondegOptions opt;
  opt.bound = 4;
  CHECK(refute_nondegeneracy(pndnd(), opt).verdict == Verdict::no_counterexample_found);
  CHECK(refute_partial_nondegeneracy(pndnd(), opt).verdict == Verdict::no_counterexample_found);
}

TEST_CASE("square of a linear form is refuted") {
  MixedMap F = parse_map({"(z1-z2)^2"}, 2);
  NondegOptions opt;
  opt.bound = 3;
  NondegReport plain = refute_nondegeneracy(F, opt);
  REQUIRE(plain.verdict == Verdict::refuted);
  const Witness& w = plain.witnesses[0];
  CHECK(std::abs(w.point[0] - w.point[1]) < 1e-6);
  CHECK(refute_partial_nondegeneracy(F, opt).verdict == Verdict::refuted);
}

TEST_CASE("searches never refute regular examples") {
  NondegOptions opt;
  opt.bound = 3;
  opt.budget = 16;
  CHECK(refute_strong_nondegeneracy(parse_map({"z1"}, 1), opt).verdict != Verdict::refuted);
  MixedMap pb(2, {twisted_pham_brieskorn({2, 3}, {0, 1}, {1, 1})});
  CHECK(refute_strong_nondegeneracy(pb, opt).verdict != Verdict::refuted);
  MixedMap pulled = pullback(MixedCovering({2, 2}, {1, 1}), parse_map({"z1^2+z2^2"}, 2));
  CHECK(refute_partial_nondegeneracy(pulled, opt).verdict != Verdict::refuted);
}

TEST_CASE("structural certificates") {
  MixedMap H = hamm_map({{1, 1, 1, 1}, {1, 2, 3, 4}}, {2, 2, 2, 2});
  NondegReport rep = refute_nondegeneracy(H);
  CHECK(rep.verdict == Verdict::certified);
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.certificate->chain.front().rule == "hamm_minors");

  CHECK(!certify_structured(hamm_map({{1, 1}, {1, 1}}, {2, 2})).has_value());

  MixedMap pulled = pullback(MixedCovering({2, 2, 2, 2}, {1, 1, 1, 1}), H);
  auto cert = certify_structured(pulled);
  REQUIRE(cert.has_value());
  CHECK(cert->covers(NondegMode::plain));
  // single-variable faces drop the rank of a Hamm map, so only the plain notion is certified
  CHECK(!cert->covers(NondegMode::strong));
}

TEST_CASE("search is deterministic across worker counts") {
  NondegOptions a;
  a.bound = 4;
  a.seed = 7;
  NondegOptions b = a;
  b.workers = 3;
  NondegReport ra = refute_strong_nondegeneracy(pndnd(), a);
  NondegReport rb = refute_strong_nondegeneracy(pndnd(), b);
  REQUIRE(ra.witnesses.size() == rb.witnesses.size());
  for (std::size_t i = 0; i < ra.witnesses.size(); ++i) {
    CHECK(ra.witnesses[i].point == rb.witnesses[i].point);
    CHECK(ra.witnesses[i].weight == rb.witnesses[i].weight);
  }
}

TEST_CASE("ICIS probe") {
  MixedMap psi = build_siegel_map(SiegelFrame(ComplexMatrix{{1, ComplexRational::imag_unit(), ComplexRational(-1, -1)}}));
  IcisProbeReport s = icis_probe(psi, {1.0, 0.5, 0.1}, 40, 0);
  CHECK(s.verdict == "regular_on_samples");
  CHECK(s.homogeneous_degree == 2);
  // cone: the scaled minimum is the same order at every radius
  for (const auto& rp : s.radii) CHECK(rp.min_sigma_scaled > 0.1 * s.radii[0].min_sigma_scaled);

  CHECK(icis_probe(parse_map({"z1*zb1"}, 2), {1.0}, 10, 0).verdict == "refuted");

  MixedMap G = mixed_hamm_map({{1, 1, 1}, {1, 2, 3}}, {2, 2, 2}, {1, 1, 1});
  CHECK(icis_probe(G, {1.0, 0.5}, 40, 0).verdict == "regular_on_samples");
}

TEST_CASE("algebraic ICIS obstruction") {
  ComplexMatrix lam{{1, 1, 1}, {1, 2, 3}};
  CHECK(algebraic_icis_obstruction(mixed_hamm_map(lam, {2, 2, 2}, {1, 1, 1})).verdict == "not_algebraic_icis");
  CHECK(algebraic_icis_obstruction(hamm_map(lam, {2, 2, 2})).verdict == "inconclusive");
  MixedMap psi = build_siegel_map(SiegelFrame(ComplexMatrix{{1, ComplexRational::imag_unit(), ComplexRational(-1, -1)}}));
  AlgebraicObstructionReport o = algebraic_icis_obstruction(psi);
  CHECK(o.verdict == "inconclusive");
  CHECK(o.line_check_passed);
}
