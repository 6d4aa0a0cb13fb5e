// One line per acceptance criterion. Exit status is the number of failing criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "../../tools/cli.hpp"
#include "mixsing/contact.hpp"
#include "mixsing/geometry.hpp"
#include "mixsing/links.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/nondegen.hpp"
#include "mixsing/parallel.hpp"
#include "mixsing/parser.hpp"
#include "oracles.hpp"

using namespace mixsing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    if (o.pass) o.detail = "over time budget";
    o.pass = false;
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-34s %8.2fs / %gs  %s\n", o.pass ? "PASS" : "FAIL", id, name, dt, budget_s, o.detail.c_str());
  std::fflush(stdout);
}

bool jacobian_deficient(const MixedMap& F, const PointC& p, double tol) {
  Eigen::JacobiSVD<RealMatrix> svd(real_jacobian(F, p));
  auto s = svd.singularValues();
  if (s[0] < 1e-12) return true;
  return s.size() < Eigen::Index(2 * F.k()) || s[Eigen::Index(2 * F.k() - 1)] < tol * s[0];
}

bool complex_deficient(const MixedMap& F, const PointC& p, double tol) {
  Eigen::MatrixXcd J(F.k(), F.nvars);
  for (std::size_t i = 0; i < F.k(); ++i)
    for (std::size_t j = 0; j < F.nvars; ++j) J(Eigen::Index(i), Eigen::Index(j)) = evaluate(wirtinger_z(F.components[i], j), p);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  auto s = svd.singularValues();
  if (s[0] < 1e-12) return true;
  return s.size() < Eigen::Index(F.k()) || s[Eigen::Index(F.k() - 1)] < tol * s[0];
}

// --- random grammar strings with an exact evaluation oracle -------------------------------------------

struct Expr {
  std::string text;
  std::function<ComplexRational(const std::vector<ComplexRational>&)> value;
};

ComplexRational cpow(ComplexRational b, unsigned e) {
  ComplexRational r(1);
  while (e--) r *= b;
  return r;
}

Expr random_expr(std::mt19937_64& rng, std::size_t n, int depth) {
  auto pick = [&](int m) { return int(rng() % unsigned(m)); };
  if (depth <= 0 || pick(3) == 0) {
    switch (pick(6)) {
      case 0:
      case 1: {
        std::size_t j = rng() % n;
        return {"z" + std::to_string(j + 1), [j](const auto& z) { return z[j]; }};
      }
      case 2: {
        std::size_t j = rng() % n;
        return {"zb" + std::to_string(j + 1), [j](const auto& z) { return z[j].conj(); }};
      }
      case 3: {
        long a = 1 + pick(9), b = 1 + pick(4);
        Rational q(a, b);
        q.canonicalize();
        std::string s = b == 1 ? std::to_string(a) : std::to_string(a) + "/" + std::to_string(b);
        return {s, [q](const auto&) { return ComplexRational(q); }};
      }
      case 4: return {"i", [](const auto&) { return ComplexRational::imag_unit(); }};
      default: {
        long a = pick(7) - 3, b = 1 + pick(5);
        bool minus = pick(2);
        std::string s = "(" + std::to_string(a) + (minus ? "-" : "+") + std::to_string(b) + "i)";
        ComplexRational c(Rational(a), Rational(minus ? -b : b));
        return {s, [c](const auto&) { return c; }};
      }
    }
  }
  Expr a = random_expr(rng, n, depth - 1);
  switch (pick(6)) {
    case 0: {
      Expr b = random_expr(rng, n, depth - 1);
      return {a.text + " + " + b.text, [a, b](const auto& z) { return a.value(z) + b.value(z); }};
    }
    case 1: {
      Expr b = random_expr(rng, n, depth - 1);
      return {a.text + "-(" + b.text + ")", [a, b](const auto& z) { return a.value(z) - b.value(z); }};
    }
    case 2: {
      Expr b = random_expr(rng, n, depth - 1);
      return {"(" + a.text + ")*(" + b.text + ")", [a, b](const auto& z) { return a.value(z) * b.value(z); }};
    }
    case 3: {
      unsigned e = unsigned(pick(4));
      return {"(" + a.text + ")^" + std::to_string(e), [a, e](const auto& z) { return cpow(a.value(z), e); }};
    }
    case 4: return {"-(" + a.text + ")", [a](const auto& z) { return -a.value(z); }};
    default: return {"(" + a.text + ")", a.value};
  }
}

std::string mutate_invalid(std::mt19937_64& rng, const std::string& s, std::size_t n, std::size_t& expect_at) {
  expect_at = std::string::npos;
  const std::size_t at = rng() % (s.size() + 1);
  switch (rng() % 6) {
    case 0: {
      const char junk[] = "@#$&!?;";
      expect_at = at;
      return s.substr(0, at) + junk[rng() % 7] + s.substr(at);
    }
    case 1: return s + (rng() % 2 ? " +" : " *");
    case 2: return "(" + s;
    case 3: return s + ")";
    case 4: return s + "*z" + std::to_string(n + 1 + rng() % 5);
    default: return s + "*z1^-" + std::to_string(1 + rng() % 3);
  }
}

std::vector<ComplexRational> random_gaussian_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<ComplexRational> z;
  for (std::size_t j = 0; j < n; ++j) z.emplace_back(Rational(d(rng), 1 + rng() % 3), Rational(d(rng), 1 + rng() % 3));
  for (auto& c : z) {
    c.re.canonicalize();
    c.im.canonicalize();
  }
  return z;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string data = argc > 1 ? argv[1] : MIXSING_DATA_DIR;

  criterion(1, "Wirtinger correctness", 10, [] {
    Outcome o;
    std::mt19937_64 rng(1001);
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + rng() % 4;
      MixedPolynomial f = oracle::random_poly(rng, n, 5, 1 + rng() % 6);
      MixedPolynomial g = oracle::random_poly(rng, n, 3, 3);
      MixedMap F(n, {f});
      PointC p = oracle::random_point(rng, n);
      RealMatrix J = real_jacobian(F, p);
      Eigen::MatrixXd fd = oracle::fd_jacobian(F, p);
      double err = (J - fd).norm() / std::max(1.0, J.norm());
      worst = std::max(worst, err);
      o.require(err < 1e-6, "finite differences disagree");
      for (std::size_t j = 0; j < n; ++j) {
        o.require(wirtinger_z(f * g, j) == wirtinger_z(f, j) * g + f * wirtinger_z(g, j), "product rule (z)");
        o.require(wirtinger_zbar(f * g, j) == wirtinger_zbar(f, j) * g + f * wirtinger_zbar(g, j), "product rule (zbar)");
        o.require(wirtinger_zbar(conjugate(f), j) == conjugate(wirtinger_z(f, j)), "conjugation rule");
      }
    }
    if (o.pass) o.detail = "max relative FD error " + sci(worst);
    return o;
  });

  criterion(2, "criterion equivalence", 30, [] {
    Outcome o;
    std::mt19937_64 rng(1002);
    int disagree = 0, singular = 0, hol = 0;
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 2 + rng() % 3;
      const std::size_t k = 1 + rng() % 2;
      const bool holo = t % 2 == 0;
      std::vector<MixedPolynomial> comps;
      for (std::size_t i = 0; i < k; ++i) {
        MixedPolynomial c;
        do c = oracle::random_poly(rng, n, 3, 4, holo);
        while (c.is_zero());
        comps.push_back(c);
      }
      if (k == 2 && t % 5 == 1) comps[1] = scale(comps[0], ComplexRational(1, 2));
      MixedMap F(n, comps);
      PointC p = (t % 7 == 3) ? PointC(n, 0.0) : oracle::random_point(rng, n);
      const bool rel = mixed_singular_at(F, p, 1e-8).singular;
      const bool rank = jacobian_deficient(F, p, 1e-8);
      disagree += rel != rank;
      singular += rel;
      if (holo) {
        ++hol;
        disagree += rel != complex_deficient(F, p, 1e-8);
      }
    }
    o.require(disagree == 0, std::to_string(disagree) + " disagreements");
    o.require(singular > 0, "no singular cases exercised");
    if (o.pass) o.detail = std::to_string(singular) + " singular, " + std::to_string(hol) + " holomorphic";
    return o;
  });

  criterion(3, "face function oracle", 5, [] {
    Outcome o;
    std::mt19937_64 rng(1003);
    int done = 0;
    while (done < 200) {
      const std::size_t n = 1 + rng() % 4;
      MixedPolynomial f = oracle::random_poly(rng, n, 5, 1 + rng() % 6);
      if (f.is_zero()) continue;
      Weight P(n);
      for (auto& w : P) w = 1 + std::uint32_t(rng() % 9);
      o.require(face_function(f, P) == oracle::brute_face(f, P), "face mismatch");
      ++done;
    }
    return o;
  });

  criterion(4, "worked example reproduction", 120, [] {
    Outcome o;
    MixedMap F = parse_map({"z1+(z2+z3)^2", "z1^2+z2^2+z3^2"}, 3);
    NondegReport strong = refute_strong_nondegeneracy(F);
    o.require(strong.verdict == Verdict::refuted, "strong search found no witness");
    std::vector<MixedPolynomial> target{oracle::brute_face(F.components[0], {3, 1, 1}),
                                        oracle::brute_face(F.components[1], {3, 1, 1})};
    bool found = false;
    for (const auto& w : strong.witnesses) {
      std::vector<MixedPolynomial> faces{oracle::brute_face(F.components[0], w.weight),
                                         oracle::brute_face(F.components[1], w.weight)};
      if (faces != target) continue;
      WitnessCheck chk = verify_witness(F, NondegMode::strong, w.weight, w.subset, w.point, 1e-8, 1e-3);
      Eigen::JacobiSVD<RealMatrix> svd(real_jacobian(MixedMap(3, faces), w.point));
      auto s = svd.singularValues();
      // complex rank one is real rank two
      found = found || (chk.accepted && s[3] < 1e-8 * s[0]);
    }
    o.require(found, "no verified witness on the face of P=(3,1,1)");
    NondegOptions opt;
    opt.bound = 4;
    opt.budget = 64;
    o.require(refute_partial_nondegeneracy(F, opt).verdict == Verdict::no_counterexample_found, "partial refuted");
    return o;
  });

  criterion(5, "Siegel certificates", 1, [] {
    Outcome o;
    const ComplexRational I = ComplexRational::imag_unit();
    SiegelFrame good(ComplexMatrix{{1, I, ComplexRational(-1, -1)}});
    AdmissibilityReport rep = is_admissible(good);
    o.require(rep.admissible(), "frame (1, i, -1-i) rejected");
    o.require(rep.weights == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, "weights");
    std::size_t pairs = 0;
    for (const auto& sf : rep.functionals) {
      if (sf.subset.size() == 2) ++pairs;
      for (auto c : sf.subset) {
        auto col = good.column_real(c);
        o.require(sf.functional[0] * col[0] + sf.functional[1] * col[1] > 0, "functional not positive");
      }
    }
    o.require(pairs == 3, "expected a functional per pair");
    AdmissibilityReport bad = is_admissible(SiegelFrame(ComplexMatrix{{1, -1, I}}));
    o.require(!bad.admissible(), "frame (1, -1, i) accepted");
    o.require(bad.violating_subset == std::vector<std::size_t>{0, 1}, "violating subset");
    return o;
  });

  criterion(6, "Siegel ICIS probe", 60, [] {
    Outcome o;
    std::ostringstream det;
    int frames = 0;
    for (std::uint64_t seed = 0; frames < 3 && seed < 200; ++seed) {
      const std::size_t n = 3 + seed % 2;
      SiegelFrame fr = random_admissible_frame(1, n, seed);
      if (!is_strongly_admissible(fr).strongly_admissible) continue;
      ++frames;
      IcisProbeReport rep = icis_probe(build_siegel_map(fr), {1.0, 0.1, 0.01}, 200, seed);
      o.require(rep.verdict == "regular_on_samples", "singular sample");
      double lo = 1e300, hi = 0;
      for (const auto& rp : rep.radii) {
        o.require(rp.samples >= 200, "fewer than 200 samples");
        lo = std::min(lo, rp.min_sigma_scaled);
        hi = std::max(hi, rp.min_sigma_scaled);
      }
      o.require(lo > 0 && hi <= 2 * lo, "scaled minimum varies by more than 2x");
      det << "n=" << n << " ratio=" << (hi / lo) << " ";
    }
    o.require(frames == 3, "could not draw three strongly admissible frames");
    if (o.pass) o.detail = det.str();
    return o;
  });

  criterion(7, "D oracle vs closed forms", 30, [] {
    Outcome o;
    std::mt19937_64 rng(1007);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
      MixedPolynomial f;
      do f = oracle::random_poly(rng, 3, 4, 5, true);
      while (f.is_zero());
      PointC p = oracle::random_point(rng, 3);
      double d = D_oracle(MixedMap(3, {f}), p), c = D_pairs(f, p);
      double e = std::abs(d - c) / std::max(1e-300, std::max(std::abs(d), std::abs(c)));
      if (d == 0 && c == 0) e = 0;
      worst = std::max(worst, e);
    }
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 3 + t % 2;
      MixedMap F(n, {oracle::random_poly(rng, n, 3, 4), oracle::random_poly(rng, n, 3, 4)});
      PointC p = oracle::random_point(rng, n);
      double d = D_oracle(F, p), c = D_closed(F, p);
      double e = std::abs(d - c) / std::max(1e-300, std::max(std::abs(d), std::abs(c)));
      if (d == 0 && c == 0) e = 0;
      worst = std::max(worst, e);
    }
    o.require(worst < 1e-9, "relative error " + sci(worst));
    if (o.pass) o.detail = "max relative error " + sci(worst);
    return o;
  });

  criterion(8, "pullback sign law", 120, [] {
    Outcome o;
    std::size_t total = 0;
    // one component: the sign law (a^2 - b^2)^k separates the two coverings only for odd k
    for (std::uint64_t s = 0; s < 5; ++s) {
      const std::size_t k = 1, n = 3 + s % 2;
      std::vector<std::uint32_t> a(n);
      std::mt19937_64 rng(stream_seed(1008, s, 0));
      for (auto& e : a) e = 2 + std::uint32_t(rng() % 2);
      MixedMap H = hamm_map(random_hamm_matrix(k, n, s), a);
      o.require(certify_structured(H).has_value(), "base map not certified");
      MixedMap pos = pullback(MixedCovering(std::vector<std::uint32_t>(n, 2), std::vector<std::uint32_t>(n, 1)), H);
      MixedMap neg = pullback(MixedCovering(std::vector<std::uint32_t>(n, 1), std::vector<std::uint32_t>(n, 2)), H);
      DScanReport rp = holomorphic_like_scan(pos, 0.5, 500, s);
      DScanReport rn = holomorphic_like_scan(neg, 0.5, 500, s);
      o.require(rp.verdict == "strictly_positive_on_samples" && rp.violations == 0, "phi_{2,1}: " + rp.verdict);
      o.require(rn.verdict == "strictly_negative_on_samples" && rn.violations == 0, "phi_{1,2}: " + rn.verdict);
      o.require(rp.samples >= 500 && rn.samples >= 500, "fewer than 500 samples");
      total += rp.samples + rn.samples;
    }
    if (o.pass) o.detail = std::to_string(total) + " samples";
    return o;
  });

  criterion(9, "open book scan", 180, [] {
    Outcome o;
    MixedMap G = pullback(MixedCovering({2, 2, 2}, {1, 1, 1}), parse_map({"z1^2+z2^2+z3^2"}, 3));
    MixedPolynomial g = pullback(MixedCovering({3, 3, 3}, {1, 1, 1}), parse_polynomial("z1+z2+z3", 3));
    OpenBookReport rep = openbook_scan(G, g, 0.5, default_c_schedule(), 300, 0);
    o.require(rep.samples >= 300, "fewer than 300 samples");
    o.require(rep.verdict == "positive" && rep.c_used && *rep.c_used <= 64, "verdict " + rep.verdict);
    o.require(rep.v1_dominates, "|v1|^2 < |v2|^2 at a sample");
    o.require(rep.identity_max_error < 1e-6, "c = 0 identity error");
    if (o.pass)
      o.detail = "c=" + std::to_string(*rep.c_used) + " identity err " + sci(rep.identity_max_error);
    return o;
  });

  criterion(10, "Hamm family transversality", 120, [] {
    Outcome o;
    ComplexMatrix lam{{1, 1, 1}, {1, 2, 3}};
    MixedMap G = mixed_hamm_map(lam, {2, 2, 2}, {1, 1, 1});
    MixedMap F = hamm_map(lam, {2, 2, 2});
    const std::vector<double> radii{1.0, 0.3, 0.1};
    for (Rational t : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
      MixedMap Gt = hamm_family(G, F, t);
      IcisProbeReport ip = icis_probe(Gt, radii, 100, 0);
      o.require(ip.verdict == "regular_on_samples", "ICIS probe at t=" + t.get_str());
      RadiusProbeReport tr = transversality_probe(Gt, radii, 100, 0);
      o.require(tr.clean_prefix == radii.size(), "transversality at t=" + t.get_str());
      for (const auto& rc : tr.radii) o.require(rc.report.samples >= 100, "fewer than 100 samples");
    }
    return o;
  });

  criterion(11, "algebraic obstruction", 5, [] {
    Outcome o;
    ComplexMatrix lam{{1, 1, 1}, {1, 2, 3}};
    AlgebraicObstructionReport m = algebraic_icis_obstruction(mixed_hamm_map(lam, {2, 2, 2}, {1, 1, 1}));
    o.require(m.verdict == "not_algebraic_icis", "mixed Hamm: " + m.verdict);
    o.require(m.line_check_passed, "line check failed for mixed Hamm");
    AlgebraicObstructionReport h = algebraic_icis_obstruction(hamm_map(lam, {2, 2, 2}));
    o.require(h.verdict == "inconclusive", "holomorphic Hamm: " + h.verdict);
    return o;
  });

  criterion(12, "parser fuzzing", 30, [] {
    Outcome o;
    std::mt19937_64 rng(1012);
    std::vector<std::pair<std::string, std::size_t>> valid;
    while (valid.size() < 10000) {
      const std::size_t n = 1 + rng() % 4;
      Expr e = random_expr(rng, n, 4);
      auto r = try_parse_polynomial(e.text, n);
      if (!std::holds_alternative<MixedPolynomial>(r)) {
        o.require(false, "valid string rejected: " + e.text);
        break;
      }
      const MixedPolynomial& f = std::get<MixedPolynomial>(r);
      auto z = random_gaussian_point(rng, n);
      o.require(oracle::exact_value(f, z) == e.value(z), "value mismatch: " + e.text);
      auto back = try_parse_polynomial(format_polynomial(f), n);
      o.require(std::holds_alternative<MixedPolynomial>(back) && std::get<MixedPolynomial>(back) == f,
                "round trip: " + e.text);
      valid.emplace_back(e.text, n);
    }
    for (int t = 0; t < 1000; ++t) {
      const auto& [s, n] = valid[rng() % valid.size()];
      std::size_t expect_at;
      std::string bad = mutate_invalid(rng, s, n, expect_at);
      auto r = try_parse_polynomial(bad, n);
      if (!std::holds_alternative<ParseDiagnostic>(r)) {
        o.require(false, "mutant accepted: " + bad);
        continue;
      }
      const auto& d = std::get<ParseDiagnostic>(r);
      o.require(d.position <= bad.size(), "diagnostic outside the text");
      // the diagnostic may point at an earlier token that the junk left incomplete, never past it
      if (expect_at != std::string::npos) o.require(d.position <= expect_at, "diagnostic past the junk: " + bad);
    }
    return o;
  });

  criterion(13, "batch determinism", 600, [&data] {
    Outcome o;
    std::string first;
    for (const char* w : {"1", "4", "8"}) {
      std::ostringstream out, err;
      int code = cli::run({"batch", data + "/paper_suite.manifest", "--workers", w}, out, err);
      o.require(code == 0, std::string("batch exit code with ") + w + " workers");
      if (first.empty())
        first = out.str();
      else
        o.require(out.str() == first, std::string("output differs with ") + w + " workers");
    }
    if (o.pass) o.detail = std::to_string(first.size()) + " bytes";
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
