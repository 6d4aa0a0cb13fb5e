#include "mixsing/nondegen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "mixsing/complexify.hpp"
#include "mixsing/geometry.hpp"
#include "mixsing/parallel.hpp"
#include "mixsing/sampling.hpp"

namespace mixsing {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::refuted: return "refuted";
    case Verdict::no_counterexample_found: return "no_counterexample_found";
    case Verdict::certified: return "certified";
  }
  return "no_counterexample_found";
}

RealMatrix relation_matrix(const std::vector<std::vector<cplx>>& dz, const std::vector<std::vector<cplx>>& dzbar) {
  const std::size_t k = dz.size();
  const std::size_t n = k ? dz[0].size() : 0;
  const cplx I(0.0, 1.0);
  RealMatrix M(2 * n, 2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx u = dzbar[i][j] - std::conj(dz[i][j]);
      cplx v = I * (dzbar[i][j] + std::conj(dz[i][j]));
      M(2 * j, 2 * i) = u.real();
      M(2 * j + 1, 2 * i) = u.imag();
      M(2 * j, 2 * i + 1) = v.real();
      M(2 * j + 1, 2 * i + 1) = v.imag();
    }
  return M;
}

SingularityTest singularity_from_gradients(const std::vector<std::vector<cplx>>& dz,
                                           const std::vector<std::vector<cplx>>& dzbar, double tol) {
  RealMatrix M = relation_matrix(dz, dzbar);
  SingularityTest out;
  SmallestSingular s = smallest_singular(M);
  out.sigma_min = s.sigma_min;
  out.sigma_max = s.sigma_max;
  out.singular = M.cols() > M.rows() || rank_deficient(s, tol);
  RealVector v = s.right_vector;
  if (v.size() == 0) v = RealVector::Unit(M.cols(), 0);
  v.normalize();
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) out.alpha.emplace_back(v[i], v[i + 1]);
  return out;
}

SingularityTest mixed_singular_at(const MixedMap& F, const PointC& p, double tol) {
  if (p.size() != F.nvars) throw PolynomialError("point dimension does not match nvars");
  std::vector<std::vector<cplx>> dz(F.k(), std::vector<cplx>(F.nvars)), dzbar = dz;
  for (std::size_t i = 0; i < F.k(); ++i)
    for (std::size_t j = 0; j < F.nvars; ++j) {
      dz[i][j] = evaluate(wirtinger_z(F.components[i], j), p);
      dzbar[i][j] = evaluate(wirtinger_zbar(F.components[i], j), p);
    }
  return singularity_from_gradients(dz, dzbar, tol);
}

namespace {

struct FaceProblem {
  Weight P;
  std::vector<std::size_t> subset;
  std::vector<MixedPolynomial> value;  // empty in strong mode
  std::vector<std::vector<MixedPolynomial>> dz, dzbar;
};

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = j;
  return v;
}

// Face value and derivative polynomials in the convention of each mode.
void face_data(const MixedMap& F, NondegMode mode, const Weight& P, const std::vector<std::size_t>& subset,
               std::vector<MixedPolynomial>& value, std::vector<std::vector<MixedPolynomial>>& dz,
               std::vector<std::vector<MixedPolynomial>>& dzbar) {
  const std::size_t n = F.nvars, k = F.k();
  value.clear();
  dz.assign(k, {});
  dzbar.assign(k, {});
  if (mode == NondegMode::partial) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& f = F.components[i];
      value.push_back(face_or_zero(restrict_to(f, subset), P));
      for (std::size_t j = 0; j < n; ++j) {
        dz[i].push_back(face_or_zero(restrict_to(wirtinger_z(f, j), subset), P));
        dzbar[i].push_back(face_or_zero(restrict_to(wirtinger_zbar(f, j), subset), P));
      }
    }
    return;
  }
  for (std::size_t i = 0; i < k; ++i) {
    MixedPolynomial fp = face_function(F.components[i], P);
    for (std::size_t j = 0; j < n; ++j) {
      dz[i].push_back(wirtinger_z(fp, j));
      dzbar[i].push_back(wirtinger_zbar(fp, j));
    }
    if (mode == NondegMode::plain) value.push_back(std::move(fp));
  }
}

std::vector<FaceProblem> build_problems(const MixedMap& F, NondegMode mode, std::uint32_t bound) {
  std::vector<FaceProblem> out;
  const std::size_t n = F.nvars;
  if (mode != NondegMode::partial) {
    for (auto& wc : enumerate_weights(F, bound).weights) {
      FaceProblem fp;
      fp.P = wc.P;
      fp.subset = all_indices(n);
      face_data(F, mode, fp.P, fp.subset, fp.value, fp.dz, fp.dzbar);
      out.push_back(std::move(fp));
    }
    return out;
  }
  for (const auto& I : nonempty_subsets(n)) {
    // weights distinguishing the faces of every restricted component and derivative
    std::vector<MixedPolynomial> ext;
    for (const auto& f : F.components) {
      ext.push_back(restrict_to(f, I));
      for (std::size_t j = 0; j < n; ++j) {
        ext.push_back(restrict_to(wirtinger_z(f, j), I));
        ext.push_back(restrict_to(wirtinger_zbar(f, j), I));
      }
    }
    MixedMap E(n, std::move(ext));
    for (auto& wc : enumerate_weights(E, bound).weights) {
      FaceProblem fp;
      fp.P = wc.P;
      fp.subset = I;
      face_data(F, mode, fp.P, fp.subset, fp.value, fp.dz, fp.dzbar);
      out.push_back(std::move(fp));
    }
  }
  return out;
}

// Residual map in (z, w) with w in C^k: face values, the relation, and |w|^2 - 1.
MixedMap search_map(const FaceProblem& fp, std::size_t n) {
  const std::size_t k = fp.dz.size(), N = n + k;
  std::vector<MixedPolynomial> comps;
  for (const auto& v : fp.value) comps.push_back(embed(v, N));
  for (std::size_t j = 0; j < n; ++j) {
    MixedPolynomial R(N);
    for (std::size_t i = 0; i < k; ++i) {
      R += MixedPolynomial::variable(N, n + i) * embed(fp.dzbar[i][j], N);
      R -= MixedPolynomial::conj_variable(N, n + i) * embed(conjugate(fp.dz[i][j]), N);
    }
    comps.push_back(std::move(R));
  }
  MixedPolynomial norm2 = MixedPolynomial::constant(N, ComplexRational(-1));
  for (std::size_t i = 0; i < k; ++i)
    norm2 += MixedPolynomial::variable(N, n + i) * MixedPolynomial::conj_variable(N, n + i);
  comps.push_back(std::move(norm2));
  return MixedMap(N, std::move(comps));
}

struct RestartResult {
  bool accepted = false;
  Witness w;
};

RestartResult run_restart(const MixedMap& F, NondegMode mode, const FaceProblem& fp, const CompiledMap& cm,
                          const std::vector<std::size_t>& free_vars, std::size_t face_index, std::size_t restart,
                          const NondegOptions& opt) {
  const std::size_t n = F.nvars, k = F.k();
  std::mt19937_64 rng(stream_seed(opt.seed, face_index, restart));
  std::uniform_real_distribution<double> logmod(-1.0, 1.0), arg(0.0, 2.0 * M_PI);
  std::normal_distribution<double> g(0.0, 1.0);

  PointC z(n + k, 0.0);
  for (auto j : free_vars) z[j] = std::polar(std::exp(logmod(rng)), arg(rng));
  double an = 0;
  for (std::size_t i = 0; i < k; ++i) {
    z[n + i] = {g(rng), g(rng)};
    an += std::norm(z[n + i]);
  }
  for (std::size_t i = 0; i < k; ++i) z[n + i] /= std::sqrt(an);

  std::vector<Eigen::Index> cols;
  for (auto j : free_vars) {
    cols.push_back(Eigen::Index(2 * j));
    cols.push_back(Eigen::Index(2 * j + 1));
  }
  for (std::size_t i = 0; i < k; ++i) {
    cols.push_back(Eigen::Index(2 * (n + i)));
    cols.push_back(Eigen::Index(2 * (n + i) + 1));
  }
  const Eigen::Index d = Eigen::Index(cols.size());

  auto residual = [&](const PointC& pt, RealVector& r, RealMatrix* J) {
    auto v = cm.value(pt);
    r.resize(Eigen::Index(2 * v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[Eigen::Index(2 * i)] = v[i].real();
      r[Eigen::Index(2 * i + 1)] = v[i].imag();
    }
    if (J) {
      RealMatrix full = cm.real_jacobian(pt);
      J->resize(full.rows(), d);
      for (Eigen::Index c = 0; c < d; ++c) J->col(c) = full.col(cols[std::size_t(c)]);
    }
  };
  auto apply = [&](const PointC& pt, const RealVector& step) {
    PointC q = pt;
    for (Eigen::Index c = 0; c < d; ++c) {
      std::size_t var = std::size_t(cols[std::size_t(c)] / 2);
      if (cols[std::size_t(c)] % 2 == 0)
        q[var] += cplx(step[c], 0.0);
      else
        q[var] += cplx(0.0, step[c]);
    }
    return q;
  };

  RealVector r, rt;
  RealMatrix J;
  residual(z, r, &J);
  double lambda = 1e-3;
  for (int it = 0; it < opt.max_iter; ++it) {
    if (r.norm() < 1e-14) break;
    RealMatrix A = J.transpose() * J;
    RealVector gvec = J.transpose() * r;
    A.diagonal().array() += lambda;
    RealVector step = A.ldlt().solve(-gvec);
    PointC zt = apply(z, step);
    residual(zt, rt, nullptr);
    if (rt.allFinite() && rt.squaredNorm() < r.squaredNorm()) {
      z = std::move(zt);
      residual(z, r, &J);
      lambda = std::max(lambda / 3.0, 1e-15);
    } else {
      lambda *= 4.0;
      if (lambda > 1e12) break;
    }
    if (norm(z) > 1e8) break;
  }

  PointC p(z.begin(), z.begin() + long(n));
  RestartResult out;
  WitnessCheck chk = verify_witness(F, mode, fp.P, fp.subset, p, opt.tol, opt.torus_guard, opt.ambient_torus);
  if (!chk.accepted) return out;
  out.accepted = true;
  out.w.point = p;
  out.w.alpha = chk.alpha;
  out.w.residual = chk.residual;
  out.w.value_norm = chk.value_norm;
  out.w.sigma_min = chk.sigma_min;
  out.w.weight = fp.P;
  out.w.subset = fp.subset;
  out.w.face_index = face_index;
  out.w.restart = restart;
  return out;
}

}  // namespace

WitnessCheck verify_witness(const MixedMap& F, NondegMode mode, const Weight& P, const std::vector<std::size_t>& subset,
                            const PointC& p0, double tol, double torus_guard, bool ambient_torus) {
  WitnessCheck out;
  const std::size_t n = F.nvars;
  if (p0.size() != n) throw PolynomialError("witness dimension does not match nvars");
  PointC p = p0;
  std::vector<bool> in(n, false);
  for (auto j : subset) in[j] = true;
  for (std::size_t j = 0; j < n; ++j) {
    bool guarded = in[j] || (ambient_torus && mode == NondegMode::partial);
    if (guarded && std::abs(p[j]) < torus_guard) return out;
    if (!guarded && mode == NondegMode::partial) p[j] = 0.0;
  }
  std::vector<MixedPolynomial> value;
  std::vector<std::vector<MixedPolynomial>> dzp, dzbarp;
  face_data(F, mode, P, subset, value, dzp, dzbarp);

  double v2 = 0;
  for (const auto& f : value) v2 += std::norm(evaluate(f, p));
  out.value_norm = std::sqrt(v2);

  std::vector<std::vector<cplx>> dz(F.k(), std::vector<cplx>(n)), dzbar = dz;
  for (std::size_t i = 0; i < F.k(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      dz[i][j] = evaluate(dzp[i][j], p);
      dzbar[i][j] = evaluate(dzbarp[i][j], p);
    }
  SingularityTest st = singularity_from_gradients(dz, dzbar, tol);
  out.sigma_min = st.sigma_min;
  out.alpha = st.alpha;
  double rel = st.sigma_max > 1.0 ? st.sigma_min / st.sigma_max : st.sigma_min;
  out.residual = out.value_norm + rel;
  out.accepted = out.value_norm < tol && st.singular;
  return out;
}

NondegReport refute(const MixedMap& F, NondegMode mode, const NondegOptions& opt) {
  NondegReport rep;
  rep.mode = mode;
  rep.bound = opt.bound;
  rep.seed = opt.seed;
  rep.budget = opt.budget;
  for (const auto& c : F.components)
    if (c.is_zero()) throw PolynomialError("non-degeneracy of a map with a zero component");

  if (opt.use_certificates) {
    auto cert = certify_structured(F, opt.assume_holomorphic_partial);
    if (cert && cert->covers(mode)) {
      rep.verdict = Verdict::certified;
      rep.certificate = std::move(cert);
      return rep;
    }
  }

  auto problems = build_problems(F, mode, opt.bound);
  const std::size_t chunk = 8;
  for (std::size_t f = 0; f < problems.size(); ++f) {
    const auto& fp = problems[f];
    ++rep.faces_checked;
    std::vector<std::size_t> free_vars =
        (mode == NondegMode::partial && !opt.ambient_torus) ? fp.subset : all_indices(F.nvars);
    CompiledMap cm(search_map(fp, F.nvars));
    std::optional<Witness> found;
    for (std::size_t start = 0; start < opt.budget && !found; start += chunk) {
      std::size_t count = std::min(chunk, opt.budget - start);
      auto res = parallel_map<RestartResult>(count, opt.workers, [&](std::size_t i) {
        return run_restart(F, mode, fp, cm, free_vars, f, start + i, opt);
      });
      for (auto& r : res)
        if (r.accepted) {
          found = std::move(r.w);
          break;
        }
    }
    if (found) {
      rep.witnesses.push_back(std::move(*found));
      if (opt.stop_at_first) break;
    }
  }
  rep.verdict = rep.witnesses.empty() ? Verdict::no_counterexample_found : Verdict::refuted;
  return rep;
}

NondegReport refute_nondegeneracy(const MixedMap& F, const NondegOptions& opt) {
  return refute(F, NondegMode::plain, opt);
}
NondegReport refute_strong_nondegeneracy(const MixedMap& F, const NondegOptions& opt) {
  return refute(F, NondegMode::strong, opt);
}
NondegReport refute_partial_nondegeneracy(const MixedMap& F, const NondegOptions& opt) {
  return refute(F, NondegMode::partial, opt);
}

std::uint32_t radial_homogeneous_degree(const MixedMap& F) {
  std::optional<std::uint32_t> d;
  for (const auto& c : F.components)
    for (const auto& t : c.terms()) {
      if (d && *d != t.degree()) return 0;
      d = t.degree();
    }
  return d.value_or(0);
}

IcisProbeReport icis_probe(const MixedMap& F, const std::vector<double>& radii, std::size_t samples, std::uint64_t seed,
                           std::size_t workers, double tol) {
  if (F.nvars <= F.k()) throw std::invalid_argument("icis probe needs n > k");
  IcisProbeReport rep;
  rep.seed = seed;
  rep.homogeneous_degree = radial_homogeneous_degree(F);
  CompiledMap cm(F);
  bool any_failure = false;
  for (double r : radii) {
    IcisRadiusProfile prof;
    prof.radius = r;
    SampleOptions so;
    so.workers = workers;
    LinkSample ls = sample_link(F, r, samples, seed, so);
    prof.samples = ls.points.size();
    prof.acceptance_ratio = ls.acceptance_ratio;
    prof.sampling_failed = ls.failed();
    any_failure |= prof.sampling_failed;
    double mn = INFINITY;
    for (const auto& p : ls.points) {
      std::vector<std::vector<cplx>> dz, dzbar;
      cm.gradients(p, dz, dzbar);
      SingularityTest st = singularity_from_gradients(dz, dzbar, tol);
      mn = std::min(mn, st.sigma_min);
      if (st.singular) {
        ++prof.singular;
        if (!rep.singular_point) rep.singular_point = p;
      }
    }
    prof.min_sigma = ls.points.empty() ? 0.0 : mn;
    double scale = rep.homogeneous_degree > 1 ? std::pow(r, double(rep.homogeneous_degree) - 1.0) : 1.0;
    prof.min_sigma_scaled = prof.min_sigma / scale;
    rep.radii.push_back(prof);
  }
  if (rep.singular_point)
    rep.verdict = "refuted";
  else if (any_failure)
    rep.verdict = "sampling_failure";
  else
    rep.verdict = "regular_on_samples";
  return rep;
}

namespace {

// Coefficients in t of g restricted to the line xi1_i = sign*i*t, xi2_i = t, all other variables 0.
std::map<std::uint32_t, ComplexRational> on_line(const MixedPolynomial& g, std::size_t n, std::size_t i, int sign) {
  std::map<std::uint32_t, ComplexRational> out;
  const ComplexRational si(Rational(0), Rational(sign));
  for (const auto& t : g.terms()) {
    bool ok = true;
    for (std::size_t v = 0; v < 2 * n && ok; ++v)
      if (v != i && v != n + i && t.mu[v]) ok = false;
    if (!ok) continue;
    out[t.mu[i] + t.mu[n + i]] += t.coeff * pow(si, t.mu[i]);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

ComplexRational at(const std::map<std::uint32_t, ComplexRational>& poly, long t) {
  ComplexRational s(0);
  for (const auto& [e, c] : poly) s += c * pow(ComplexRational(t), e);
  return s;
}

}  // namespace

AlgebraicObstructionReport algebraic_icis_obstruction(const MixedMap& F, bool check_lines) {
  AlgebraicObstructionReport rep;
  bool all = true;
  for (const auto& c : F.components) {
    rep.components.push_back(purely_mixed(c));
    all &= rep.components.back().purely_mixed;
  }
  rep.verdict = all ? "not_algebraic_icis" : "inconclusive";
  if (!check_lines) return rep;

  const std::size_t n = F.nvars;
  MixedMap C = complexify(F);
  std::vector<std::vector<MixedPolynomial>> jac(C.k());
  std::uint32_t deg = 0;
  for (std::size_t r = 0; r < C.k(); ++r)
    for (std::size_t v = 0; v < 2 * n; ++v) {
      jac[r].push_back(wirtinger_z(C.components[r], v));
      deg = std::max(deg, jac[r].back().degree());
    }
  const long points = long(C.k()) * long(deg) + 1;

  for (std::size_t i = 0; i < n; ++i)
    for (int sign : {1, -1}) {
      LineCheck lc;
      lc.variable = i;
      lc.sign = sign;
      lc.in_zero_set = std::all_of(C.components.begin(), C.components.end(),
                                   [&](const MixedPolynomial& g) { return on_line(g, n, i, sign).empty(); });
      std::vector<std::vector<std::map<std::uint32_t, ComplexRational>>> restricted(C.k());
      for (std::size_t r = 0; r < C.k(); ++r)
        for (const auto& d : jac[r]) restricted[r].push_back(on_line(d, n, i, sign));
      std::size_t max_rank = 0;
      for (long t = 1; t <= points && max_rank < C.k(); ++t) {
        ComplexMatrix m(C.k());
        for (std::size_t r = 0; r < C.k(); ++r)
          for (const auto& e : restricted[r]) m[r].push_back(at(e, t));
        max_rank = std::max(max_rank, complex_rank(m));
      }
      lc.in_singular_set = max_rank < C.k();
      rep.lines.push_back(lc);
      if (lc.in_zero_set && lc.in_singular_set) rep.line_check_passed = true;
    }
  return rep;
}

}  // namespace mixsing
