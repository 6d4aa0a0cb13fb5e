#include "mixsing/links.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixsing/parallel.hpp"

namespace mixsing {

namespace {

RealMatrix stacked(const CompiledMap& cm, const PointC& p) {
  const auto k = Eigen::Index(cm.k()), n = Eigen::Index(cm.nvars());
  RealMatrix S(2 * k + 1, 2 * n);
  S.topRows(2 * k) = cm.real_jacobian(p);
  S.row(2 * k) = 2.0 * to_real(p).transpose();
  return S;
}

TransversalityReport check_points(const CompiledMap& cm, const std::vector<PointC>& points, double tol) {
  TransversalityReport rep;
  rep.samples = points.size();
  rep.min_sigma = points.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    SmallestSingular s = smallest_singular(stacked(cm, p));
    rep.min_sigma = std::min(rep.min_sigma, s.sigma_min);
    if (rank_deficient(s, tol)) ++rep.failures;
  }
  rep.transversal = !points.empty() && rep.failures == 0;
  return rep;
}

void summarize(RadiusProbeReport& rep) {
  rep.clean_prefix = 0;
  while (rep.clean_prefix < rep.radii.size() && rep.radii[rep.clean_prefix].clean()) ++rep.clean_prefix;
  for (const auto& rc : rep.radii)
    if (!rc.clean()) rep.r0_upper_bound = rep.r0_upper_bound ? std::min(*rep.r0_upper_bound, rc.radius) : rc.radius;
  for (const auto& rc : rep.radii) {
    if (!rc.clean()) continue;
    bool below_ok = std::all_of(rep.radii.begin(), rep.radii.end(),
                                [&](const RadiusCheck& o) { return o.radius > rc.radius || o.clean(); });
    if (below_ok && (!rep.r0_estimate || rc.radius > *rep.r0_estimate)) rep.r0_estimate = rc.radius;
  }
}

}  // namespace

TransversalityReport transversality_check(const MixedMap& F, const std::vector<PointC>& points, double tol) {
  return check_points(CompiledMap(F), points, tol);
}

RadiusProbeReport transversality_probe(const MixedMap& F, const std::vector<double>& radii, std::size_t samples,
                                       std::uint64_t seed, std::size_t workers, double tol) {
  RadiusProbeReport rep;
  rep.seed = seed;
  CompiledMap cm(F);
  for (double r : radii) {
    SampleOptions so;
    so.workers = workers;
    LinkSample ls = sample_link(F, r, samples, seed, so);
    RadiusCheck rc;
    rc.radius = r;
    rc.acceptance_ratio = ls.acceptance_ratio;
    rc.sampling_failed = ls.failed();
    rc.report = check_points(cm, ls.points, tol);
    rep.radii.push_back(rc);
  }
  summarize(rep);
  return rep;
}

double FiberLevel::at(double r) const { return scale * std::pow(r, power); }

RadiusProbeReport milnor_radius_probe(const MixedMap& F, const std::vector<double>& radii, std::size_t samples,
                                      std::uint64_t seed, std::size_t workers, double tol, const FiberLevel& level) {
  RadiusProbeReport rep;
  rep.seed = seed;
  CompiledMap cm(F);
  for (double r : radii) {
    FiberTarget fiber;
    fiber.modulus = level.at(r);
    SampleOptions so;
    so.workers = workers;
    LinkSample ls = sample_fiber(F, r, fiber, samples, seed, so);
    RadiusCheck rc;
    rc.radius = r;
    rc.acceptance_ratio = ls.acceptance_ratio;
    rc.sampling_failed = ls.failed();
    rc.report = check_points(cm, ls.points, tol);
    rep.radii.push_back(rc);
  }
  summarize(rep);
  return rep;
}

RealVector reeb(const PointC& p, double r) {
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  if (std::abs(norm(p) - r) > 1e-9 * std::max(1.0, r)) throw std::invalid_argument("point is not on the sphere");
  RealVector R(2 * Eigen::Index(p.size()));
  const double s = 1.0 / (2.0 * r * r);
  for (std::size_t j = 0; j < p.size(); ++j) {
    R[Eigen::Index(2 * j)] = -s * p[j].imag();
    R[Eigen::Index(2 * j + 1)] = s * p[j].real();
  }
  return R;
}

std::vector<cplx> reeb_complex(const PointC& p, double r) { return to_complex(reeb(p, r)); }

std::vector<cplx> theta_grad(const MixedPolynomial& g, const PointC& p) {
  cplx gv = evaluate(g, p);
  if (gv == cplx(0.0, 0.0)) throw std::domain_error("arg g is undefined where g vanishes");
  std::vector<cplx> dz, dzb;
  CompiledPolynomial(g).gradients(p, dz, dzb);
  const cplx I(0.0, 1.0);
  std::vector<cplx> out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) out[j] = I * (std::conj(dz[j]) / std::conj(gv) - dzb[j] / gv);
  return out;
}

double dtheta(const std::vector<cplx>& grad, const std::vector<cplx>& v) {
  double s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += (v[j] * std::conj(grad[j])).real();
  return s;
}

V1V2 v1v2(const MixedPolynomial& g, const PointC& p, double r, ReebProjection proj) {
  std::vector<cplx> R = reeb_complex(p, r);
  cplx gv = evaluate(g, p);
  std::vector<cplx> dz, dzb;
  CompiledPolynomial(g).gradients(p, dz, dzb);
  double rn = 0;
  for (auto x : R) rn += std::norm(x);
  auto project = [&](std::vector<cplx> v) {
    cplx h = 0;
    for (std::size_t j = 0; j < v.size(); ++j) h += v[j] * std::conj(R[j]);
    cplx coef = proj == ReebProjection::complex_line ? h / rn : cplx(h.real() / rn, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= coef * R[j];
    return v;
  };
  V1V2 out;
  std::vector<cplx> a(p.size()), b(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    a[j] = gv * std::conj(dz[j]);
    b[j] = std::conj(gv) * dzb[j];
  }
  out.v1 = project(a);
  out.v2 = project(b);
  for (auto x : out.v1) out.norm1_sq += std::norm(x);
  for (auto x : out.v2) out.norm2_sq += std::norm(x);
  return out;
}

namespace {

// |g|^2 dTheta_g(R) = Im(conj(g) dg(R)), with dg(R) = sum g_{z_j} R_j + g_{zbar_j} conj(R_j)
double g2_dtheta_direct(const MixedPolynomial& g, const PointC& p, double r) {
  std::vector<cplx> R = reeb_complex(p, r);
  cplx gv = evaluate(g, p);
  std::vector<cplx> dz, dzb;
  CompiledPolynomial(g).gradients(p, dz, dzb);
  cplx dg = 0;
  for (std::size_t j = 0; j < p.size(); ++j) dg += dz[j] * R[j] + dzb[j] * std::conj(R[j]);
  return (std::conj(gv) * dg).imag();
}

}  // namespace

double reeb_c_value(const MixedPolynomial& g, const PointC& p, double r, double c, ReebProjection proj) {
  double g2 = std::norm(evaluate(g, p));
  double e = std::exp(c * g2);
  double base = g2_dtheta_direct(g, p, r);
  if (c == 0.0) return base;
  V1V2 v = v1v2(g, p, r, proj);
  return e * base + 0.5 * c * e * (v.norm1_sq - v.norm2_sq);
}

std::vector<double> default_c_schedule() { return {0, 1, 2, 4, 8, 16, 32, 64}; }

OpenBookReport openbook_scan(const MixedMap& G, const MixedPolynomial& g, double r, const std::vector<double>& c_schedule,
                             std::size_t samples, std::uint64_t seed, const OpenBookOptions& opt) {
  if (g.nvars() != G.nvars) throw PolynomialError("open book: g and G disagree on nvars");
  OpenBookReport rep;
  rep.radius = r;
  rep.seed = seed;
  SampleOptions so;
  so.workers = opt.workers;
  // points near the binding are replaced by extra draws from derived streams
  std::vector<PointC> pts;
  constexpr int kTopUpRounds = 4;
  for (int round = 0; round < kTopUpRounds && pts.size() < samples; ++round) {
    const std::uint64_t s = round == 0 ? seed : stream_seed(seed, 0x0b0c, std::uint64_t(round));
    LinkSample ls = sample_link(G, r, samples - pts.size(), s, so);
    if (ls.failed()) break;
    for (auto& p : ls.points) {
      if (std::abs(evaluate(g, p)) < opt.binding_margin)
        ++rep.excluded_near_binding;
      else
        pts.push_back(std::move(p));
    }
  }
  rep.samples = pts.size();
  if (pts.empty()) {
    rep.verdict = "sampling_failure";
    return rep;
  }

  struct PerPoint {
    double base = 0, g2 = 0, diff = 0, identity_err = 0;
    double gabs = 0;
    bool angular_ok = true, rank_ok = true;
  };
  CompiledMap cmG(G);
  MixedMap gmap(G.nvars, {g});
  CompiledMap cmg(gmap);
  auto tangent_checks = [&](const PointC& p, PerPoint& pp) {
    RealMatrix S = stacked(cmG, p);
    Eigen::JacobiSVD<RealMatrix> svd(S, Eigen::ComputeFullV);
    const Eigen::Index rank = S.rows();
    RealMatrix T = svd.matrixV().rightCols(S.cols() - rank);
    std::vector<cplx> tg = theta_grad(g, p);
    RealVector grad = to_real(tg);
    double proj = (T.transpose() * grad).norm();
    pp.angular_ok = proj > opt.tol * std::max(1.0, grad.norm());
    RealMatrix dg = cmg.real_jacobian(p) * T;
    pp.rank_ok = !rank_deficient(smallest_singular(dg), opt.tol);
  };
  auto per = parallel_map<PerPoint>(pts.size(), opt.workers, [&](std::size_t i) {
    const PointC& p = pts[i];
    PerPoint pp;
    cplx gv = evaluate(g, p);
    pp.gabs = std::abs(gv);
    pp.g2 = std::norm(gv);
    pp.base = g2_dtheta_direct(g, p, r);
    double via_grad = pp.g2 * dtheta(theta_grad(g, p), reeb_complex(p, r));
    pp.identity_err = std::abs(pp.base - via_grad) / std::max(1.0, std::abs(via_grad));
    V1V2 v = v1v2(g, p, r, opt.projection);
    pp.diff = v.norm1_sq - v.norm2_sq;
    tangent_checks(p, pp);
    return pp;
  });

  rep.min_v1_minus_v2 = std::numeric_limits<double>::infinity();
  for (const auto& pp : per) {
    rep.min_v1_minus_v2 = std::min(rep.min_v1_minus_v2, pp.diff);
    rep.identity_max_error = std::max(rep.identity_max_error, pp.identity_err);
  }
  rep.v1_dominates = rep.min_v1_minus_v2 >= 0.0;

  for (double c : c_schedule) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& pp : per) {
      double e = std::exp(c * pp.g2);
      mn = std::min(mn, e * pp.base + 0.5 * c * e * pp.diff);
    }
    rep.steps.push_back({c, mn});
    if (mn > 0.0) {
      rep.c_used = c;
      break;
    }
  }
  rep.verdict = rep.c_used ? "positive" : "inconclusive";

  // eta: angular form nonzero where |g| >= eta, dg of full rank on the link where |g| <= eta
  std::vector<PerPoint> all = per;
  if (opt.binding_samples > 0) {
    double gmax = 0;
    for (const auto& pp : per) gmax = std::max(gmax, pp.gabs);
    std::vector<MixedPolynomial> comps = G.components;
    comps.push_back(g);
    MixedMap H(G.nvars, comps);
    FiberTarget fiber;
    const double small = 1e-2 * gmax;
    fiber.target = [&, small](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
      std::vector<cplx> t(H.k(), 0.0);
      t.back() = std::polar(small, u(rng));
      return t;
    };
    LinkSample near = sample_fiber(H, r, fiber, opt.binding_samples, stream_seed(seed, 0xb1d, 0), so);
    for (const auto& p : near.points) {
      PerPoint pp;
      pp.gabs = std::abs(evaluate(g, p));
      if (pp.gabs < opt.binding_margin) continue;
      tangent_checks(p, pp);
      all.push_back(pp);
    }
  }
  double lo = 0.0, hi = std::numeric_limits<double>::infinity(), gmin = std::numeric_limits<double>::infinity();
  for (const auto& pp : all) {
    gmin = std::min(gmin, pp.gabs);
    if (!pp.angular_ok) {
      ++rep.angular_failures;
      lo = std::max(lo, pp.gabs);
    }
    if (!pp.rank_ok) {
      ++rep.rank_failures;
      hi = std::min(hi, pp.gabs);
    }
  }
  if (lo < hi) {
    if (std::isfinite(hi))
      rep.eta = 0.5 * (lo + hi);
    else
      rep.eta = lo > 0.0 ? 2.0 * lo : gmin;
  }
  rep.points = std::move(pts);
  return rep;
}

DScanReport binding_contact_check(const MixedMap& G, std::size_t i, double r, std::size_t samples, std::uint64_t seed,
                                  const DScanOptions& opt) {
  if (i >= G.nvars) throw std::invalid_argument("binding index out of range");
  std::vector<std::size_t> I;
  for (std::size_t j = 0; j < G.nvars; ++j)
    if (j != i) I.push_back(j);
  MixedMap H = drop_variable(restrict_to(G, I), i);
  for (const auto& c : H.components)
    if (c.is_zero()) throw std::invalid_argument("restriction has a zero component");
  return holomorphic_like_scan(H, r, samples, seed, opt);
}

}  // namespace mixsing
