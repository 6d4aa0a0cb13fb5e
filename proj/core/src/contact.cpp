#include "mixsing/contact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mixsing/exterior.hpp"
#include "mixsing/parallel.hpp"
#include "mixsing/sampling.hpp"

namespace mixsing {

namespace {

void gradients(const MixedPolynomial& f, const PointC& p, std::vector<cplx>& dz, std::vector<cplx>& dzbar) {
  CompiledPolynomial(f).gradients(p, dz, dzbar);
}

Multivector dalpha(std::size_t n) {
  Multivector m(2 * n);
  for (std::size_t j = 0; j < n; ++j) m.add((std::uint32_t{1} << (2 * j)) | (std::uint32_t{1} << (2 * j + 1)), 4.0);
  return m;
}

Multivector power(const Multivector& m, std::size_t e) {
  Multivector out = Multivector::scalar(m.dim(), 1.0);
  for (std::size_t i = 0; i < e; ++i) out = out.wedge(m);
  return out;
}

}  // namespace

Eigen::MatrixXcd coeff_A(const PointC& p) {
  const auto n = Eigen::Index(p.size());
  Eigen::MatrixXcd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = 2.0 * std::conj(p[std::size_t(i)]) * p[std::size_t(j)];
  return A;
}

Eigen::MatrixXcd coeff_B(const MixedPolynomial& f, const PointC& p) {
  std::vector<cplx> dz, dzb;
  gradients(f, p, dz, dzb);
  const auto n = Eigen::Index(p.size());
  Eigen::MatrixXcd B(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      auto a = std::size_t(i), b = std::size_t(j);
      B(i, j) = 0.5 * (dz[a] * std::conj(dz[b]) - std::conj(dzb[a]) * dzb[b]);
    }
  return B;
}

Eigen::MatrixXd coeff_C(const MixedPolynomial& f, const PointC& p) {
  std::vector<cplx> dz, dzb;
  gradients(f, p, dz, dzb);
  const auto n = Eigen::Index(p.size());
  Eigen::MatrixXd C(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      auto a = std::size_t(i), b = std::size_t(j);
      C(i, j) = std::norm(std::conj(p[a]) * dz[b] - std::conj(p[b]) * dz[a]) -
                std::norm(p[a] * dzb[b] - p[b] * dzb[a]);
    }
  return C;
}

double normalization_constant(std::size_t n, std::size_t k) {
  if (n < k + 1) throw std::invalid_argument("contact form needs n >= k + 1");
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const std::size_t m = n - k - 1;
  Multivector ref = Multivector::scalar(2 * n, 4.0);
  for (std::size_t a = m; a < n; ++a) {
    Multivector pair(2 * n);
    pair.add((std::uint32_t{1} << (2 * a)) | (std::uint32_t{1} << (2 * a + 1)), 1.0);
    ref = ref.wedge(pair);
  }
  double v = power(dalpha(n), m).wedge(ref).top();
  cache[key] = v;
  return v;
}

double D_oracle(const MixedMap& F, const PointC& p) {
  const std::size_t n = F.nvars, k = F.k();
  if (n < k + 1) throw std::invalid_argument("contact form needs n >= k + 1");
  if (p.size() != n) throw PolynomialError("point dimension does not match nvars");
  std::vector<double> drho(2 * n), alpha(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    double x = p[j].real(), y = p[j].imag();
    drho[2 * j] = 2 * x;
    drho[2 * j + 1] = 2 * y;
    alpha[2 * j] = -2 * y;
    alpha[2 * j + 1] = 2 * x;
  }
  RealMatrix J = real_jacobian(F, p);
  Multivector form = Multivector::covector(drho).wedge(Multivector::covector(alpha));
  for (Eigen::Index r = 0; r < J.rows(); ++r) {
    std::vector<double> row(std::size_t(J.cols()));
    for (Eigen::Index c = 0; c < J.cols(); ++c) row[std::size_t(c)] = J(r, c);
    form = form.wedge(Multivector::covector(row));
  }
  form = form.wedge(power(dalpha(n), n - k - 1));
  return form.top() / normalization_constant(n, k);
}

double D_closed(const MixedMap& F, const PointC& p) {
  const std::size_t n = F.nvars, k = F.k();
  if (n < k + 1) throw std::invalid_argument("contact form needs n >= k + 1");
  std::vector<std::vector<cplx>> dz, dzb;
  CompiledMap(F).gradients(p, dz, dzb);
  const auto size = Eigen::Index(2 * k + 2);
  double total = 0.0;
  for (const auto& J : subsets_of_size(n, k + 1)) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(size, size);
    for (std::size_t c = 0; c < J.size(); ++c) {
      std::size_t a = J[c];
      auto cz = Eigen::Index(2 * c), czb = Eigen::Index(2 * c + 1);
      M(0, cz) = std::conj(p[a]);
      M(1, czb) = p[a];
      for (std::size_t l = 0; l < k; ++l) {
        auto rf = Eigen::Index(2 + 2 * l), rfb = Eigen::Index(3 + 2 * l);
        M(rf, cz) = dz[l][a];
        M(rf, czb) = dzb[l][a];
        M(rfb, cz) = std::conj(dzb[l][a]);
        M(rfb, czb) = std::conj(dz[l][a]);
      }
    }
    total += M.determinant().real();
  }
  return total;
}

double D_pairs(const MixedPolynomial& f, const PointC& p) {
  Eigen::MatrixXd C = coeff_C(f, p);
  double s = 0;
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = i + 1; j < C.cols(); ++j) s += C(i, j);
  return s;
}

std::vector<PullbackFactor> pullback_D_factor(const MixedMap& F, const MixedCovering& phi, const PointC& w) {
  if (!F.is_holomorphic()) throw std::invalid_argument("pullback factorization needs a holomorphic map");
  if (!phi.homogeneous()) throw std::invalid_argument("pullback factorization needs a homogeneous covering");
  const std::size_t n = F.nvars, k = F.k();
  if (phi.nvars() != n || w.size() != n) throw std::invalid_argument("dimension mismatch");
  if (n < k + 1) throw std::invalid_argument("contact form needs n >= k + 1");
  const int a = int(phi.a[0]), b = int(phi.b[0]);

  PointC z(n), c(n);
  for (std::size_t j = 0; j < n; ++j) {
    z[j] = std::pow(w[j], a) * std::pow(std::conj(w[j]), b);
    c[j] = std::pow(w[j], a - 1) * std::pow(std::conj(w[j]), b - 1);
  }
  std::vector<std::vector<cplx>> dz, dzb;
  CompiledMap(F).gradients(z, dz, dzb);

  std::vector<PullbackFactor> out;
  const double sign = std::pow(double(a * a - b * b), double(k));
  for (const auto& J : subsets_of_size(n, k + 1)) {
    Eigen::MatrixXcd M(Eigen::Index(k + 1), Eigen::Index(k + 1));
    double modulus = 1.0;
    for (std::size_t col = 0; col < J.size(); ++col) {
      std::size_t j = J[col];
      modulus *= std::norm(w[j]);
      M(0, Eigen::Index(col)) = 1.0;
      for (std::size_t l = 0; l < k; ++l) M(Eigen::Index(l + 1), Eigen::Index(col)) = c[j] * dz[l][j];
    }
    PullbackFactor pf;
    pf.subset = J;
    pf.sign_factor = sign;
    pf.modulus_factor = modulus;
    pf.determinant_factor = std::norm(M.determinant());
    out.push_back(std::move(pf));
  }
  return out;
}

void classify_D(DScanReport& rep) {
  rep.samples = rep.values.size();
  if (rep.values.empty()) {
    rep.verdict = "sampling_failure";
    return;
  }
  double scale = 0;
  for (double v : rep.values) scale = std::max(scale, std::abs(v));
  rep.min_D = *std::min_element(rep.values.begin(), rep.values.end());
  rep.max_D = *std::max_element(rep.values.begin(), rep.values.end());
  const double zt = 1e-12 * scale;
  std::size_t pos = 0, neg = 0, zero = 0;
  for (double v : rep.values) {
    if (v > zt)
      ++pos;
    else if (v < -zt)
      ++neg;
    else
      ++zero;
  }
  const std::size_t total = rep.values.size();
  if (scale == 0.0 || zero == total) {
    rep.verdict = "all_zero";
    rep.violations = 0;
  } else if (pos == total) {
    rep.verdict = "strictly_positive_on_samples";
  } else if (neg == total) {
    rep.verdict = "strictly_negative_on_samples";
  } else if (neg == 0) {
    rep.verdict = "nonnegative_on_samples";
  } else if (pos == 0) {
    rep.verdict = "nonpositive_on_samples";
  } else {
    rep.verdict = "mixed_sign";
  }
  if (rep.verdict != "all_zero") rep.violations = total - std::max(pos, neg);
}

DScanReport holomorphic_like_scan(const MixedMap& F, double r, std::size_t samples, std::uint64_t seed,
                                  const DScanOptions& opt) {
  const std::size_t n = F.nvars, k = F.k();
  if (n < k + 1) throw std::invalid_argument("contact form needs n >= k + 1");
  DScanReport rep;
  rep.radius = r;
  rep.seed = seed;
  std::vector<PointC> pts;
  if (opt.on_link) {
    SampleOptions so;
    so.workers = opt.workers;
    LinkSample ls = sample_link(F, r, samples, seed, so);
    pts = std::move(ls.points);
    rep.acceptance_ratio = ls.acceptance_ratio;
  } else {
    for (std::size_t i = 0; i < samples; ++i) {
      std::mt19937_64 rng(stream_seed(seed, 0xba11, i));
      pts.push_back(random_ball_point(rng, n, r));
    }
    rep.acceptance_ratio = 1.0;
  }
  CompiledMap cm(F);
  struct Eval {
    bool excluded = false;
    double D = 0.0;
  };
  auto evals = parallel_map<Eval>(pts.size(), opt.workers, [&](std::size_t i) {
    const PointC& p = pts[i];
    RealMatrix S(Eigen::Index(2 * k + 1), Eigen::Index(2 * n));
    S.topRows(Eigen::Index(2 * k)) = cm.real_jacobian(p);
    S.row(Eigen::Index(2 * k)) = 2.0 * to_real(p).transpose();
    Eval e;
    if (rank_deficient(smallest_singular(S), opt.sigma_tol)) {
      e.excluded = true;
      return e;
    }
    e.D = D_oracle(F, p);
    return e;
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (evals[i].excluded) {
      ++rep.excluded;
      rep.excluded_points.push_back(pts[i]);
    } else {
      rep.points.push_back(pts[i]);
      rep.values.push_back(evals[i].D);
    }
  }
  classify_D(rep);
  return rep;
}

}  // namespace mixsing
