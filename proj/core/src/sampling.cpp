#include "mixsing/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "mixsing/parallel.hpp"

namespace mixsing {

SolveResult gauss_newton(const ResidualFn& fn, RealVector x, int max_iter, double stop_tol, const Retraction& retract) {
  RealVector r, rt;
  RealMatrix J, Jt;
  if (retract) retract(x);
  fn(x, r, J);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= stop_tol) break;
    RealVector step = J.completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) break;
    double f0 = r.squaredNorm();
    double t = 1.0;
    bool moved = false;
    while (t > 1e-10) {
      RealVector xt = x + t * step;
      if (retract) retract(xt);
      fn(xt, rt, Jt);
      if (rt.allFinite() && rt.squaredNorm() <= (1.0 - 1e-4 * t) * f0) {
        x = std::move(xt);
        r = rt;
        J = Jt;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return {x, r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0, it};
}

PointC random_sphere_point(std::mt19937_64& rng, std::size_t n, double r) {
  std::normal_distribution<double> g(0.0, 1.0);
  PointC p(n);
  double s = 0;
  do {
    s = 0;
    for (auto& z : p) {
      z = {g(rng), g(rng)};
      s += std::norm(z);
    }
  } while (s == 0.0);
  double f = r / std::sqrt(s);
  for (auto& z : p) z *= f;
  return p;
}

PointC random_ball_point(std::mt19937_64& rng, std::size_t n, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double rad = r * std::pow(u(rng), 1.0 / double(2 * n));
  return random_sphere_point(rng, n, rad);
}

namespace {

struct Attempt {
  bool ok = false;
  PointC p;
};

LinkSample run_sampler(std::size_t count, std::uint64_t seed, double r, const SampleOptions& opt,
                       const std::function<Attempt(std::mt19937_64&)>& one) {
  LinkSample out;
  out.radius = r;
  const std::size_t max_attempts = opt.attempt_factor * std::max<std::size_t>(count, 1) + 16;
  std::size_t next = 0;
  while (out.points.size() < count && next < max_attempts) {
    std::size_t need = count - out.points.size();
    std::size_t chunk = std::min(max_attempts - next, std::max<std::size_t>(need + need / 4, 8));
    std::size_t base = next;
    auto results = parallel_map<Attempt>(chunk, opt.workers, [&](std::size_t i) {
      std::mt19937_64 rng(stream_seed(seed, 0x11c, base + i));
      return one(rng);
    });
    for (std::size_t i = 0; i < chunk; ++i) {
      ++next;
      if (results[i].ok) {
        out.points.push_back(std::move(results[i].p));
        if (out.points.size() == count) break;
      }
    }
  }
  out.attempts = next;
  out.acceptance_ratio = next ? double(out.points.size()) / double(next) : 0.0;
  return out;
}

}  // namespace

LinkSample sample_fiber(const MixedMap& F, double r, const FiberTarget& fiber, std::size_t count, std::uint64_t seed,
                        const SampleOptions& opt) {
  if (!(r > 0)) throw std::invalid_argument("sampling radius must be positive");
  CompiledMap cm(F);
  const std::size_t n = F.nvars, k = F.k();
  const bool modulus_mode = fiber.modulus >= 0.0;
  if (modulus_mode && !(fiber.modulus > 0)) throw std::invalid_argument("fiber modulus must be positive");

  auto one = [&](std::mt19937_64& rng) {
    PointC start = random_sphere_point(rng, n, r);
    std::vector<cplx> target(k, 0.0);
    if (fiber.target) target = fiber.target(rng);
    // rows scaled so that the sphere equation is of order one
    const double rs = 1.0 / (r * r);
    ResidualFn fn = [&](const RealVector& x, RealVector& res, RealMatrix& J) {
      PointC p = to_complex(x);
      auto v = cm.value(p);
      RealMatrix JF = cm.real_jacobian(p);
      if (modulus_mode) {
        res.resize(2);
        J.resize(2, x.size());
        // relative defect (|F| - delta) / delta
        double m2 = 0;
        for (auto z : v) m2 += std::norm(z);
        const double m = std::sqrt(m2);
        res[0] = (m - fiber.modulus) / fiber.modulus;
        RealVector Fre(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
          Fre[2 * i] = v[i].real();
          Fre[2 * i + 1] = v[i].imag();
        }
        J.row(0) = (m > 0 ? 1.0 / (m * fiber.modulus) : 0.0) * (Fre.transpose() * JF);
      } else {
        res.resize(2 * k + 1);
        J.resize(2 * k + 1, x.size());
        for (std::size_t i = 0; i < k; ++i) {
          res[2 * i] = v[i].real() - target[i].real();
          res[2 * i + 1] = v[i].imag() - target[i].imag();
        }
        J.topRows(2 * k) = JF;
      }
      Eigen::Index last = res.size() - 1;
      res[last] = (x.squaredNorm() - r * r) * rs;
      J.row(last) = 2.0 * rs * x.transpose();
    };
    Retraction onto_sphere = [r](RealVector& x) {
      const double nx = x.norm();
      if (nx > 0) x *= r / nx;
    };
    SolveResult sr = gauss_newton(fn, to_real(start), opt.max_iter, 1e-15, onto_sphere);
    Attempt a;
    a.p = to_complex(sr.x);
    auto v = cm.value(a.p);
    double err = 0;
    if (modulus_mode) {
      double m = 0;
      for (auto z : v) m += std::norm(z);
      err = std::abs(std::sqrt(m) - fiber.modulus) / fiber.modulus;
    } else {
      for (std::size_t i = 0; i < k; ++i) err = std::max(err, std::abs(v[i] - target[i]));
    }
    double sphere = std::abs(norm(a.p) - r);
    a.ok = std::isfinite(err) && err < opt.accept_tol && sphere < opt.accept_tol;
    return a;
  };
  return run_sampler(count, seed, r, opt, one);
}

LinkSample sample_link(const MixedMap& F, double r, std::size_t count, std::uint64_t seed, const SampleOptions& opt) {
  return sample_fiber(F, r, FiberTarget{}, count, seed, opt);
}

}  // namespace mixsing
