#include "mixsing/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace mixsing {

namespace {

// Neumaier summation on each of the real and imaginary parts.
struct CompensatedSum {
  double s_re = 0, c_re = 0, s_im = 0, c_im = 0;

  static void add(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void operator+=(cplx v) {
    add(s_re, c_re, v.real());
    add(s_im, c_im, v.imag());
  }
  cplx result() const { return {s_re + c_re, s_im + c_im}; }
};

cplx monomial_value(const std::vector<std::uint32_t>& mu, const std::vector<std::uint32_t>& nu, const PointC& p) {
  cplx v(1.0, 0.0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::uint32_t e = 0; e < mu[j]; ++e) v *= p[j];
    if (nu[j]) {
      cplx c = std::conj(p[j]);
      for (std::uint32_t e = 0; e < nu[j]; ++e) v *= c;
    }
  }
  return v;
}

}  // namespace

cplx evaluate(const MixedPolynomial& f, const PointC& p) {
  if (p.size() != f.nvars()) throw PolynomialError("point dimension does not match nvars");
  CompensatedSum acc;
  for (const auto& t : f.terms()) acc += t.coeff.to_complex() * monomial_value(t.mu, t.nu, p);
  return acc.result();
}

std::vector<cplx> evaluate(const MixedMap& F, const PointC& p) {
  std::vector<cplx> out;
  out.reserve(F.k());
  for (const auto& c : F.components) out.push_back(evaluate(c, p));
  return out;
}

RealVector to_real(const PointC& p) {
  RealVector v(2 * static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) {
    v[2 * j] = p[j].real();
    v[2 * j + 1] = p[j].imag();
  }
  return v;
}

PointC to_complex(const RealVector& v) {
  PointC p(static_cast<std::size_t>(v.size() / 2));
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = {v[2 * j], v[2 * j + 1]};
  return p;
}

double norm(const PointC& p) {
  double s = 0;
  for (auto z : p) s += std::norm(z);
  return std::sqrt(s);
}

std::vector<CompiledPolynomial::Term> CompiledPolynomial::compile(const MixedPolynomial& f) {
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.coeff.to_complex(), t.mu, t.nu});
  return out;
}

CompiledPolynomial::CompiledPolynomial(const MixedPolynomial& f) : nvars_(f.nvars()), value_(compile(f)) {
  for (std::size_t j = 0; j < nvars_; ++j) {
    dz_.push_back(compile(wirtinger_z(f, j)));
    dzbar_.push_back(compile(wirtinger_zbar(f, j)));
  }
}

cplx CompiledPolynomial::eval_terms(const std::vector<Term>& terms, const PointC& p) {
  CompensatedSum acc;
  for (const auto& t : terms) acc += t.coeff * monomial_value(t.mu, t.nu, p);
  return acc.result();
}

cplx CompiledPolynomial::value(const PointC& p) const { return eval_terms(value_, p); }

void CompiledPolynomial::gradients(const PointC& p, std::vector<cplx>& dz, std::vector<cplx>& dzbar) const {
  dz.resize(nvars_);
  dzbar.resize(nvars_);
  for (std::size_t j = 0; j < nvars_; ++j) {
    dz[j] = eval_terms(dz_[j], p);
    dzbar[j] = eval_terms(dzbar_[j], p);
  }
}

CompiledMap::CompiledMap(const MixedMap& F) : nvars_(F.nvars) {
  for (const auto& c : F.components) comps_.emplace_back(c);
}

std::vector<cplx> CompiledMap::value(const PointC& p) const {
  std::vector<cplx> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.value(p));
  return out;
}

void CompiledMap::gradients(const PointC& p, std::vector<std::vector<cplx>>& dz,
                            std::vector<std::vector<cplx>>& dzbar) const {
  dz.resize(comps_.size());
  dzbar.resize(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i].gradients(p, dz[i], dzbar[i]);
}

void real_gradient_rows(const std::vector<cplx>& dz, const std::vector<cplx>& dzbar, double* re_row, double* im_row,
                        std::ptrdiff_t stride) {
  const cplx I(0.0, 1.0);
  for (std::size_t j = 0; j < dz.size(); ++j) {
    cplx dx = dz[j] + dzbar[j];
    cplx dy = I * (dz[j] - dzbar[j]);
    re_row[stride * static_cast<std::ptrdiff_t>(2 * j)] = dx.real();
    im_row[stride * static_cast<std::ptrdiff_t>(2 * j)] = dx.imag();
    re_row[stride * static_cast<std::ptrdiff_t>(2 * j + 1)] = dy.real();
    im_row[stride * static_cast<std::ptrdiff_t>(2 * j + 1)] = dy.imag();
  }
}

RealMatrix CompiledMap::real_jacobian(const PointC& p) const {
  std::vector<std::vector<cplx>> dz, dzbar;
  gradients(p, dz, dzbar);
  const auto k = static_cast<Eigen::Index>(comps_.size());
  const auto n = static_cast<Eigen::Index>(nvars_);
  RealMatrix J(2 * k, 2 * n);
  for (Eigen::Index i = 0; i < k; ++i)
    real_gradient_rows(dz[i], dzbar[i], &J(2 * i, 0), &J(2 * i + 1, 0), J.outerStride());
  return J;
}

RealMatrix real_jacobian(const MixedMap& F, const PointC& p) {
  if (p.size() != F.nvars) throw PolynomialError("point dimension does not match nvars");
  return CompiledMap(F).real_jacobian(p);
}

RealVector singular_values(const RealMatrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues();
}

SmallestSingular smallest_singular(const RealMatrix& m) {
  SmallestSingular out;
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  out.sigma_max = s[0];
  out.sigma_min = s[s.size() - 1];
  out.right_vector = svd.matrixV().col(m.cols() > m.rows() ? m.cols() - 1 : s.size() - 1);
  return out;
}

bool rank_deficient(const SmallestSingular& s, double tol) {
  if (s.sigma_max == 0.0) return true;
  return s.sigma_min < tol * s.sigma_max;
}

}  // namespace mixsing
