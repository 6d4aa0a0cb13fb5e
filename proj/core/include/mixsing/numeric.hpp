#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mixsing/polynomial.hpp"

namespace mixsing {

using cplx = std::complex<double>;
using PointC = std::vector<cplx>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

cplx evaluate(const MixedPolynomial& f, const PointC& p);
std::vector<cplx> evaluate(const MixedMap& F, const PointC& p);

// (x1, y1, x2, y2, ...) <-> (z1, z2, ...)
RealVector to_real(const PointC& p);
PointC to_complex(const RealVector& v);
double norm(const PointC& p);

// Polynomial with double coefficients and precomputed Wirtinger derivatives.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const MixedPolynomial& f);

  std::size_t nvars() const { return nvars_; }
  cplx value(const PointC& p) const;
  // (f_{z_j})_j and (f_{zbar_j})_j at p
  void gradients(const PointC& p, std::vector<cplx>& dz, std::vector<cplx>& dzbar) const;

 private:
  struct Term {
    cplx coeff;
    std::vector<std::uint32_t> mu, nu;
  };
  static cplx eval_terms(const std::vector<Term>& terms, const PointC& p);
  static std::vector<Term> compile(const MixedPolynomial& f);

  std::size_t nvars_ = 0;
  std::vector<Term> value_;
  std::vector<std::vector<Term>> dz_, dzbar_;
};

class CompiledMap {
 public:
  CompiledMap() = default;
  explicit CompiledMap(const MixedMap& F);

  std::size_t nvars() const { return nvars_; }
  std::size_t k() const { return comps_.size(); }
  std::vector<cplx> value(const PointC& p) const;
  // dz[i][j] = f^i_{z_j}, dzbar[i][j] = f^i_{zbar_j}
  void gradients(const PointC& p, std::vector<std::vector<cplx>>& dz, std::vector<std::vector<cplx>>& dzbar) const;
  // 2k x 2n, rows (Re f1, Im f1, ...), columns (x1, y1, ...)
  RealMatrix real_jacobian(const PointC& p) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<CompiledPolynomial> comps_;
};

RealMatrix real_jacobian(const MixedMap& F, const PointC& p);

// Real Jacobian rows from Wirtinger data: d/dx = dz + dzbar, d/dy = i(dz - dzbar).
void real_gradient_rows(const std::vector<cplx>& dz, const std::vector<cplx>& dzbar, double* re_row, double* im_row,
                        std::ptrdiff_t stride);

// Singular values in decreasing order.
RealVector singular_values(const RealMatrix& m);

// The min(rows, cols)-th singular value. right_vector spans a kernel direction when the matrix is wide,
// otherwise it is the right singular vector of sigma_min.
struct SmallestSingular {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  RealVector right_vector;
};
SmallestSingular smallest_singular(const RealMatrix& m);

// Rank-deficiency decision used throughout: sigma_min < tol * sigma_max (or the matrix is zero).
bool rank_deficient(const SmallestSingular& s, double tol);

}  // namespace mixsing
