#include "mixsing/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mixsing/parallel.hpp"

namespace mixsing {

SiegelFrame::SiegelFrame(ComplexMatrix m) : lambda(std::move(m)) {
  if (lambda.empty() || lambda[0].empty()) throw std::invalid_argument("frame must be nonempty");
  for (const auto& row : lambda)
    if (row.size() != lambda[0].size()) throw std::invalid_argument("ragged frame matrix");
}

std::vector<Rational> SiegelFrame::column_real(std::size_t i) const {
  std::vector<Rational> v;
  v.reserve(2 * k());
  for (const auto& row : lambda) {
    v.push_back(row[i].re);
    v.push_back(row[i].im);
  }
  return v;
}

SiegelFrame SiegelFrame::columns(const std::vector<std::size_t>& subset) const {
  ComplexMatrix m(k());
  for (std::size_t r = 0; r < k(); ++r)
    for (auto i : subset) m[r].push_back(lambda[r].at(i));
  return SiegelFrame(std::move(m));
}

bool SiegelFrame::shape_ok() const { return 2 * k() < n() && complex_rank(lambda) == k(); }

std::size_t complex_rank(const ComplexMatrix& m0) {
  ComplexMatrix m = m0;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      ComplexRational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

ComplexRational determinant(ComplexMatrix m) {
  const std::size_t n = m.size();
  ComplexRational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return ComplexRational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      ComplexRational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

HullMembership origin_in_hull(const SiegelFrame& frame, const std::vector<std::size_t>& subset) {
  const std::size_t d = 2 * frame.k();
  RationalMatrix A(d + 1, std::vector<Rational>(subset.size()));
  for (std::size_t c = 0; c < subset.size(); ++c) {
    auto col = frame.column_real(subset[c]);
    for (std::size_t r = 0; r < d; ++r) A[r][c] = col[r];
    A[d][c] = 1;
  }
  std::vector<Rational> b(d + 1, Rational(0));
  b[d] = 1;

  LpFeasibility lp = solve_feasibility(A, b);
  HullMembership out;
  out.contains_origin = lp.feasible;
  if (lp.feasible) {
    if (!verify_feasible_point(A, b, lp.x)) throw std::logic_error("hull weights failed exact verification");
    out.weights = lp.x;
  } else {
    if (!verify_farkas(A, b, lp.farkas)) throw std::logic_error("Farkas certificate failed exact verification");
    // y = (c, e): <c, col> + e >= 0 and e < 0, so <c, col> > 0
    out.functional.assign(lp.farkas.begin(), lp.farkas.begin() + static_cast<long>(d));
  }
  return out;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m > n) return out;
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    out.push_back(idx);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::optional<std::vector<Rational>> is_siegel(const SiegelFrame& frame) {
  std::vector<std::size_t> all(frame.n());
  std::iota(all.begin(), all.end(), 0);
  auto h = origin_in_hull(frame, all);
  if (!h.contains_origin) return std::nullopt;
  return h.weights;
}

namespace {

bool weakly_hyperbolic(const SiegelFrame& frame, const std::vector<std::size_t>& cols,
                       std::vector<SubsetFunctional>* functionals, std::optional<std::vector<std::size_t>>* bad) {
  const std::size_t m = 2 * frame.k();
  for (const auto& pick : subsets_of_size(cols.size(), m)) {
    std::vector<std::size_t> s;
    for (auto p : pick) s.push_back(cols[p]);
    auto h = origin_in_hull(frame, s);
    if (h.contains_origin) {
      if (bad) *bad = s;
      return false;
    }
    if (functionals) functionals->push_back({s, h.functional});
  }
  return true;
}

}  // namespace

AdmissibilityReport is_admissible(const SiegelFrame& frame) {
  AdmissibilityReport r;
  if (auto t = is_siegel(frame)) {
    r.siegel = true;
    r.weights = *t;
  }
  std::vector<std::size_t> all(frame.n());
  std::iota(all.begin(), all.end(), 0);
  r.weakly_hyperbolic = weakly_hyperbolic(frame, all, &r.functionals, &r.violating_subset);
  return r;
}

StrongAdmissibilityReport is_strongly_admissible(const SiegelFrame& frame) {
  StrongAdmissibilityReport r;
  const std::size_t n = frame.n(), m = 2 * frame.k();
  bool ok = true;
  for (std::size_t size = m; size <= n; ++size) {
    for (const auto& s : subsets_of_size(n, size)) {
      SubsetAdmissibility sa;
      sa.subset = s;
      sa.siegel = origin_in_hull(frame, s).contains_origin;
      sa.weakly_hyperbolic = weakly_hyperbolic(frame, s, nullptr, nullptr);
      bool good = sa.weakly_hyperbolic && (size < n || sa.siegel);
      if (!good && ok) {
        ok = false;
        r.failing_subset = s;
      }
      r.subsets.push_back(std::move(sa));
    }
  }
  if (n < m) {
    ok = false;
    r.failing_subset = std::vector<std::size_t>{};
  }
  r.strongly_admissible = ok;
  return r;
}

MixedMap build_siegel_map(const SiegelFrame& frame) {
  const std::size_t n = frame.n();
  std::vector<MixedPolynomial> comps;
  for (const auto& row : frame.lambda) {
    std::vector<MixedMonomial> terms;
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e(n, 0);
      e[i] = 1;
      terms.push_back({row[i], e, e});
    }
    comps.emplace_back(n, std::move(terms));
  }
  return MixedMap(n, std::move(comps));
}

MixedPolynomial twisted_pham_brieskorn(const std::vector<std::uint32_t>& a, const std::vector<std::size_t>& sigma,
                                       const std::vector<ComplexRational>& lambda) {
  const std::size_t n = a.size();
  if (sigma.size() != n || lambda.size() != n) throw std::invalid_argument("twisted Pham-Brieskorn: length mismatch");
  std::vector<bool> seen(n, false);
  for (auto s : sigma) {
    if (s >= n || seen[s]) throw std::invalid_argument("sigma is not a permutation");
    seen[s] = true;
  }
  std::vector<MixedMonomial> terms;
  for (std::size_t i = 0; i < n; ++i) {
    Exponent mu(n, 0), nu(n, 0);
    mu[i] = a[i];
    nu[sigma[i]] += 1;
    terms.push_back({lambda[i], mu, nu});
  }
  return MixedPolynomial(n, std::move(terms));
}

MixedCovering::MixedCovering(std::vector<std::uint32_t> a_, std::vector<std::uint32_t> b_)
    : a(std::move(a_)), b(std::move(b_)) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("covering: exponent length mismatch");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0 || b[j] == 0) throw std::invalid_argument("covering exponents must be positive");
    if (a[j] == b[j]) throw std::invalid_argument("covering needs a_j != b_j");
  }
}

bool MixedCovering::homogeneous() const {
  return std::all_of(a.begin(), a.end(), [&](auto v) { return v == a[0]; }) &&
         std::all_of(b.begin(), b.end(), [&](auto v) { return v == b[0]; });
}

MixedPolynomial pullback(const MixedCovering& phi, const MixedPolynomial& f) {
  if (phi.nvars() != f.nvars()) throw std::invalid_argument("covering and polynomial disagree on nvars");
  std::vector<MixedMonomial> terms;
  for (const auto& t : f.terms()) {
    MixedMonomial m = t;
    for (std::size_t j = 0; j < f.nvars(); ++j) {
      m.mu[j] = phi.a[j] * t.mu[j] + phi.b[j] * t.nu[j];
      m.nu[j] = phi.b[j] * t.mu[j] + phi.a[j] * t.nu[j];
    }
    terms.push_back(std::move(m));
  }
  return MixedPolynomial(f.nvars(), std::move(terms));
}

MixedMap pullback(const MixedCovering& phi, const MixedMap& F) {
  MixedMap G = F;
  for (auto& c : G.components) c = pullback(phi, c);
  return G;
}

MixedMap mixed_hamm_map(const ComplexMatrix& lambda, const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (lambda.empty()) throw std::invalid_argument("Hamm matrix must be nonempty");
  const std::size_t n = lambda[0].size();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("Hamm exponents: length mismatch");
  std::vector<MixedPolynomial> comps;
  for (const auto& row : lambda) {
    if (row.size() != n) throw std::invalid_argument("ragged Hamm matrix");
    std::vector<MixedMonomial> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[j] == 0) throw std::invalid_argument("Hamm exponents must be positive");
      Exponent mu(n, 0), nu(n, 0);
      mu[j] = a[j] + b[j];
      nu[j] = b[j];
      terms.push_back({row[j], mu, nu});
    }
    comps.emplace_back(n, std::move(terms));
  }
  return MixedMap(n, std::move(comps));
}

MixedMap hamm_map(const ComplexMatrix& lambda, const std::vector<std::uint32_t>& a) {
  return mixed_hamm_map(lambda, a, std::vector<std::uint32_t>(a.size(), 0));
}

MixedMap hamm_family(const MixedMap& G, const MixedMap& F, const Rational& t) {
  if (t < 0 || t > 1) throw std::invalid_argument("family parameter outside [0, 1]");
  if (G.nvars != F.nvars || G.k() != F.k()) throw std::invalid_argument("family endpoints disagree in shape");
  std::vector<MixedPolynomial> comps;
  for (std::size_t i = 0; i < G.k(); ++i)
    comps.push_back(scale(G.components[i], ComplexRational(Rational(1 - t))) +
                    scale(F.components[i], ComplexRational(t)));
  return MixedMap(G.nvars, std::move(comps));
}

std::vector<Minor> maximal_minors(const ComplexMatrix& lambda) {
  std::vector<Minor> out;
  const std::size_t k = lambda.size(), n = k ? lambda[0].size() : 0;
  for (const auto& cols : subsets_of_size(n, k)) {
    ComplexMatrix sub(k);
    for (std::size_t r = 0; r < k; ++r)
      for (auto c : cols) sub[r].push_back(lambda[r][c]);
    out.push_back({cols, determinant(std::move(sub))});
  }
  return out;
}

ComplexMatrix random_hamm_matrix(std::size_t k, std::size_t n, std::uint64_t seed) {
  if (k == 0 || n < k) throw std::invalid_argument("random Hamm matrix needs 1 <= k <= n");
  std::mt19937_64 rng(stream_seed(seed, 0x4a11, 0));
  std::uniform_int_distribution<int> dist(-4, 4);
  for (;;) {
    ComplexMatrix m(k, std::vector<ComplexRational>(n));
    for (auto& row : m)
      for (auto& v : row) {
        int x = 0;
        while (x == 0) x = dist(rng);
        v = ComplexRational(x);
      }
    auto minors = maximal_minors(m);
    if (std::all_of(minors.begin(), minors.end(), [](const Minor& mi) { return !mi.value.is_zero(); })) return m;
  }
}

SiegelFrame random_admissible_frame(std::size_t k, std::size_t n, std::uint64_t seed) {
  if (2 * k >= n) throw std::invalid_argument("admissible frames need 2k < n");
  std::mt19937_64 rng(stream_seed(seed, 0x5e1e, 0));
  std::uniform_int_distribution<int> dist(-4, 4);
  for (;;) {
    ComplexMatrix m(k, std::vector<ComplexRational>(n));
    for (auto& row : m)
      for (auto& v : row) {
        int re = dist(rng), im = dist(rng);
        v = ComplexRational(Rational(re), Rational(im));
      }
    SiegelFrame f(m);
    if (!f.shape_ok()) continue;
    if (is_strongly_admissible(f).strongly_admissible) return f;
  }
}

}  // namespace mixsing
