#include "mixsing/newton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mixsing/lp.hpp"

namespace mixsing {

namespace {

std::uint64_t pair(const Weight& P, const MixedMonomial& t) {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < P.size(); ++j) s += std::uint64_t(P[j]) * (t.mu[j] + t.nu[j]);
  return s;
}

void check_weight(const MixedPolynomial& f, const Weight& P) {
  if (P.size() != f.nvars()) throw PolynomialError("weight length does not match nvars");
  for (auto p : P)
    if (p == 0) throw PolynomialError("weights must be strictly positive");
}

bool dominated(const Exponent& q, const Exponent& p) {  // q >= p, q != p
  bool strict = false;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] < p[j]) return false;
    if (q[j] > p[j]) strict = true;
  }
  return strict;
}

// Points of the support not dominated by another support point; only these can minimize.
std::vector<Exponent> minimal_points(const std::vector<Exponent>& s) {
  std::vector<Exponent> out;
  for (const auto& q : s) {
    bool dom = std::any_of(s.begin(), s.end(), [&](const Exponent& p) { return dominated(q, p); });
    if (!dom) out.push_back(q);
  }
  return out;
}

}  // namespace

std::vector<Exponent> radial_support(const MixedPolynomial& f) {
  std::set<Exponent> s;
  for (const auto& t : f.terms()) {
    Exponent r(f.nvars());
    for (std::size_t j = 0; j < f.nvars(); ++j) r[j] = t.mu[j] + t.nu[j];
    s.insert(std::move(r));
  }
  return {s.begin(), s.end()};
}

std::uint64_t radial_degree(const MixedPolynomial& f, const Weight& P) {
  if (f.is_zero()) throw PolynomialError("face of the zero polynomial");
  check_weight(f, P);
  std::uint64_t best = UINT64_MAX;
  for (const auto& q : minimal_points(radial_support(f))) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < q.size(); ++j) s += std::uint64_t(P[j]) * q[j];
    best = std::min(best, s);
  }
  return best;
}

MixedPolynomial face_function(const MixedPolynomial& f, const Weight& P) {
  std::uint64_t d = radial_degree(f, P);
  std::vector<MixedMonomial> keep;
  for (const auto& t : f.terms())
    if (pair(P, t) == d) keep.push_back(t);
  return MixedPolynomial(f.nvars(), std::move(keep));
}

MixedPolynomial face_or_zero(const MixedPolynomial& f, const Weight& P) {
  return f.is_zero() ? f : face_function(f, P);
}

MixedMap face_map(const MixedMap& F, const Weight& P) {
  MixedMap G = F;
  for (auto& c : G.components) c = face_function(c, P);
  return G;
}

bool is_convenient(const MixedPolynomial& f) {
  if (f.is_zero()) throw PolynomialError("convenience of the zero polynomial");
  const std::size_t n = f.nvars();
  std::vector<bool> axis(n, false);
  for (const auto& t : f.terms()) {
    std::size_t nonzero = 0, which = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (t.mu[j] + t.nu[j] > 0) {
        ++nonzero;
        which = j;
      }
    if (nonzero == 1) axis[which] = true;
  }
  return std::all_of(axis.begin(), axis.end(), [](bool b) { return b; });
}

PurelyMixedResult purely_mixed(const MixedPolynomial& f) {
  PurelyMixedResult r;
  r.purely_mixed = !f.is_zero();
  for (const auto& t : f.terms()) {
    std::optional<std::size_t> w;
    for (std::size_t i = 0; i < f.nvars() && !w; ++i)
      if (t.mu[i] >= 1 && t.nu[i] >= 1 && t.mu[i] + t.nu[i] >= 3) w = i;
    if (!w) r.purely_mixed = false;
    r.witnesses.push_back(w);
  }
  return r;
}

namespace {

// One-dimensional rational null space of an (n-1) x n matrix, or nullopt.
std::optional<std::vector<Rational>> null_vector(RationalMatrix m, std::size_t n) {
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational piv = m[row][c];
    for (auto& v : m[row]) v /= piv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) m[r][j] -= f * m[row][j];
    }
    pivcol.push_back(c);
    ++row;
  }
  if (pivcol.size() != n - 1) return std::nullopt;
  std::size_t freec = 0;
  while (std::find(pivcol.begin(), pivcol.end(), freec) != pivcol.end()) ++freec;
  std::vector<Rational> v(n, Rational(0));
  v[freec] = 1;
  for (std::size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = -m[r][freec];
  return v;
}

}  // namespace

std::vector<Weight> compact_facet_normals(const std::vector<Exponent>& support0) {
  std::vector<Exponent> pts = minimal_points(support0);
  std::set<Weight> out;
  if (pts.empty()) return {};
  const std::size_t n = pts[0].size();
  if (n == 1) return {Weight{1}};

  std::vector<bool> pick(pts.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(n, pts.size())), true);
  if (pts.size() < n) return {};
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pick[i]) idx.push_back(i);
    RationalMatrix m;
    for (std::size_t r = 1; r < idx.size(); ++r) {
      std::vector<Rational> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = Rational(long(pts[idx[r]][j]) - long(pts[idx[0]][j]));
      m.push_back(std::move(row));
    }
    auto c = null_vector(std::move(m), n);
    if (!c) continue;
    int s = sgn((*c)[0]);
    if (s == 0) continue;
    bool same = std::all_of(c->begin(), c->end(), [&](const Rational& v) { return sgn(v) == s; });
    if (!same) continue;
    if (s < 0)
      for (auto& v : *c) v = -v;
    // primitive integer vector
    mpz_class l = 1;
    for (auto& v : *c) l = lcm(l, v.get_den());
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (auto& v : *c) {
      ints.push_back(mpz_class(v * l));
      g = gcd(g, ints.back());
    }
    Weight P;
    for (auto& v : ints) P.push_back(static_cast<std::uint32_t>(mpz_class(v / g).get_ui()));
    // supporting: <P, q> >= <P, p0> for every point
    auto dot = [&](const Exponent& q) {
      std::uint64_t t = 0;
      for (std::size_t j = 0; j < n; ++j) t += std::uint64_t(P[j]) * q[j];
      return t;
    };
    std::uint64_t base = dot(pts[idx[0]]);
    if (std::all_of(pts.begin(), pts.end(), [&](const Exponent& q) { return dot(q) >= base; })) out.insert(P);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return {out.begin(), out.end()};
}

WeightEnumeration enumerate_weights(const MixedMap& F, std::uint32_t bound) {
  if (bound == 0) throw PolynomialError("weight bound must be positive");
  const std::size_t n = F.nvars;

  // radial exponents per component/term
  std::vector<std::vector<Exponent>> radial(F.k());
  for (std::size_t i = 0; i < F.k(); ++i)
    for (const auto& t : F.components[i].terms()) {
      Exponent r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = t.mu[j] + t.nu[j];
      radial[i].push_back(std::move(r));
    }

  using Key = std::vector<std::vector<std::size_t>>;
  auto signature = [&](const Weight& P) {
    Key key(F.k());
    for (std::size_t i = 0; i < F.k(); ++i) {
      std::uint64_t best = UINT64_MAX;
      std::vector<std::uint64_t> vals;
      for (const auto& r : radial[i]) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < n; ++j) s += std::uint64_t(P[j]) * r[j];
        vals.push_back(s);
        best = std::min(best, s);
      }
      for (std::size_t t = 0; t < vals.size(); ++t)
        if (vals[t] == best) key[i].push_back(t);
    }
    return key;
  };

  std::map<Key, Weight> seen;
  auto offer = [&](const Weight& P) { seen.try_emplace(signature(P), P); };

  Weight P(n, 1);
  for (;;) {
    offer(P);
    std::size_t j = n;
    while (j > 0 && P[j - 1] == bound) P[--j] = 1;
    if (j == 0) break;
    ++P[j - 1];
  }
  if (n <= 4)
    for (const auto& c : F.components)
      if (!c.is_zero())
        for (const auto& normal : compact_facet_normals(radial_support(c))) offer(normal);

  WeightEnumeration out;
  out.bound = bound;
  std::vector<Weight> reps;
  for (auto& [key, w] : seen) reps.push_back(w);
  std::sort(reps.begin(), reps.end());
  for (const auto& w : reps) {
    WeightClass wc{w, {}};
    for (const auto& c : F.components) wc.faces.push_back(face_or_zero(c, w));
    out.weights.push_back(std::move(wc));
  }
  return out;
}

}  // namespace mixsing
