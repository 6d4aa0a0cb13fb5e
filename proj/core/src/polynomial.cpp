#include "mixsing/polynomial.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace mixsing {

namespace {

using Key = std::pair<Exponent, Exponent>;

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw PolynomialError("nvars mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

std::vector<MixedMonomial> canonical(std::size_t nvars, std::vector<MixedMonomial> terms) {
  std::map<Key, ComplexRational> acc;
  for (auto& t : terms) {
    if (t.mu.size() != nvars || t.nu.size() != nvars)
      throw PolynomialError("exponent length does not match nvars");
    auto [it, fresh] = acc.try_emplace(Key{t.mu, t.nu}, t.coeff);
    if (!fresh) it->second += t.coeff;
  }
  std::vector<MixedMonomial> out;
  out.reserve(acc.size());
  for (auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    c.re.canonicalize();
    c.im.canonicalize();
    out.push_back({c, key.first, key.second});
  }
  return out;
}

}  // namespace

std::uint32_t MixedMonomial::degree() const {
  std::uint32_t d = 0;
  for (std::size_t j = 0; j < mu.size(); ++j) d += mu[j] + nu[j];
  return d;
}

MixedPolynomial::MixedPolynomial(std::size_t nvars, std::vector<MixedMonomial> terms)
    : nvars_(nvars), terms_(canonical(nvars, std::move(terms))) {}

MixedPolynomial MixedPolynomial::constant(std::size_t nvars, const ComplexRational& c) {
  return MixedPolynomial(nvars, {{c, Exponent(nvars, 0), Exponent(nvars, 0)}});
}

MixedPolynomial MixedPolynomial::variable(std::size_t nvars, std::size_t j) {
  if (j >= nvars) throw PolynomialError("variable index out of range");
  Exponent mu(nvars, 0);
  mu[j] = 1;
  return MixedPolynomial(nvars, {{ComplexRational(1), mu, Exponent(nvars, 0)}});
}

MixedPolynomial MixedPolynomial::conj_variable(std::size_t nvars, std::size_t j) {
  if (j >= nvars) throw PolynomialError("variable index out of range");
  Exponent nu(nvars, 0);
  nu[j] = 1;
  return MixedPolynomial(nvars, {{ComplexRational(1), Exponent(nvars, 0), nu}});
}

MixedPolynomial MixedPolynomial::monomial(const ComplexRational& c, Exponent mu, Exponent nu) {
  if (mu.size() != nu.size()) throw PolynomialError("mu/nu length mismatch");
  std::size_t n = mu.size();
  return MixedPolynomial(n, {{c, std::move(mu), std::move(nu)}});
}

std::uint32_t MixedPolynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

bool MixedPolynomial::is_holomorphic() const {
  for (const auto& t : terms_)
    for (auto e : t.nu)
      if (e) return false;
  return true;
}

bool MixedPolynomial::is_real_valued() const { return conjugate(*this) == *this; }

MixedPolynomial& MixedPolynomial::operator+=(const MixedPolynomial& o) {
  check_same(nvars_, o.nvars_);
  std::vector<MixedMonomial> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  terms_ = canonical(nvars_, std::move(all));
  return *this;
}

MixedPolynomial& MixedPolynomial::operator-=(const MixedPolynomial& o) { return *this += -o; }

MixedPolynomial& MixedPolynomial::operator*=(const MixedPolynomial& o) {
  check_same(nvars_, o.nvars_);
  std::vector<MixedMonomial> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      MixedMonomial m{a.coeff * b.coeff, a.mu, a.nu};
      for (std::size_t j = 0; j < nvars_; ++j) {
        m.mu[j] += b.mu[j];
        m.nu[j] += b.nu[j];
      }
      prod.push_back(std::move(m));
    }
  }
  terms_ = canonical(nvars_, std::move(prod));
  return *this;
}

bool operator==(const MixedPolynomial& a, const MixedPolynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.mu != y.mu || x.nu != y.nu || x.coeff != y.coeff) return false;
  }
  return true;
}

MixedPolynomial operator+(MixedPolynomial a, const MixedPolynomial& b) { return a += b; }
MixedPolynomial operator-(MixedPolynomial a, const MixedPolynomial& b) { return a -= b; }
MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b) {
  MixedPolynomial r = a;
  r *= b;
  return r;
}

MixedPolynomial operator-(const MixedPolynomial& a) { return scale(a, ComplexRational(-1)); }

MixedPolynomial scale(const MixedPolynomial& f, const ComplexRational& c) {
  std::vector<MixedMonomial> t = f.terms();
  for (auto& m : t) m.coeff *= c;
  return MixedPolynomial(f.nvars(), std::move(t));
}

MixedPolynomial pow(const MixedPolynomial& f, unsigned e) {
  MixedPolynomial result = MixedPolynomial::constant(f.nvars(), ComplexRational(1));
  MixedPolynomial b = f;
  while (e) {
    if (e & 1u) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

MixedPolynomial conjugate(const MixedPolynomial& f) {
  std::vector<MixedMonomial> t;
  t.reserve(f.size());
  for (const auto& m : f.terms()) t.push_back({m.coeff.conj(), m.nu, m.mu});
  return MixedPolynomial(f.nvars(), std::move(t));
}

static MixedPolynomial differentiate(const MixedPolynomial& f, std::size_t j, bool conj_side) {
  if (j >= f.nvars()) throw PolynomialError("derivative index out of range");
  std::vector<MixedMonomial> t;
  for (const auto& m : f.terms()) {
    std::uint32_t e = conj_side ? m.nu[j] : m.mu[j];
    if (!e) continue;
    MixedMonomial d = m;
    d.coeff *= ComplexRational(static_cast<long>(e));
    (conj_side ? d.nu : d.mu)[j] = e - 1;
    t.push_back(std::move(d));
  }
  return MixedPolynomial(f.nvars(), std::move(t));
}

MixedPolynomial wirtinger_z(const MixedPolynomial& f, std::size_t j) { return differentiate(f, j, false); }
MixedPolynomial wirtinger_zbar(const MixedPolynomial& f, std::size_t j) { return differentiate(f, j, true); }

MixedPolynomial restrict_to(const MixedPolynomial& f, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw PolynomialError("restriction to an empty coordinate set");
  std::vector<bool> keep(f.nvars(), false);
  for (auto i : subset) {
    if (i >= f.nvars()) throw PolynomialError("restriction index out of range");
    keep[i] = true;
  }
  std::vector<MixedMonomial> t;
  for (const auto& m : f.terms()) {
    bool ok = true;
    for (std::size_t j = 0; j < f.nvars() && ok; ++j)
      if (!keep[j] && m.mu[j] + m.nu[j] > 0) ok = false;
    if (ok) t.push_back(m);
  }
  return MixedPolynomial(f.nvars(), std::move(t));
}

MixedPolynomial embed(const MixedPolynomial& f, std::size_t nvars) {
  if (nvars < f.nvars()) throw PolynomialError("cannot embed into fewer variables");
  std::vector<MixedMonomial> t = f.terms();
  for (auto& m : t) {
    m.mu.resize(nvars, 0);
    m.nu.resize(nvars, 0);
  }
  return MixedPolynomial(nvars, std::move(t));
}

MixedPolynomial drop_variable(const MixedPolynomial& f, std::size_t j) {
  if (j >= f.nvars()) throw PolynomialError("variable index out of range");
  std::vector<MixedMonomial> t = f.terms();
  for (auto& m : t) {
    if (m.mu[j] || m.nu[j]) throw PolynomialError("dropped variable occurs in polynomial");
    m.mu.erase(m.mu.begin() + static_cast<long>(j));
    m.nu.erase(m.nu.begin() + static_cast<long>(j));
  }
  return MixedPolynomial(f.nvars() - 1, std::move(t));
}

MixedMap::MixedMap(std::size_t n, std::vector<MixedPolynomial> comps) : nvars(n), components(std::move(comps)) {
  if (components.empty()) throw PolynomialError("a map needs at least one component");
  for (const auto& c : components) check_same(n, c.nvars());
}

bool MixedMap::is_holomorphic() const {
  return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.is_holomorphic(); });
}

MixedMap conjugate(const MixedMap& F) {
  MixedMap G = F;
  for (auto& c : G.components) c = conjugate(c);
  return G;
}

MixedMap restrict_to(const MixedMap& F, const std::vector<std::size_t>& subset) {
  MixedMap G = F;
  for (auto& c : G.components) c = restrict_to(c, subset);
  return G;
}

MixedMap drop_variable(const MixedMap& F, std::size_t j) {
  MixedMap G;
  G.nvars = F.nvars - 1;
  for (const auto& c : F.components) G.components.push_back(drop_variable(c, j));
  return G;
}

std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1u) s.push_back(j);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace mixsing
