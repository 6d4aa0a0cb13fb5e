#include "mixsing/certify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mixsing/geometry.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/parser.hpp"

namespace mixsing {

const char* to_string(NondegMode m) {
  switch (m) {
    case NondegMode::plain: return "plain";
    case NondegMode::strong: return "strong";
    case NondegMode::partial: return "partial";
  }
  return "plain";
}

NondegMode mode_from_string(const std::string& s) {
  if (s == "plain") return NondegMode::plain;
  if (s == "strong") return NondegMode::strong;
  if (s == "partial") return NondegMode::partial;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

namespace {

nlohmann::json matrix_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(format_coefficient(v));
    rows.push_back(r);
  }
  return rows;
}

bool all_convenient(const MixedMap& F) {
  return std::all_of(F.components.begin(), F.components.end(),
                     [](const MixedPolynomial& c) { return !c.is_zero() && is_convenient(c); });
}

// Each term is lambda * z_j^{m_j} zbar_j^{b_j}, with one exponent pair per variable, m_j > b_j.
std::optional<StructuralCertificate> try_hamm(const MixedMap& F) {
  const std::size_t n = F.nvars, k = F.k();
  if (n < k) return std::nullopt;
  std::vector<std::optional<std::pair<std::uint32_t, std::uint32_t>>> expo(n);
  ComplexMatrix lambda(k, std::vector<ComplexRational>(n));
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : F.components[i].terms()) {
      std::size_t used = 0, j0 = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (t.mu[j] + t.nu[j]) {
          ++used;
          j0 = j;
        }
      if (used != 1) return std::nullopt;
      std::pair<std::uint32_t, std::uint32_t> e{t.mu[j0], t.nu[j0]};
      if (e.first <= e.second) return std::nullopt;
      if (expo[j0] && *expo[j0] != e) return std::nullopt;
      expo[j0] = e;
      lambda[i][j0] = t.coeff;
    }
  }
  for (const auto& e : expo)
    if (!e) return std::nullopt;
  auto minors = maximal_minors(lambda);
  for (const auto& m : minors)
    if (m.value.is_zero()) return std::nullopt;

  StructuralCertificate c;
  nlohmann::json d;
  d["lambda"] = matrix_json(lambda);
  nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
  for (const auto& e : expo) {
    a.push_back(e->first - e->second);
    b.push_back(e->second);
  }
  d["a"] = a;
  d["b"] = b;
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : minors) {
    nlohmann::json cols = nlohmann::json::array();
    for (auto col : m.columns) cols.push_back(col + 1);
    ms.push_back({{"columns", cols}, {"value", format_coefficient(m.value)}});
  }
  d["minors"] = ms;
  c.chain.push_back({"hamm_minors", d});
  c.modes.insert(NondegMode::plain);
  if (all_convenient(F)) c.modes.insert(NondegMode::partial);
  return c;
}

std::optional<StructuralCertificate> try_siegel(const MixedMap& F) {
  const std::size_t n = F.nvars, k = F.k();
  ComplexMatrix lambda(k, std::vector<ComplexRational>(n));
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : F.components[i].terms()) {
      std::size_t used = 0, j0 = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (t.mu[j] + t.nu[j]) {
          ++used;
          j0 = j;
        }
      if (used != 1 || t.mu[j0] != 1 || t.nu[j0] != 1) return std::nullopt;
      lambda[i][j0] = t.coeff;
    }
  }
  SiegelFrame frame(lambda);
  auto strong = is_strongly_admissible(frame);
  if (!strong.strongly_admissible) return std::nullopt;
  StructuralCertificate c;
  nlohmann::json d;
  d["lambda"] = matrix_json(lambda);
  auto t = is_siegel(frame);
  nlohmann::json tw = nlohmann::json::array();
  for (const auto& v : *t) tw.push_back(rational_to_string(v));
  d["weights"] = tw;
  d["subsets_checked"] = strong.subsets.size();
  c.chain.push_back({"siegel_strongly_admissible", d});
  c.modes.insert(NondegMode::plain);
  if (all_convenient(F)) c.modes.insert(NondegMode::partial);
  return c;
}

// Candidate (a, b) per variable such that every exponent pair (mu_j, nu_j) is the image of some
// (m, m') under (m, m') -> (a m + b m', b m + a m').
std::optional<MixedCovering> detect_covering(const MixedMap& F, MixedMap& original) {
  const std::size_t n = F.nvars;
  std::vector<std::uint32_t> A(n), B(n);
  std::uint32_t maxdeg = 1;
  for (const auto& c : F.components) maxdeg = std::max(maxdeg, c.degree());

  auto inverts = [&](std::size_t j, long a, long b, bool& holo) {
    holo = true;
    long den = a * a - b * b;
    for (const auto& c : F.components)
      for (const auto& t : c.terms()) {
        long mu = t.mu[j], nu = t.nu[j];
        long p = a * mu - b * nu, q = a * nu - b * mu;
        if (p % den || q % den) return false;
        if (p / den < 0 || q / den < 0) return false;
        if (q / den) holo = false;
      }
    return true;
  };

  bool nontrivial = false;
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
    bool best_holo = false;
    for (std::uint32_t s = 3; s <= 2 * maxdeg + 1 && !(best && best_holo); ++s) {
      for (std::uint32_t a = 1; a < s; ++a) {
        std::uint32_t b = s - a;
        if (a == b) continue;
        bool holo = false;
        if (!inverts(j, a, b, holo)) continue;
        if (!best || (holo && !best_holo)) {
          best = {a, b};
          best_holo = holo;
        }
        if (best_holo) break;
      }
    }
    if (!best) return std::nullopt;
    A[j] = best->first;
    B[j] = best->second;
    bool occurs = false;
    for (const auto& c : F.components)
      for (const auto& t : c.terms())
        if (t.mu[j] + t.nu[j]) occurs = true;
    if (occurs) nontrivial = true;
  }
  if (!nontrivial) return std::nullopt;

  MixedCovering phi(A, B);
  std::vector<MixedPolynomial> comps;
  for (const auto& c : F.components) {
    std::vector<MixedMonomial> terms;
    for (const auto& t : c.terms()) {
      MixedMonomial m = t;
      for (std::size_t j = 0; j < n; ++j) {
        long a = A[j], b = B[j], den = a * a - b * b;
        m.mu[j] = static_cast<std::uint32_t>((a * long(t.mu[j]) - b * long(t.nu[j])) / den);
        m.nu[j] = static_cast<std::uint32_t>((a * long(t.nu[j]) - b * long(t.mu[j])) / den);
      }
      terms.push_back(std::move(m));
    }
    comps.emplace_back(n, std::move(terms));
  }
  original = MixedMap(n, std::move(comps));
  if (!(pullback(phi, original) == F)) return std::nullopt;
  return phi;
}

std::optional<StructuralCertificate> certify_rec(const MixedMap& F, bool assume, int depth) {
  if (!F.is_holomorphic() && depth < 3) {
    MixedMap original;
    if (auto phi = detect_covering(F, original)) {
      std::optional<StructuralCertificate> inner;
      if (original.is_holomorphic() && assume) {
        StructuralCertificate c;
        nlohmann::json d;
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& p : original.components) comps.push_back(format_polynomial(p));
        d["map"] = comps;
        c.chain.push_back({"assumed_holomorphic_partial", d});
        c.modes.insert(NondegMode::partial);
        inner = c;
      }
      if (!inner) inner = certify_rec(original, assume, depth + 1);
      if (inner) {
        StructuralCertificate c;
        nlohmann::json d;
        d["a"] = phi->a;
        d["b"] = phi->b;
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& p : original.components) comps.push_back(format_polynomial(p));
        d["original"] = comps;
        c.chain.push_back({"pullback", d});
        c.chain.insert(c.chain.end(), inner->chain.begin(), inner->chain.end());
        c.modes = inner->modes;
        return c;
      }
    }
  }
  if (auto c = try_hamm(F)) return c;
  if (auto c = try_siegel(F)) return c;
  return std::nullopt;
}

}  // namespace

std::optional<StructuralCertificate> certify_structured(const MixedMap& F, bool assume_holomorphic_partial) {
  for (const auto& c : F.components)
    if (c.is_zero()) return std::nullopt;
  return certify_rec(F, assume_holomorphic_partial, 0);
}

}  // namespace mixsing
