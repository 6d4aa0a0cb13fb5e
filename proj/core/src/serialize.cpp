#include "mixsing/serialize.hpp"

#include <stdexcept>

#include "mixsing/parser.hpp"

namespace mixsing {

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return rational_from_double(j.get<double>());
  throw std::invalid_argument("expected a rational number, got " + j.dump());
}

}  // namespace

json to_json(const ComplexRational& c) { return json::array({rational_to_string(c.re), rational_to_string(c.im)}); }

ComplexRational complex_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return {rational_from_json(j), Rational(0)};
}

json to_json(const MixedPolynomial& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"c", to_json(t.coeff)}, {"mu", t.mu}, {"nu", t.nu}});
  return {{"nvars", f.nvars()}, {"terms", terms}};
}

MixedPolynomial polynomial_from_json(const json& j) {
  const auto n = j.at("nvars").get<std::size_t>();
  std::vector<MixedMonomial> terms;
  for (const auto& t : j.at("terms")) {
    MixedMonomial m{complex_from_json(t.at("c")), t.at("mu").get<Exponent>(), t.at("nu").get<Exponent>()};
    if (m.mu.size() != n || m.nu.size() != n) throw std::invalid_argument("exponent length differs from nvars");
    terms.push_back(std::move(m));
  }
  return MixedPolynomial(n, std::move(terms));
}

json to_json(const MixedMap& F) {
  json comps = json::array();
  for (const auto& c : F.components) comps.push_back(format_polynomial(c));
  return {{"nvars", F.nvars}, {"components", comps}};
}

MixedMap map_from_json(const json& j) {
  const auto n = j.at("nvars").get<std::size_t>();
  std::vector<MixedPolynomial> comps;
  for (const auto& c : j.at("components")) {
    if (c.is_string()) {
      comps.push_back(parse_polynomial(c.get<std::string>(), n));
    } else {
      MixedPolynomial f = polynomial_from_json(c);
      if (f.nvars() != n) throw std::invalid_argument("component nvars differs from map nvars");
      comps.push_back(std::move(f));
    }
  }
  return MixedMap(n, std::move(comps));
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& e : r) row.push_back(to_json(e));
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
  ComplexMatrix m;
  for (const auto& r : j) {
    if (!r.is_array()) throw std::invalid_argument("matrix row must be an array");
    std::vector<ComplexRational> row;
    for (const auto& e : r) row.push_back(complex_from_json(e));
    if (!m.empty() && row.size() != m[0].size()) throw std::invalid_argument("ragged matrix");
    m.push_back(std::move(row));
  }
  return m;
}

json to_json(const WeightEnumeration& e) {
  json ws = json::array();
  for (const auto& w : e.weights) {
    json faces = json::array();
    for (const auto& f : w.faces) faces.push_back(format_polynomial(f));
    ws.push_back({{"P", w.P}, {"faces", faces}});
  }
  return {{"weights", ws}, {"bound", e.bound}};
}

}  // namespace mixsing
