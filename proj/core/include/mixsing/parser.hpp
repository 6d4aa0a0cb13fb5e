#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mixsing/polynomial.hpp"

namespace mixsing {

enum class DiagnosticKind { syntax, arity, exponent, coefficient };

const char* to_string(DiagnosticKind k);

struct ParseDiagnostic {
  std::size_t position = 0;  // byte offset into the source
  std::string message;
  DiagnosticKind kind = DiagnosticKind::syntax;
  std::size_t component = 0;  // index inside a map source list

  std::string describe() const;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostic d) : std::runtime_error(d.describe()), diag_(std::move(d)) {}
  const ParseDiagnostic& diagnostic() const { return diag_; }

 private:
  ParseDiagnostic diag_;
};

std::variant<MixedPolynomial, ParseDiagnostic> try_parse_polynomial(std::string_view text, std::size_t nvars);
std::variant<MixedMap, ParseDiagnostic> try_parse_map(const std::vector<std::string>& sources, std::size_t nvars);

// Throwing variants.
MixedPolynomial parse_polynomial(std::string_view text, std::size_t nvars);
MixedMap parse_map(const std::vector<std::string>& sources, std::size_t nvars);

std::string format_polynomial(const MixedPolynomial& f);
std::string format_coefficient(const ComplexRational& c);

}  // namespace mixsing
