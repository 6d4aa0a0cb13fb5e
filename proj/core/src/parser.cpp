#include "mixsing/parser.hpp"

#include <cctype>
#include <optional>

namespace mixsing {

const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::syntax: return "syntax";
    case DiagnosticKind::arity: return "arity";
    case DiagnosticKind::exponent: return "exponent";
    case DiagnosticKind::coefficient: return "coefficient";
  }
  return "syntax";
}

std::string ParseDiagnostic::describe() const {
  return std::string(to_string(kind)) + " error at offset " + std::to_string(position) + ": " + message;
}

namespace {

constexpr unsigned kMaxExponent = 64;
constexpr std::size_t kMaxTerms = 200000;
constexpr int kMaxDepth = 200;

struct Failure {
  ParseDiagnostic diag;
};

class Parser {
 public:
  Parser(std::string_view src, std::size_t nvars) : src_(src), n_(nvars) {}

  MixedPolynomial run() {
    MixedPolynomial p = expr(0);
    skip_ws();
    if (pos_ != src_.size()) fail(pos_, "unexpected character '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  std::string_view src_;
  std::size_t n_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::size_t at, std::string msg, DiagnosticKind kind = DiagnosticKind::syntax) {
    throw Failure{{at, std::move(msg), kind, 0}};
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  int peek() {
    skip_ws();
    return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1;
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_digit() {
    int c = peek();
    return c >= 0 && std::isdigit(c);
  }

  // digits only, no sign
  std::optional<mpz_class> uint() {
    if (!at_digit()) return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  void check_size(const MixedPolynomial& p, std::size_t at) {
    if (p.size() > kMaxTerms) fail(at, "expansion too large", DiagnosticKind::exponent);
  }

  MixedPolynomial expr(int depth) {
    if (depth > kMaxDepth) fail(pos_, "nesting too deep");
    MixedPolynomial acc = term(depth);
    for (;;) {
      int c = peek();
      if (c == '+') {
        ++pos_;
        acc += term(depth);
      } else if (c == '-') {
        ++pos_;
        acc -= term(depth);
      } else {
        return acc;
      }
    }
  }

  MixedPolynomial term(int depth) {
    bool neg = accept('-');
    std::size_t at = pos_;
    MixedPolynomial acc = factor(depth);
    while (accept('*')) {
      acc *= factor(depth);
      check_size(acc, at);
    }
    return neg ? -acc : acc;
  }

  MixedPolynomial factor(int depth) {
    std::size_t at = pos_;
    MixedPolynomial b = base(depth);
    if (accept('^')) {
      std::size_t epos = pos_;
      if (peek() == '-') fail(pos_, "negative exponent", DiagnosticKind::exponent);
      auto e = uint();
      if (!e) fail(epos, "expected a nonnegative integer exponent", DiagnosticKind::exponent);
      if (*e > kMaxExponent) fail(epos, "exponent too large", DiagnosticKind::exponent);
      b = pow(b, static_cast<unsigned>(e->get_ui()));
      check_size(b, at);
    }
    return b;
  }

  MixedPolynomial variable(bool conj_side) {
    std::size_t at = pos_;
    pos_ += conj_side ? 2 : 1;
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail(pos_, "expected a variable index");
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    mpz_class idx(std::string(src_.substr(start, pos_ - start)));
    if (idx < 1 || idx > n_)
      fail(at, "variable index " + idx.get_str() + " outside 1.." + std::to_string(n_), DiagnosticKind::arity);
    std::size_t j = idx.get_ui() - 1;
    return conj_side ? MixedPolynomial::conj_variable(n_, j) : MixedPolynomial::variable(n_, j);
  }

  Rational rational_literal() {
    std::size_t at = pos_;
    auto num = uint();
    if (!num) fail(pos_, "expected a number");
    if (accept('/')) {
      std::size_t dpos = pos_;
      auto den = uint();
      if (!den) fail(dpos, "expected a denominator");
      if (*den == 0) fail(at, "zero denominator", DiagnosticKind::coefficient);
      Rational r(*num, *den);
      r.canonicalize();
      return r;
    }
    return Rational(*num);
  }

  Rational signed_rational() {
    bool neg = accept('-');
    Rational r = rational_literal();
    return neg ? Rational(-r) : r;
  }

  // "(" signed ("+"|"-") signed? "i" ")", or nullopt with the position restored.
  std::optional<ComplexRational> complex_literal() {
    std::size_t save = pos_;
    try {
      if (!accept('(')) return std::nullopt;
      if (!(peek() == '-' || at_digit())) throw Failure{};
      Rational re = signed_rational();
      int op = peek();
      if (op != '+' && op != '-') throw Failure{};
      ++pos_;
      Rational im(1);
      if (peek() == '-' || at_digit()) im = signed_rational();
      if (!accept('i')) throw Failure{};
      if (!accept(')')) throw Failure{};
      if (op == '-') im = -im;
      return ComplexRational(re, im);
    } catch (const Failure& f) {
      if (f.diag.kind == DiagnosticKind::coefficient) throw;
      pos_ = save;
      return std::nullopt;
    }
  }

  MixedPolynomial base(int depth) {
    int c = peek();
    if (c < 0) fail(pos_, "unexpected end of input");
    if (c == 'z') {
      bool conj_side = pos_ + 1 < src_.size() && src_[pos_ + 1] == 'b';
      return variable(conj_side);
    }
    if (std::isdigit(c)) return MixedPolynomial::constant(n_, ComplexRational(rational_literal()));
    if (c == 'i') {
      ++pos_;
      return MixedPolynomial::constant(n_, ComplexRational::imag_unit());
    }
    if (c == '(') {
      if (auto lit = complex_literal()) return MixedPolynomial::constant(n_, *lit);
      std::size_t open = pos_;
      ++pos_;
      MixedPolynomial inner = expr(depth + 1);
      if (!accept(')')) fail(peek() < 0 ? src_.size() : pos_, "unbalanced parenthesis opened at " + std::to_string(open));
      return inner;
    }
    fail(pos_, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
  }
};

}  // namespace

std::variant<MixedPolynomial, ParseDiagnostic> try_parse_polynomial(std::string_view text, std::size_t nvars) {
  if (nvars == 0) return ParseDiagnostic{0, "nvars must be positive", DiagnosticKind::arity, 0};
  try {
    return Parser(text, nvars).run();
  } catch (const Failure& f) {
    return f.diag;
  }
}

std::variant<MixedMap, ParseDiagnostic> try_parse_map(const std::vector<std::string>& sources, std::size_t nvars) {
  if (sources.empty()) return ParseDiagnostic{0, "a map needs at least one component", DiagnosticKind::arity, 0};
  std::vector<MixedPolynomial> comps;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    auto r = try_parse_polynomial(sources[i], nvars);
    if (auto* d = std::get_if<ParseDiagnostic>(&r)) {
      d->component = i;
      return *d;
    }
    comps.push_back(std::get<MixedPolynomial>(std::move(r)));
  }
  return MixedMap(nvars, std::move(comps));
}

MixedPolynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  auto r = try_parse_polynomial(text, nvars);
  if (auto* d = std::get_if<ParseDiagnostic>(&r)) throw ParseError(*d);
  return std::get<MixedPolynomial>(std::move(r));
}

MixedMap parse_map(const std::vector<std::string>& sources, std::size_t nvars) {
  auto r = try_parse_map(sources, nvars);
  if (auto* d = std::get_if<ParseDiagnostic>(&r)) throw ParseError(*d);
  return std::get<MixedMap>(std::move(r));
}

std::string format_coefficient(const ComplexRational& c) {
  if (c.is_real()) return rational_to_string(c.re);
  Rational mag = abs(c.im);
  return "(" + rational_to_string(c.re) + (sgn(c.im) < 0 ? "-" : "+") + rational_to_string(mag) + "i)";
}

std::string format_polynomial(const MixedPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string vars;
    auto put = [&](const char* name, std::size_t j, std::uint32_t e) {
      if (!e) return;
      if (!vars.empty()) vars += "*";
      vars += name + std::to_string(j + 1);
      if (e > 1) vars += "^" + std::to_string(e);
    };
    for (std::size_t j = 0; j < f.nvars(); ++j) put("z", j, t.mu[j]);
    for (std::size_t j = 0; j < f.nvars(); ++j) put("zb", j, t.nu[j]);

    bool neg = false;
    std::string coeff;
    if (t.coeff.is_real()) {
      neg = sgn(t.coeff.re) < 0;
      Rational mag = abs(t.coeff.re);
      if (!(mag == 1 && !vars.empty())) coeff = rational_to_string(mag);
    } else {
      coeff = format_coefficient(t.coeff);
    }
    std::string body = coeff;
    if (!vars.empty()) body += (coeff.empty() ? "" : "*") + vars;

    if (first)
      out += (neg ? "-" : "") + body;
    else
      out += (neg ? "-" : "+") + body;
    first = false;
  }
  return out;
}

}  // namespace mixsing
