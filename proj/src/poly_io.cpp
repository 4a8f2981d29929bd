#include "hdual/poly_io.hpp"

#include <cctype>

namespace hdual {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text, std::size_t first_line)
      : ring_(ring), text_(text), line_(first_line) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    Polynomial f = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    advance();
    return true;
  }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      advance();
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        advance();
        acc += term();
      } else if (peek() == '-') {
        advance();
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
      std::uint64_t e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + static_cast<std::uint64_t>(peek() - '0');
        if (e > kMaxExponent) fail("exponent too large");
        advance();
      }
      base = base.pow(e);
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      advance();
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const Field& k = ring_->k();
      const std::uint64_t p = k.characteristic();
      std::uint64_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        v = (v * 10 + static_cast<std::uint64_t>(peek() - '0')) % p;
        advance();
      }
      return Polynomial::constant(ring_, k.from_int(static_cast<std::int64_t>(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start_col = col_;
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name += peek();
        advance();
      }
      if (auto idx = ring_->index_of(name)) return Polynomial::variable(ring_, *idx);
      if (name == "t" && !ring_->k().is_prime_field()) {
        return Polynomial::constant(ring_, ring_->k().generator());
      }
      throw ParseError("unknown variable '" + name + "'", line_, start_col);
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_ = 1;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, std::size_t first_line) {
  return Parser(ring, text, first_line).parse();
}

std::vector<Polynomial> parse_polynomial_list(const RingPtr& ring, std::string_view text) {
  std::vector<Polynomial> out;
  std::size_t line = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";\n", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    if (auto hash = piece.find('#'); hash != std::string_view::npos) piece = piece.substr(0, hash);
    bool blank = true;
    for (char c : piece) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (!blank) out.push_back(parse_polynomial(ring, piece, line));
    if (end < text.size() && text[end] == '\n') ++line;
    start = end + 1;
  }
  return out;
}

nlohmann::json to_json(const Polynomial& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto t = f.term_at(i);
    terms.push_back({{"exponents", std::vector<Exponent>(t.exps.begin(), t.exps.end())},
                     {"coeff", f.k().coeffs(t.coeff)}});
  }
  return terms;
}

Polynomial polynomial_from_json(const RingPtr& ring, const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of terms");
  std::vector<std::pair<Monomial, Elem>> terms;
  for (const auto& t : j) {
    auto exps = t.at("exponents").get<std::vector<Exponent>>();
    if (exps.size() != ring->nvars()) throw std::invalid_argument("term has wrong exponent count");
    auto c = t.at("coeff").get<std::vector<std::uint64_t>>();
    terms.emplace_back(Monomial(std::move(exps)), ring->k().from_coeffs(c));
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

}  // namespace hdual
