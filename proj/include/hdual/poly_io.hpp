#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hdual/poly.hpp"

namespace hdual {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses a polynomial over `ring`. Accepts integers, ring variable names,
/// + - * ^ and parentheses; over GF(p^k) the symbol `t` denotes the field
/// generator unless the ring has a variable of that name. Line and column
/// in errors are 1-based and offset by `first_line`.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, std::size_t first_line = 1);

/// Several polynomials separated by ';' or newlines. Blank entries and
/// `#` comments are skipped.
std::vector<Polynomial> parse_polynomial_list(const RingPtr& ring, std::string_view text);

/// [{"exponents": [...], "coeff": [...]}, ...], terms in ring order
/// descending; coeff is the coefficient vector of the field element,
/// constant term first.
nlohmann::json to_json(const Polynomial& f);
Polynomial polynomial_from_json(const RingPtr& ring, const nlohmann::json& j);

}  // namespace hdual
