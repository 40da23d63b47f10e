#pragma once

#include <cctype>
#include <string>

#include "cobord/graded_series.hpp"

namespace cobord {

namespace detail {

/// Recursive-descent parser for polynomial expressions:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*        ('/' needs a constant rhs)
///   factor := primary ['^' uint]
///   primary:= number | ident | '(' expr ')'
/// Identifiers b1, b2, ... are the coefficient generators; anything else is
/// a series variable (degree taken from the table when already declared).
class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  GradedSeries parse() {
    GradedSeries e = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError("expression: trailing input at '" + s_.substr(pos_) + "'");
    return e;
  }

 private:
  GradedSeries expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = get() == '-';
    GradedSeries acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      get();
      GradedSeries t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  GradedSeries term() {
    GradedSeries acc = factor();
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') break;
      get();
      GradedSeries f = factor();
      if (c == '*') {
        acc = acc * f;
      } else {
        CoeffPoly ct = f.constant_term();
        if (!(f == GradedSeries::constant(ct)) || !ct.is_constant() || ct.is_zero())
          throw ParseError("expression: division requires a nonzero rational divisor");
        acc = acc.scaled(ct.augment().inverse());
      }
    }
    return acc;
  }

  GradedSeries factor() {
    GradedSeries p = primary();
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (start == pos_) throw ParseError("expression: missing exponent after '^'");
      unsigned e = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
      GradedSeries r = GradedSeries::constant(CoeffPoly(1));
      for (unsigned i = 0; i < e; ++i) r = r * p;
      return r;
    }
    return p;
  }

  GradedSeries primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      GradedSeries e = expr();
      skip_ws();
      if (get() != ')') throw ParseError("expression: missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return GradedSeries::constant(
          CoeffPoly(Rational::parse(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name.size() > 1 && name[0] == 'b' &&
          std::all_of(name.begin() + 1, name.end(),
                      [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        unsigned i = static_cast<unsigned>(std::stoul(name.substr(1)));
        if (i == 0) throw ParseError("expression: b0 is not a generator");
        return GradedSeries::constant(CoeffPoly::generator(i));
      }
      auto known = VarTable::instance().find(name);
      VarId v = known ? *known : var_id(name);
      return GradedSeries::variable(v);
    }
    throw ParseError(std::string("expression: unexpected character '") +
                     (c ? std::string(1, c) : std::string("<end>")) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GradedSeries parse_series(const std::string& text) {
  return detail::ExprParser(text).parse();
}

/// Parses a pure coefficient-ring element (no series variables allowed).
inline CoeffPoly parse_coeff_poly(const std::string& text) {
  GradedSeries s = parse_series(text);
  CoeffPoly c = s.constant_term();
  if (!(s == GradedSeries::constant(c)))
    throw ParseError("expected a coefficient-ring element (b generators only)");
  return c;
}

}  // namespace cobord
