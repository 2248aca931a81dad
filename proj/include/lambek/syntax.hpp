#pragma once

// Text syntax for formulas and sequents.
//
//   formula := term | term "/" term | term "\" term
//   term    := atom | "!" term | "(" formula ")"
//   atom    := [A-Za-z][A-Za-z0-9_']*
//
// Divisions are non-associative: nesting on the same level needs explicit
// parentheses. "!" binds tightest. Sequent text is
// `formula ("," formula)* "->" formula`, with an optional empty antecedent.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>

#include "lambek/core.hpp"

namespace lambek {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, const std::string& expected)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                           ": expected " + expected),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_formula() {
    Formula lhs = parse_term();
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      return Formula::over(lhs, parse_term());
    }
    if (peek() == '\\') {
      ++pos_;
      return Formula::under(lhs, parse_term());
    }
    return lhs;
  }

  Formula parse_term() {
    skip_ws();
    char c = peek();
    if (c == '!') {
      ++pos_;
      return Formula::bang(parse_term());
    }
    if (c == '(') {
      ++pos_;
      Formula f = parse_formula();
      expect(')');
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return Formula::var(atom());
    throw SyntaxError(pos_, "atom, '!' or '('");
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) throw SyntaxError(pos_, std::string("'") + c + "'");
    ++pos_;
  }

  bool try_arrow() {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  bool try_comma() {
    skip_ws();
    if (peek() == ',') {
      ++pos_;
      return true;
    }
    return false;
  }

  void end() {
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
  }

 private:
  Atom atom() {
    std::size_t start = pos_;
    ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
        ++pos_;
      else
        break;
    }
    return Atom::intern(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  detail::FormulaParser p(text);
  Formula f = p.parse_formula();
  p.end();
  return f;
}

inline Sequent parse_sequent(std::string_view text) {
  detail::FormulaParser p(text);
  std::vector<Formula> antecedent;
  if (!p.try_arrow()) {
    antecedent.push_back(p.parse_formula());
    while (p.try_comma()) antecedent.push_back(p.parse_formula());
    if (!p.try_arrow()) throw SyntaxError(text.size(), "'->' or ','");
  }
  Formula succ = p.parse_formula();
  p.end();
  return Sequent(std::move(antecedent), succ);
}

namespace detail {
inline void format_term(const Formula& f, std::string& out);

inline void format_top(const Formula& f, std::string& out) {
  switch (f.conn()) {
    case Conn::Var:
      out += f.atom().name();
      break;
    case Conn::Bang:
      out += '!';
      format_term(f.body(), out);
      break;
    case Conn::Over:
      format_term(f.numerator(), out);
      out += '/';
      format_term(f.denominator(), out);
      break;
    case Conn::Under:
      format_term(f.denominator(), out);
      out += '\\';
      format_term(f.numerator(), out);
      break;
  }
}

inline void format_term(const Formula& f, std::string& out) {
  if (f.is_over() || f.is_under()) {
    out += '(';
    format_top(f, out);
    out += ')';
  } else {
    format_top(f, out);
  }
}
}  // namespace detail

inline std::string format_formula(const Formula& f) {
  std::string out;
  detail::format_top(f, out);
  return out;
}

inline std::string format_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += ", ";
    detail::format_top(s.antecedent[i], out);
  }
  if (!s.antecedent.empty()) out += ' ';
  out += "-> ";
  detail::format_top(s.succedent, out);
  return out;
}

}  // namespace lambek
