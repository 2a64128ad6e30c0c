#ifndef CTXUPB_EXPR_HPP
#define CTXUPB_EXPR_HPP

// Arithmetic over decimal literals and `pi`:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | '+' unary | atom
//   atom   := number | 'pi' | '(' expr ')'

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>

#include "ctxupb/error.hpp"
#include "ctxupb/linalg.hpp"

namespace ctxupb {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  double parse() {
    const double v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, "angle expression \"" + std::string(text_) + "\" at offset " +
                                           std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    while (true) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        const double d = unary();
        if (d == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return atom();
  }

  double atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      const double v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return kPi;
    }
    const std::size_t start = pos_;
    bool digits = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, digits = true;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, digits = true;
    }
    if (!digits) {
      pos_ = start;
      fail("expected a number, 'pi' or '('");
    }
    return std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline double parse_angle(std::string_view text) { return detail::ExprParser(text).parse(); }

}  // namespace ctxupb

#endif  // CTXUPB_EXPR_HPP
