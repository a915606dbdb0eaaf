// Small arithmetic language over F_{q^2} used by parameter grids:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)?
//   atom   := integer | '[' c0,c1,... ']' | 'xi' | name | '(' expr ')'
//   exponent := integer | 'q' | '(' integer arithmetic over q ')'
//
// Names are looked up in the caller's bindings (a, b, c, e, u, ...).
// Negative exponents invert.
#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ppq/field.hpp"

namespace ppq {

using Bindings = std::map<std::string, FieldElem, std::less<>>;

class ExprError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(const FieldCtx& F, std::string_view src, const Bindings& env) : F_(F), s_(src), env_(env) {}

  FieldElem parse() {
    const FieldElem out = expr();
    finish();
    return out;
  }

  std::int64_t parse_integer() {
    const std::int64_t out = int_expr();
    finish();
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExprError("expression '" + std::string(s_) + "': " + what);
  }
  void finish() {
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElem expr() {
    FieldElem acc = term();
    for (;;) {
      if (eat('+')) acc = F_.add(acc, term());
      else if (eat('-')) acc = F_.sub(acc, term());
      else return acc;
    }
  }
  FieldElem term() {
    FieldElem acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = F_.mul(acc, unary());
      } else if (eat('/')) {
        const FieldElem den = unary();
        if (den.is_zero()) fail("division by zero");
        acc = F_.div(acc, den);
      } else {
        return acc;
      }
    }
  }
  FieldElem unary() {
    if (eat('-')) return F_.neg(unary());
    return power();
  }
  FieldElem power() {
    const FieldElem base = atom();
    if (!eat('^')) return base;
    const std::int64_t e = exponent();
    if (e >= 0) return F_.pow(base, static_cast<std::uint64_t>(e));
    if (base.is_zero()) fail("negative power of zero");
    return F_.pow(F_.inv(base), static_cast<std::uint64_t>(-e));
  }
  FieldElem atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      const FieldElem v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (ch == '[') {
      const auto close = s_.find(']', pos_);
      if (close == std::string_view::npos) fail("missing ']'");
      const FieldElem v = F_.parse(s_.substr(pos_, close - pos_ + 1));
      pos_ = close + 1;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return F_.from_int(integer_literal());
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::string name = identifier();
      if (name == "xi") return F_.xi();
      auto it = env_.find(name);
      if (it == env_.end()) fail("unknown name '" + name + "'");
      return it->second;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::int64_t integer_literal() {
    skip();
    std::int64_t v = 0;
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }
  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  // Integer arithmetic for exponents.
  std::int64_t exponent() {
    skip();
    if (eat('-')) return -exponent();
    if (eat('(')) {
      const std::int64_t v = int_expr();
      if (!eat(')')) fail("missing ')' in exponent");
      return v;
    }
    return int_atom();
  }
  std::int64_t int_atom() {
    skip();
    if (eat('(')) {
      const std::int64_t v = int_expr();
      if (!eat(')')) fail("missing ')' in exponent");
      return v;
    }
    if (pos_ < s_.size() && s_[pos_] == 'q' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return F_.q();
    }
    return integer_literal();
  }
  std::int64_t int_term() {
    std::int64_t acc = int_unary();
    for (;;) {
      if (eat('*')) {
        acc *= int_unary();
      } else if (eat('/')) {
        const std::int64_t den = int_unary();
        if (den == 0 || acc % den != 0) fail("inexact division in exponent");
        acc /= den;
      } else {
        return acc;
      }
    }
  }
  std::int64_t int_unary() {
    if (eat('-')) return -int_unary();
    return int_atom();
  }
  std::int64_t int_expr() {
    std::int64_t acc = int_term();
    for (;;) {
      if (eat('+')) acc += int_term();
      else if (eat('-')) acc -= int_term();
      else return acc;
    }
  }

  const FieldCtx& F_;
  std::string_view s_;
  const Bindings& env_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FieldElem eval_expr(const FieldCtx& F, std::string_view src, const Bindings& env = {}) {
  return detail::ExprParser(F, src, env).parse();
}

/// Integer arithmetic with the symbol q, e.g. "q+1" or "(q*q-1)/3".
inline std::int64_t eval_int_expr(const FieldCtx& F, std::string_view src) {
  const Bindings none;
  return detail::ExprParser(F, src, none).parse_integer();
}

}  // namespace ppq
