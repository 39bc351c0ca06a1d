#include "sumsat/threshold.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include "sumsat/group.hpp"

namespace sumsat {

namespace {

// Recursive descent over
//   expr := term (('+' | '-') term)*
//   term := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?
//   atom := number | 'r' | '(' expr ')'
class Parser {
 public:
  Parser(const std::string& text, int r) : s_(text), r_(r) {}

  Rational parse() {
    Rational v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("threshold expression '" + s_ + "': " + what);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Rational expr() {
    Rational v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Rational term() {
    Rational v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const Rational d = unary();
        if (d.numerator() == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Rational unary() {
    if (eat('-')) return -unary();
    return power();
  }

  Rational power() {
    const Rational base = atom();
    if (!eat('^')) return base;
    const Rational e = unary();
    if (e.denominator() != 1 || e.numerator() < -62 || e.numerator() > 62) fail("exponent must be an integer in -62..62");
    if (e.numerator() < 0 && base.numerator() == 0) fail("zero to a negative power");
    Rational v = 1;
    for (std::int64_t k = 0; k < std::abs(e.numerator()); ++k) v *= base;
    return e.numerator() < 0 ? 1 / v : v;
  }

  Rational atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Rational v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_[i_] == 'r') {
      ++i_;
      return Rational(r_);
    }
    if (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.') return number();
    fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }

  // Decimals are read exactly: 0.34 is 34/100.
  Rational number() {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool digits = false;
    bool point = false;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
      if (s_[i_] == '.') {
        if (point) fail("malformed number");
        point = true;
      } else {
        if (num > (INT64_MAX - 9) / 10 || den > INT64_MAX / 10) fail("number too long");
        num = num * 10 + (s_[i_] - '0');
        if (point) den *= 10;
        digits = true;
      }
      ++i_;
    }
    if (!digits) fail("malformed number");
    return Rational(num, den);
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int r_;
};

}  // namespace

Threshold Threshold::parse(const std::string& text) {
  std::string expr = text;
  if (text == "paper") expr = "11/36*2^r+3";
  if (text == "light") expr = "1/3*2^r+2";
  Threshold t(expr);
  // syntax check: some rank must evaluate (1/(r-1) fails at r = 1 only)
  for (int r = 1;; ++r) {
    try {
      t.value(r);
      return t;
    } catch (const std::invalid_argument&) {
      if (r == kMaxRank) throw;
    }
  }
}

Rational Threshold::value(int r) const { return Parser(expr_, r).parse(); }

std::size_t Threshold::first_size_above(int r) const {
  const Rational v = value(r);
  if (v.numerator() < 0) return 0;
  return static_cast<std::size_t>(v.numerator() / v.denominator() + 1);
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace sumsat
