#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace sumsat {

using Rational = boost::rational<std::int64_t>;

// A size threshold as an exact rational expression in r: numbers (integer
// or decimal), r, + - * / ^ and parentheses. Named forms: "paper" is
// 11/36*2^r+3, "light" is 1/3*2^r+2.
class Threshold {
 public:
  static Threshold parse(const std::string& text);

  const std::string& expression() const { return expr_; }
  Rational value(int r) const;
  // |A| > threshold, compared exactly.
  bool exceeded_by(std::size_t size, int r) const { return Rational(static_cast<std::int64_t>(size)) > value(r); }
  // Smallest integer size exceeding the threshold.
  std::size_t first_size_above(int r) const;

 private:
  explicit Threshold(std::string expr) : expr_(std::move(expr)) {}
  std::string expr_;
};

std::string to_string(const Rational& q);

}  // namespace sumsat
