#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "hlab/rational.hpp"

namespace hlab {

/// Exact arithmetic expression in one integer parameter `m`.
///
/// Grammar: numbers (integers, decimals, a/b literals are written as
/// divisions), the variable m, parentheses, unary minus, + - * / and ^ with
/// an integer-valued exponent, e.g. "(m+1)/2^(2*m-1)" or "1/3^m".
class Expr {
 public:
  /// Throws SpecError with where = "col N" on a syntax error.
  static Expr parse(std::string_view text);

  /// Throws InvalidArgument on division by zero or a non-integer exponent.
  Rational eval(std::int64_t m) const;

  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace hlab
