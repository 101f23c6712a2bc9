#include "hlab/expr.hpp"

#include <cctype>
#include <vector>

#include "hlab/error.hpp"

namespace hlab {

struct Expr::Node {
  enum class Kind { number, param, neg, add, sub, mul, div, pow } kind;
  Rational value;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Expr::Node>(Expr::Node{kind, Rational(0), std::move(lhs), std::move(rhs)});
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError("col " + std::to_string(pos_ + 1), what + " in expression \"" + std::string(text_) + "\"");
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

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Kind::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Kind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'm') {
      ++pos_;
      return make(Kind::param);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      auto node = std::make_shared<Expr::Node>(Expr::Node{Kind::number, Rational(0), nullptr, nullptr});
      try {
        node->value = parse_rational(text_.substr(start, pos_ - start));
      } catch (const InvalidArgument&) {
        pos_ = start;
        fail("bad number");
      }
      return node;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Rational eval_node(const Expr::Node& n, std::int64_t m) {
  switch (n.kind) {
    case Kind::number:
      return n.value;
    case Kind::param:
      return Rational(m);
    case Kind::neg:
      return -eval_node(*n.lhs, m);
    case Kind::add:
      return eval_node(*n.lhs, m) + eval_node(*n.rhs, m);
    case Kind::sub:
      return eval_node(*n.lhs, m) - eval_node(*n.rhs, m);
    case Kind::mul:
      return eval_node(*n.lhs, m) * eval_node(*n.rhs, m);
    case Kind::div: {
      Rational d = eval_node(*n.rhs, m);
      if (d == 0) throw InvalidArgument("division by zero at m=" + std::to_string(m));
      return eval_node(*n.lhs, m) / d;
    }
    case Kind::pow: {
      Rational e = eval_node(*n.rhs, m);
      if (denominator(e) != 1) throw InvalidArgument("non-integer exponent at m=" + std::to_string(m));
      BigInt k = numerator(e);
      if (k > 100'000 || k < -100'000) throw InvalidArgument("exponent too large at m=" + std::to_string(m));
      return hlab::pow(eval_node(*n.lhs, m), k.convert_to<std::int64_t>());
    }
  }
  throw InvalidArgument("corrupt expression");
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Expr e;
  e.text_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

Rational Expr::eval(std::int64_t m) const {
  if (!root_) throw InvalidArgument("empty expression");
  return eval_node(*root_, m);
}

}  // namespace hlab
