#include "natfun/expr.hpp"

#include <cctype>
#include <utility>

namespace natfun {

Expr Expr::var() {
  static const auto node =
      std::make_shared<const Node>(Node{ExprKind::Var, BigInt(), nullptr, nullptr});
  return Expr(node);
}

Expr Expr::constant(BigInt value) {
  if (value < 1) {
    throw DomainError("constant " + value.get_str() +
                      " is not a positive integer");
  }
  return Expr(std::make_shared<const Node>(
      Node{ExprKind::Const, std::move(value), nullptr, nullptr}));
}

Expr Expr::add(Expr left, Expr right) {
  return Expr(std::make_shared<const Node>(
      Node{ExprKind::Add, BigInt(), std::move(left.node_), std::move(right.node_)}));
}

Expr Expr::mul(Expr left, Expr right) {
  return Expr(std::make_shared<const Node>(
      Node{ExprKind::Mul, BigInt(), std::move(left.node_), std::move(right.node_)}));
}

Expr Expr::pow(Expr base, Expr exponent) {
  return Expr(std::make_shared<const Node>(
      Node{ExprKind::Pow, BigInt(), std::move(base.node_), std::move(exponent.node_)}));
}

int Expr::operator_count() const {
  if (is_leaf()) return 0;
  return 1 + left().operator_count() + right().operator_count();
}

int Expr::operator_depth() const {
  if (is_leaf()) return 0;
  int l = left().operator_depth();
  int r = right().operator_depth();
  return 1 + (l > r ? l : r);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind) return false;
  switch (a.node_->kind) {
    case ExprKind::Var:
      return true;
    case ExprKind::Const:
      return a.node_->value == b.node_->value;
    default:
      return Expr(a.node_->left) == Expr(b.node_->left) &&
             Expr(a.node_->right) == Expr(b.node_->right);
  }
}

std::strong_ordering structural_order(const Expr& a, const Expr& b) {
  auto rank = [](ExprKind k) {
    switch (k) {
      case ExprKind::Const: return 0;
      case ExprKind::Var: return 1;
      case ExprKind::Add: return 2;
      case ExprKind::Mul: return 3;
      case ExprKind::Pow: return 4;
    }
    return 5;
  };
  if (int c = rank(a.kind()) - rank(b.kind()); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  switch (a.kind()) {
    case ExprKind::Var:
      return std::strong_ordering::equal;
    case ExprKind::Const: {
      int c = cmp(a.value(), b.value());
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    default: {
      auto c = structural_order(a.left(), b.left());
      if (c != std::strong_ordering::equal) return c;
      return structural_order(a.right(), b.right());
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("unexpected trailing input");
    }
    return e;
  }

 private:
  Expr parse_sum() {
    Expr e = parse_product();
    for (;;) {
      skip_ws();
      if (!eat('+')) return e;
      e = Expr::add(e, parse_product());
    }
  }

  Expr parse_product() {
    Expr e = parse_power();
    for (;;) {
      skip_ws();
      if (!eat('*')) return e;
      e = Expr::mul(e, parse_power());
    }
  }

  // Right-associative: a^b^c parses as a^(b^c).
  Expr parse_power() {
    Expr base = parse_atom();
    skip_ws();
    if (eat('^')) {
      return Expr::pow(base, parse_power());
    }
    return base;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == 'n') {
      ++pos_;
      return Expr::var();
    }
    if ((c == '+' || c == '-') && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      throw DomainError("signed integer literal at position " +
                        std::to_string(pos_) + "; constants are unsigned");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      BigInt value(std::string(text_.substr(start, pos_ - start)), 10);
      if (value == 0) {
        throw DomainError("integer literal 0 at position " +
                          std::to_string(start) + "; constants start at 1");
      }
      return Expr::constant(std::move(value));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw SyntaxError(what + " at position " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) {
  if (text.empty()) throw SyntaxError("empty input");
  return Parser(text).run();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add: return 1;
    case ExprKind::Mul: return 2;
    case ExprKind::Pow: return 3;
    default: return 4;  // leaves never need parentheses
  }
}

void render_into(const Expr& e, std::string& out, int parent_prec,
                 bool is_right_operand) {
  int prec = precedence(e.kind());
  // Equal precedence needs parentheses on the side the grammar does not
  // associate towards: the right for + and *, the left for ^.
  bool parens = prec < parent_prec ||
                (prec == parent_prec &&
                 (e.kind() == ExprKind::Pow ? !is_right_operand : is_right_operand));
  if (parens) out += '(';
  switch (e.kind()) {
    case ExprKind::Var:
      out += 'n';
      break;
    case ExprKind::Const:
      out += e.value().get_str();
      break;
    case ExprKind::Add:
      render_into(e.left(), out, prec, false);
      out += '+';
      render_into(e.right(), out, prec, true);
      break;
    case ExprKind::Mul:
      render_into(e.left(), out, prec, false);
      out += '*';
      render_into(e.right(), out, prec, true);
      break;
    case ExprKind::Pow:
      render_into(e.left(), out, prec, false);
      out += '^';
      render_into(e.right(), out, prec, true);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out, 0, false);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void budget_overflow(const Expr& e) {
  throw BudgetExceededError(
      "evaluation budget exceeded at subexpression " + render(e), render(e));
}

BigInt eval_rec(const Expr& e, const BigInt& n, std::size_t max_bits) {
  switch (e.kind()) {
    case ExprKind::Var:
      if (bit_length(n) > max_bits) budget_overflow(e);
      return n;
    case ExprKind::Const:
      if (bit_length(e.value()) > max_bits) budget_overflow(e);
      return e.value();
    case ExprKind::Add: {
      BigInt v = eval_rec(e.left(), n, max_bits) + eval_rec(e.right(), n, max_bits);
      if (bit_length(v) > max_bits) budget_overflow(e);
      return v;
    }
    case ExprKind::Mul: {
      BigInt v = eval_rec(e.left(), n, max_bits) * eval_rec(e.right(), n, max_bits);
      if (bit_length(v) > max_bits) budget_overflow(e);
      return v;
    }
    case ExprKind::Pow: {
      BigInt base = eval_rec(e.left(), n, max_bits);
      BigInt exp = eval_rec(e.right(), n, max_bits);
      if (base == 1) return BigInt(1);
      // base >= 2: the result has at least exp+1 bits, so exp must be small.
      if (exp > static_cast<unsigned long>(max_bits)) budget_overflow(e);
      unsigned long exp_ui = mpz_get_ui(exp.get_mpz_t());
      // Cheap certain-overflow screen before computing: b^e >= 2^(e*(L-1))
      // where L = bit_length(base). Division form avoids size_t overflow.
      std::size_t base_bits = bit_length(base);
      if (exp_ui > (max_bits - 1) / (base_bits - 1)) budget_overflow(e);
      BigInt v;
      mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), exp_ui);
      if (bit_length(v) > max_bits) budget_overflow(e);
      return v;
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace

BigInt evaluate(const Expr& e, const BigInt& n, const EvalBudget& budget) {
  if (n < 1) {
    throw DomainError("evaluation point " + n.get_str() +
                      " is not a positive integer");
  }
  if (budget.max_bits < 1) throw DomainError("budget must allow at least 1 bit");
  return eval_rec(e, n, budget.max_bits);
}

Expr shift(const Expr& e, const BigInt& k) {
  if (k < 1) {
    throw DomainError("shift amount " + k.get_str() +
                      " is not a positive integer");
  }
  switch (e.kind()) {
    case ExprKind::Var:
      return Expr::add(Expr::var(), Expr::constant(k));
    case ExprKind::Const:
      return e;
    case ExprKind::Add:
      return Expr::add(shift(e.left(), k), shift(e.right(), k));
    case ExprKind::Mul:
      return Expr::mul(shift(e.left(), k), shift(e.right(), k));
    case ExprKind::Pow:
      return Expr::pow(shift(e.left(), k), shift(e.right(), k));
  }
  throw Error("unreachable expression kind");
}

}  // namespace natfun
