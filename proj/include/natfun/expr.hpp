#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>

#include "natfun/bigint.hpp"
#include "natfun/errors.hpp"

namespace natfun {

enum class ExprKind { Const, Var, Add, Mul, Pow };

/// Immutable expression tree over the variable n, constants >= 1, and the
/// operations +, *, ^. Handles share structure; copying is cheap and
/// thread-safe.
class Expr {
 public:
  static Expr var();
  static Expr constant(BigInt value);  // throws DomainError if value < 1
  static Expr add(Expr left, Expr right);
  static Expr mul(Expr left, Expr right);
  static Expr pow(Expr base, Expr exponent);

  ExprKind kind() const { return node_->kind; }
  bool is_leaf() const {
    return node_->kind == ExprKind::Const || node_->kind == ExprKind::Var;
  }

  /// Constant value; only valid for Const nodes.
  const BigInt& value() const { return node_->value; }

  /// Left operand (base, for Pow); only valid for internal nodes.
  Expr left() const { return Expr(node_->left); }
  /// Right operand (exponent, for Pow); only valid for internal nodes.
  Expr right() const { return Expr(node_->right); }

  /// Number of internal (+, *, ^) nodes.
  int operator_count() const;

  /// Depth of operator nesting: 0 for leaves, 1 + max over children otherwise.
  int operator_depth() const;

 private:
  struct Node {
    ExprKind kind;
    BigInt value;  // Const only
    std::shared_ptr<const Node> left, right;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering structural_order(const Expr& a, const Expr& b);
};

/// Structural equality.
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

/// Fixed total order on trees: by kind (Const < Var < Add < Mul < Pow), then
/// constant value, then operands left-to-right. Used for commutative-operand
/// sorting and deterministic enumeration.
std::strong_ordering structural_order(const Expr& a, const Expr& b);

/// Parses the expression grammar:
///   expr   := term ('+' term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' factor)?          -- '^' is right-associative
///   atom   := integer | 'n' | '(' expr ')'
/// Integers are unsigned decimal literals >= 1; whitespace is ignored.
/// Throws SyntaxError on malformed input and DomainError on the literal 0 or
/// on signed literals.
Expr parse(std::string_view text);

/// Emits text that parses back to a structurally identical tree, with minimal
/// parentheses under the grammar's precedence rules.
std::string render(const Expr& e);

/// Cap on the bit length of any intermediate value during evaluation.
/// The default admits double-exponential towers like 2^2^n up to n = 20
/// while stopping runaway growth early.
struct EvalBudget {
  std::size_t max_bits = std::size_t{1} << 20;
};

/// Exact bottom-up evaluation at n >= 1. Every subexpression value is checked
/// against the budget; on overflow throws BudgetExceededError naming the
/// offending subexpression.
BigInt evaluate(const Expr& e, const BigInt& n, const EvalBudget& budget = {});

/// Substitutes n := n + k (k >= 1) throughout, yielding the function
/// m -> f(m + k). Throws DomainError if k < 1.
Expr shift(const Expr& e, const BigInt& k);

}  // namespace natfun
