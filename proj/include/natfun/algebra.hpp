#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natfun/expr.hpp"

namespace natfun {

/// A named local rewrite step. `apply` returns the replacement when the rule
/// matches at the root of the given expression, nullopt otherwise. Every rule
/// preserves evaluation at every n; constant folding additionally respects
/// `fold_bits` and declines to fold results that would grow past it.
struct RewriteRule {
  std::string_view name;
  std::optional<Expr> (*apply)(const Expr& e, std::size_t fold_bits);
};

/// The rule table used by normalize, in application order.
std::span<const RewriteRule> rewrite_rules();

/// Best-effort normal form: folds constants, eliminates *1/^1 identities and
/// 1^x, merges a^b * a^c into a^(b+c), flattens (a^b)^c into a^(b*c), and
/// sorts commutative operand chains under the structural order, repeating to a
/// fixpoint. The result evaluates identically to the input at every n.
/// Canonicity across all semantically equal forms is not claimed.
Expr normalize(const Expr& e, std::size_t fold_bits = EvalBudget{}.max_bits);

/// Definitive inequality witness from sampling.
struct Difference {
  BigInt n;    // sample point where the functions differ
  BigInt lhs;  // value of the first expression
  BigInt rhs;  // value of the second
};

/// Evaluates both expressions at every sample point (all >= 1). Returns a
/// Difference at the first disagreeing point, or nullopt when all samples
/// agree. Agreement is evidence, not proof, of equality. Propagates
/// BudgetExceededError from evaluation.
std::optional<Difference> semantic_equal(const Expr& e1, const Expr& e2,
                                         std::span<const BigInt> sample_points,
                                         const EvalBudget& budget = {});

/// Generator letters for building expressions from the symbols (n and
/// constants) by closing under one operation per round.
enum class OpLetter { Add, Mul, Pow };

char op_letter_symbol(OpLetter op);            // '+', '*', '^'
std::string word_to_string(std::span<const OpLetter> word);  // e.g. "A^A^A+"

struct LengthResult {
  int length;                  // minimal number of generator applications
  std::vector<OpLetter> word;  // witnessing word, in application order
};

/// Minimum length k of a word over {A+, A*, A^} that generates the expression
/// from the symbols, found by exhaustive search over words of increasing
/// length. A word is feasible when every internal node can be scheduled into
/// a round 1..k whose letter matches its operator, with children scheduled
/// strictly earlier. Throws SizeLimitError (carrying the operator count as an
/// upper bound) when the expression has more than max_operators operators.
LengthResult syntactic_length(const Expr& e, int max_operators = 12);

/// Replays a word against an expression: true when the word generates it.
bool word_generates(const Expr& e, std::span<const OpLetter> word);

/// All expressions with at most max_operators internal nodes and constants
/// drawn from the given set, each reported once up to normalize-equality
/// (the normalized representative of the first generation-order occurrence
/// is yielded). The generation order is part of the contract: ascending
/// operator count; within count 0, the variable n then the constants in
/// ascending value; within count j, operator kind (+ then * then ^), then
/// left operand size 0..j-1, then the recursive order of the left and right
/// operands. Throws DomainError when the constant set is empty.
std::vector<Expr> enumerate_exprs(int max_operators,
                                  const std::vector<BigInt>& constants);

}  // namespace natfun
