#include "natfun/algebra.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace natfun {

namespace {

bool fits_fold(const BigInt& base, const BigInt& exp, std::size_t fold_bits) {
  if (base == 1) return true;
  if (exp > static_cast<unsigned long>(fold_bits)) return false;
  unsigned long e = mpz_get_ui(exp.get_mpz_t());
  std::size_t base_bits = bit_length(base);
  // Upper-bound the result size: bits(b^e) <= e * bits(b).
  if (e != 0 && base_bits > fold_bits / e) return false;
  return true;
}

std::optional<Expr> fold_add(const Expr& e, std::size_t) {
  if (e.kind() == ExprKind::Add && e.left().kind() == ExprKind::Const &&
      e.right().kind() == ExprKind::Const) {
    return Expr::constant(e.left().value() + e.right().value());
  }
  return std::nullopt;
}

std::optional<Expr> fold_mul(const Expr& e, std::size_t) {
  if (e.kind() == ExprKind::Mul && e.left().kind() == ExprKind::Const &&
      e.right().kind() == ExprKind::Const) {
    return Expr::constant(e.left().value() * e.right().value());
  }
  return std::nullopt;
}

std::optional<Expr> fold_pow(const Expr& e, std::size_t fold_bits) {
  if (e.kind() == ExprKind::Pow && e.left().kind() == ExprKind::Const &&
      e.right().kind() == ExprKind::Const &&
      fits_fold(e.left().value(), e.right().value(), fold_bits)) {
    if (e.left().value() == 1) return Expr::constant(1);
    BigInt v;
    mpz_pow_ui(v.get_mpz_t(), e.left().value().get_mpz_t(),
               mpz_get_ui(e.right().value().get_mpz_t()));
    return Expr::constant(std::move(v));
  }
  return std::nullopt;
}

std::optional<Expr> mul_by_one(const Expr& e, std::size_t) {
  if (e.kind() != ExprKind::Mul) return std::nullopt;
  if (e.left().kind() == ExprKind::Const && e.left().value() == 1) return e.right();
  if (e.right().kind() == ExprKind::Const && e.right().value() == 1) return e.left();
  return std::nullopt;
}

std::optional<Expr> pow_exponent_one(const Expr& e, std::size_t) {
  if (e.kind() == ExprKind::Pow && e.right().kind() == ExprKind::Const &&
      e.right().value() == 1) {
    return e.left();
  }
  return std::nullopt;
}

std::optional<Expr> pow_base_one(const Expr& e, std::size_t) {
  if (e.kind() == ExprKind::Pow && e.left().kind() == ExprKind::Const &&
      e.left().value() == 1) {
    return Expr::constant(1);
  }
  return std::nullopt;
}

// a^b * a^c -> a^(b+c)
std::optional<Expr> merge_powers(const Expr& e, std::size_t) {
  if (e.kind() == ExprKind::Mul && e.left().kind() == ExprKind::Pow &&
      e.right().kind() == ExprKind::Pow && e.left().left() == e.right().left()) {
    return Expr::pow(e.left().left(),
                     Expr::add(e.left().right(), e.right().right()));
  }
  return std::nullopt;
}

// (a^b)^c -> a^(b*c)
std::optional<Expr> flatten_power(const Expr& e, std::size_t) {
  if (e.kind() == ExprKind::Pow && e.left().kind() == ExprKind::Pow) {
    return Expr::pow(e.left().left(),
                     Expr::mul(e.left().right(), e.right()));
  }
  return std::nullopt;
}

// Reorders the operands of a commutative chain into sorted left-associated
// form; also merges same-base power factors that sorting makes adjacent.
std::optional<Expr> sort_operands(const Expr& e, std::size_t) {
  if (e.kind() != ExprKind::Add && e.kind() != ExprKind::Mul) return std::nullopt;
  ExprKind k = e.kind();

  std::vector<Expr> chain;
  auto flatten = [&](auto&& self, const Expr& x) -> void {
    if (x.kind() == k) {
      self(self, x.left());
      self(self, x.right());
    } else {
      chain.push_back(x);
    }
  };
  flatten(flatten, e);

  std::stable_sort(chain.begin(), chain.end(), [](const Expr& a, const Expr& b) {
    return structural_order(a, b) == std::strong_ordering::less;
  });

  if (k == ExprKind::Mul) {
    for (std::size_t i = 0; i + 1 < chain.size();) {
      if (chain[i].kind() == ExprKind::Pow &&
          chain[i + 1].kind() == ExprKind::Pow &&
          chain[i].left() == chain[i + 1].left()) {
        chain[i] = Expr::pow(chain[i].left(), Expr::add(chain[i].right(),
                                                        chain[i + 1].right()));
        chain.erase(chain.begin() + static_cast<long>(i) + 1);
      } else {
        ++i;
      }
    }
  }

  Expr rebuilt = chain[0];
  for (std::size_t i = 1; i < chain.size(); ++i) {
    rebuilt = (k == ExprKind::Add) ? Expr::add(rebuilt, chain[i])
                                   : Expr::mul(rebuilt, chain[i]);
  }
  if (rebuilt == e) return std::nullopt;
  return rebuilt;
}

constexpr std::array<RewriteRule, 9> kRules{{
    {"fold-add", fold_add},
    {"fold-mul", fold_mul},
    {"fold-pow", fold_pow},
    {"mul-by-one", mul_by_one},
    {"pow-exponent-one", pow_exponent_one},
    {"pow-base-one", pow_base_one},
    {"merge-powers", merge_powers},
    {"flatten-power", flatten_power},
    {"sort-operands", sort_operands},
}};

}  // namespace

std::span<const RewriteRule> rewrite_rules() { return kRules; }

Expr normalize(const Expr& e, std::size_t fold_bits) {
  Expr cur = e;
  if (!cur.is_leaf()) {
    Expr l = normalize(cur.left(), fold_bits);
    Expr r = normalize(cur.right(), fold_bits);
    if (!(l == cur.left()) || !(r == cur.right())) {
      switch (cur.kind()) {
        case ExprKind::Add: cur = Expr::add(l, r); break;
        case ExprKind::Mul: cur = Expr::mul(l, r); break;
        case ExprKind::Pow: cur = Expr::pow(l, r); break;
        default: break;
      }
    }
  }
  for (const auto& rule : kRules) {
    if (auto replaced = rule.apply(cur, fold_bits)) {
      // Each rule strictly decreases (node count, power count, inversions)
      // lexicographically, so this recursion terminates.
      return normalize(*replaced, fold_bits);
    }
  }
  return cur;
}

std::optional<Difference> semantic_equal(const Expr& e1, const Expr& e2,
                                         std::span<const BigInt> sample_points,
                                         const EvalBudget& budget) {
  if (sample_points.empty()) throw DomainError("sample points must be non-empty");
  for (const BigInt& n : sample_points) {
    BigInt v1 = evaluate(e1, n, budget);
    BigInt v2 = evaluate(e2, n, budget);
    if (v1 != v2) return Difference{n, v1, v2};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Length

char op_letter_symbol(OpLetter op) {
  switch (op) {
    case OpLetter::Add: return '+';
    case OpLetter::Mul: return '*';
    case OpLetter::Pow: return '^';
  }
  return '?';
}

std::string word_to_string(std::span<const OpLetter> word) {
  std::string out;
  for (OpLetter op : word) {
    out += 'A';
    out += op_letter_symbol(op);
  }
  return out;
}

namespace {

OpLetter letter_of(ExprKind k) {
  switch (k) {
    case ExprKind::Add: return OpLetter::Add;
    case ExprKind::Mul: return OpLetter::Mul;
    default: return OpLetter::Pow;
  }
}

// Minimal feasible round for every node under the given word, or -1 when the
// word cannot schedule the expression. The greedy minimum is optimal: any
// valid assignment dominates it pointwise.
int earliest_round(const Expr& e, std::span<const OpLetter> word) {
  if (e.is_leaf()) return 0;
  int l = earliest_round(e.left(), word);
  if (l < 0) return -1;
  int r = earliest_round(e.right(), word);
  if (r < 0) return -1;
  OpLetter needed = letter_of(e.kind());
  for (int round = std::max(l, r) + 1; round <= static_cast<int>(word.size());
       ++round) {
    if (word[round - 1] == needed) return round;
  }
  return -1;
}

bool search_words(const Expr& e, int k, std::vector<OpLetter>& word) {
  if (static_cast<int>(word.size()) == k) {
    return earliest_round(e, word) >= 0;
  }
  for (OpLetter op : {OpLetter::Add, OpLetter::Mul, OpLetter::Pow}) {
    word.push_back(op);
    if (search_words(e, k, word)) return true;
    word.pop_back();
  }
  return false;
}

}  // namespace

bool word_generates(const Expr& e, std::span<const OpLetter> word) {
  return earliest_round(e, word) >= 0;
}

LengthResult syntactic_length(const Expr& e, int max_operators) {
  int ops = e.operator_count();
  if (ops > max_operators) {
    throw SizeLimitError("expression has " + std::to_string(ops) +
                             " operators; exact length search is limited to " +
                             std::to_string(max_operators) +
                             " (the operator count is an upper bound)",
                         ops);
  }
  // Rounds strictly increase from leaves to root, so nesting depth is a
  // lower bound; the operator count (one round per node) is an upper bound.
  for (int k = e.operator_depth(); k <= ops; ++k) {
    std::vector<OpLetter> word;
    word.reserve(static_cast<std::size_t>(k));
    if (search_words(e, k, word)) {
      return LengthResult{k, std::move(word)};
    }
  }
  throw Error("length search failed to terminate at the operator count");
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Expr> enumerate_exprs(int max_operators,
                                  const std::vector<BigInt>& constants) {
  if (constants.empty()) throw DomainError("constant set must be non-empty");
  std::vector<BigInt> consts = constants;
  std::sort(consts.begin(), consts.end());
  consts.erase(std::unique(consts.begin(), consts.end()), consts.end());

  // raw[j] = all trees with exactly j operators, in generation order.
  std::vector<std::vector<Expr>> raw(static_cast<std::size_t>(max_operators) + 1);
  raw[0].push_back(Expr::var());
  for (const BigInt& c : consts) raw[0].push_back(Expr::constant(c));

  for (int j = 1; j <= max_operators; ++j) {
    for (ExprKind k : {ExprKind::Add, ExprKind::Mul, ExprKind::Pow}) {
      for (int l = 0; l <= j - 1; ++l) {
        int r = j - 1 - l;
        for (const Expr& left : raw[static_cast<std::size_t>(l)]) {
          for (const Expr& right : raw[static_cast<std::size_t>(r)]) {
            switch (k) {
              case ExprKind::Add:
                raw[static_cast<std::size_t>(j)].push_back(Expr::add(left, right));
                break;
              case ExprKind::Mul:
                raw[static_cast<std::size_t>(j)].push_back(Expr::mul(left, right));
                break;
              default:
                raw[static_cast<std::size_t>(j)].push_back(Expr::pow(left, right));
                break;
            }
          }
        }
      }
    }
  }

  std::vector<Expr> out;
  std::unordered_set<std::string> seen;
  for (const auto& bucket : raw) {
    for (const Expr& e : bucket) {
      Expr norm = normalize(e);
      if (seen.insert(render(norm)).second) {
        out.push_back(std::move(norm));
      }
    }
  }
  return out;
}

}  // namespace natfun
