#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "constructive/real.hpp"

namespace constructive {

enum class ExprKind {
    literal,   // exact rational (integers, p/q via division, decimals)
    named,     // pi, e, sqrt2, zeta3
    sqrt_of,   // sqrt(rational-valued subexpression)
    negate,
    abs_of,
    inv_of,    // reciprocal, gated by apartness at evaluation time
    add, sub, mul, div_by,
    max_of, min_of,
};

enum class NamedConstant { pi, e, sqrt2, zeta3 };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    Rational literal;       // literal
    NamedConstant constant; // named
    ExprPtr a, b;
};

/// Grammar: integers, decimal literals (read exactly: 1.414 = 1414/1000),
/// named constants pi e sqrt2 zeta3, calls sqrt(x) abs(x) inv(x) max(x,y)
/// min(x,y), operators + - * / with the usual precedence, unary minus,
/// parentheses. Throws ParseError with position.
ExprPtr parse_expr(std::string_view text);

/// Canonical rendering; parse_expr(print_expr(e)) is structurally equal
/// to e for every tree parse_expr can produce.
std::string print_expr(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

struct EvalOk {
    std::string decimal;  // to_decimal rendering
    long long digits;     // guarantee: true value within 10^-digits
};

/// Evaluation refused to divide: the denominator subexpression could not be
/// certified apart from zero within the budget. A result, not an error.
struct EvalUnknown {
    std::string subexpression;
    long long budget;
};

using EvalResult = std::variant<EvalOk, EvalUnknown>;

/// Folds the tree into a duplex and renders it. Every division or inv whose
/// denominator is not a literal-only (hence decidable) subtree first runs
/// apartness_search with `budget`; exhaustion aborts the whole evaluation
/// with EvalUnknown naming the offending subexpression. Literal-only
/// denominators are decided exactly; a literal zero is a DomainError.
EvalResult eval_expr(const ExprPtr& e, long long digits, long long budget);

/// The duplex an expression denotes, with the same apartness discipline.
/// Throws on errors; returns nullopt exactly when eval_expr would be
/// Unknown (out parameter receives the offending subexpression).
std::optional<Duplex> fold_expr(const ExprPtr& e, long long budget,
                                std::string* offending = nullptr);

} // namespace constructive
