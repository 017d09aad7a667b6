#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "carl/errors.hpp"

namespace carl {

enum class ExprKind {
    Constant,
    Variable,
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Add,
    Sub,
    Mul,
    Div,
    Pow, // integer exponent >= 0
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double value = 0.0;    // Constant
    std::string name;      // Variable
    Expr a, b;             // operands
    int exponent = 0;      // Pow
};

// Constructors apply light simplification (constant folding, 0/1 identities)
// to bound tree growth under repeated differentiation.
Expr make_constant(double v);
Expr make_variable(std::string name);
Expr make_neg(Expr e);
Expr make_unary(ExprKind fn, Expr e); // Sin/Cos/Tan/Exp
Expr make_add(Expr a, Expr b);
Expr make_sub(Expr a, Expr b);
Expr make_mul(Expr a, Expr b);
Expr make_div(Expr a, Expr b);
Expr make_pow(Expr base, int exponent);

/// Name/value bindings for evaluation.
struct EvalEnv {
    const std::vector<std::string>* names;
    const double* values;

    double lookup(const std::string& name) const;
};

/// Parse an expression per the model grammar. Throws parse_error.
Expr parse_expr(std::string_view text);

/// IEEE double evaluation. Division by zero, tan poles, and overflow throw domain_error.
double eval(const Expr& e, const EvalEnv& env);
double eval(const Expr& e, const std::vector<std::string>& names,
            const std::vector<double>& values);

/// Exact symbolic derivative with respect to variable `v`.
Expr differentiate(const Expr& e, const std::string& v);

/// Render to text that re-parses to the identical tree.
std::string print_expr(const Expr& e);

bool tree_equal(const Expr& a, const Expr& b);

/// All variable names referenced by the expression.
std::set<std::string> variables(const Expr& e);

} // namespace carl
