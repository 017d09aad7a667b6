#include "carl/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace carl {

namespace {

Expr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

bool is_const(const Expr& e, double v) {
    return e->kind == ExprKind::Constant && e->value == v;
}

} // namespace

Expr make_constant(double v) {
    ExprNode n{ExprKind::Constant};
    n.value = v;
    return node(std::move(n));
}

Expr make_variable(std::string name) {
    ExprNode n{ExprKind::Variable};
    n.name = std::move(name);
    return node(std::move(n));
}

Expr make_neg(Expr e) {
    if (e->kind == ExprKind::Constant) return make_constant(-e->value);
    if (e->kind == ExprKind::Neg) return e->a;
    ExprNode n{ExprKind::Neg};
    n.a = std::move(e);
    return node(std::move(n));
}

Expr make_unary(ExprKind fn, Expr e) {
    ExprNode n{fn};
    n.a = std::move(e);
    return node(std::move(n));
}

Expr make_add(Expr a, Expr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
        return make_constant(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    ExprNode n{ExprKind::Add};
    n.a = std::move(a);
    n.b = std::move(b);
    return node(std::move(n));
}

Expr make_sub(Expr a, Expr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
        return make_constant(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return make_neg(std::move(b));
    ExprNode n{ExprKind::Sub};
    n.a = std::move(a);
    n.b = std::move(b);
    return node(std::move(n));
}

Expr make_mul(Expr a, Expr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
        return make_constant(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    ExprNode n{ExprKind::Mul};
    n.a = std::move(a);
    n.b = std::move(b);
    return node(std::move(n));
}

Expr make_div(Expr a, Expr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant && b->value != 0.0)
        return make_constant(a->value / b->value);
    if (is_const(a, 0.0) && !is_const(b, 0.0)) return make_constant(0.0);
    if (is_const(b, 1.0)) return a;
    ExprNode n{ExprKind::Div};
    n.a = std::move(a);
    n.b = std::move(b);
    return node(std::move(n));
}

Expr make_pow(Expr base, int exponent) {
    if (exponent < 0) throw parse_error("pow exponent must be a non-negative integer");
    if (exponent == 0) return make_constant(1.0);
    if (exponent == 1) return base;
    if (base->kind == ExprKind::Constant) return make_constant(std::pow(base->value, exponent));
    ExprNode n{ExprKind::Pow};
    n.a = std::move(base);
    n.exponent = exponent;
    return node(std::move(n));
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos); }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool consume(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input");
        return e;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (consume('+'))
                e = make_add(e, term());
            else if (consume('-'))
                e = make_sub(e, term());
            else
                return e;
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (consume('*'))
                e = make_mul(e, factor());
            else if (consume('/'))
                e = make_div(e, factor());
            else
                return e;
        }
    }

    Expr factor() {
        // unary minus binds looser than '^': -x^2 means -(x^2)
        if (consume('-')) return make_neg(factor());
        Expr b = base();
        if (consume('^')) return make_pow(b, integer());
        return b;
    }

    int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a non-negative integer exponent");
        if (pos < text.size() && (text[pos] == '.' || text[pos] == 'e' || text[pos] == 'E'))
            fail("pow exponent must be an integer");
        return std::atoi(std::string(text.substr(start, pos - start)).c_str());
    }

    Expr base() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Expr e = expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident_or_call();
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr number() {
        std::size_t start = pos;
        const char* begin = text.data() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos = start + static_cast<std::size_t>(end - begin);
        return make_constant(v);
    }

    Expr ident_or_call() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name(text.substr(start, pos - start));
        if (peek('(')) {
            ExprKind fn;
            if (name == "sin")
                fn = ExprKind::Sin;
            else if (name == "cos")
                fn = ExprKind::Cos;
            else if (name == "tan")
                fn = ExprKind::Tan;
            else if (name == "exp")
                fn = ExprKind::Exp;
            else
                fail("unknown function '" + name + "'");
            consume('(');
            Expr arg = expr();
            if (!consume(')')) fail("expected ')' after function argument");
            return make_unary(fn, arg);
        }
        return make_variable(std::move(name));
    }
};

} // namespace

Expr parse_expr(std::string_view text) {
    Parser p{text};
    return p.parse();
}

// -------------------------------------------------------------- evaluation

double EvalEnv::lookup(const std::string& name) const {
    for (std::size_t i = 0; i < names->size(); ++i)
        if ((*names)[i] == name) return values[i];
    throw domain_error("unbound variable '" + name + "'");
}

namespace {

double check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw domain_error(std::string(what) + " produced a non-finite value");
    return v;
}

} // namespace

double eval(const Expr& e, const EvalEnv& env) {
    switch (e->kind) {
        case ExprKind::Constant: return e->value;
        case ExprKind::Variable: return env.lookup(e->name);
        case ExprKind::Neg: return -eval(e->a, env);
        case ExprKind::Sin: return std::sin(eval(e->a, env));
        case ExprKind::Cos: return std::cos(eval(e->a, env));
        case ExprKind::Tan: {
            double arg = eval(e->a, env);
            if (std::cos(arg) == 0.0) throw domain_error("tan evaluated at a pole");
            return check_finite(std::tan(arg), "tan");
        }
        case ExprKind::Exp: return check_finite(std::exp(eval(e->a, env)), "exp");
        case ExprKind::Add: return check_finite(eval(e->a, env) + eval(e->b, env), "+");
        case ExprKind::Sub: return check_finite(eval(e->a, env) - eval(e->b, env), "-");
        case ExprKind::Mul: return check_finite(eval(e->a, env) * eval(e->b, env), "*");
        case ExprKind::Div: {
            double num = eval(e->a, env);
            double den = eval(e->b, env);
            if (den == 0.0) throw domain_error("division by zero");
            return check_finite(num / den, "/");
        }
        case ExprKind::Pow: {
            double b = eval(e->a, env);
            double r = 1.0;
            for (int k = 0; k < e->exponent; ++k) r *= b;
            return check_finite(r, "pow");
        }
    }
    throw numeric_error("eval: corrupt expression node");
}

double eval(const Expr& e, const std::vector<std::string>& names,
            const std::vector<double>& values) {
    EvalEnv env{&names, values.data()};
    return eval(e, env);
}

// ---------------------------------------------------------- differentiation

Expr differentiate(const Expr& e, const std::string& v) {
    switch (e->kind) {
        case ExprKind::Constant: return make_constant(0.0);
        case ExprKind::Variable: return make_constant(e->name == v ? 1.0 : 0.0);
        case ExprKind::Neg: return make_neg(differentiate(e->a, v));
        case ExprKind::Sin:
            return make_mul(make_unary(ExprKind::Cos, e->a), differentiate(e->a, v));
        case ExprKind::Cos:
            return make_mul(make_neg(make_unary(ExprKind::Sin, e->a)), differentiate(e->a, v));
        case ExprKind::Tan:
            // d tan(u) = (1 + tan(u)^2) u'
            return make_mul(make_add(make_constant(1.0),
                                     make_pow(make_unary(ExprKind::Tan, e->a), 2)),
                            differentiate(e->a, v));
        case ExprKind::Exp: return make_mul(e, differentiate(e->a, v));
        case ExprKind::Add: return make_add(differentiate(e->a, v), differentiate(e->b, v));
        case ExprKind::Sub: return make_sub(differentiate(e->a, v), differentiate(e->b, v));
        case ExprKind::Mul:
            return make_add(make_mul(differentiate(e->a, v), e->b),
                            make_mul(e->a, differentiate(e->b, v)));
        case ExprKind::Div:
            return make_div(make_sub(make_mul(differentiate(e->a, v), e->b),
                                     make_mul(e->a, differentiate(e->b, v))),
                            make_pow(e->b, 2));
        case ExprKind::Pow:
            return make_mul(make_mul(make_constant(static_cast<double>(e->exponent)),
                                     make_pow(e->a, e->exponent - 1)),
                            differentiate(e->a, v));
    }
    throw numeric_error("differentiate: corrupt expression node");
}

// ------------------------------------------------------------------ output

namespace {

// Precedence: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4, atoms 5.
int precedence(const Expr& e) {
    switch (e->kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

std::string fmt_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void render(const Expr& e, std::string& out);

void render_child(const Expr& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        render(child, out);
        out += ')';
    } else {
        render(child, out);
    }
}

void render(const Expr& e, std::string& out) {
    switch (e->kind) {
        case ExprKind::Constant:
            if (e->value < 0.0 || (e->value == 0.0 && std::signbit(e->value))) {
                out += '-';
                out += fmt_number(-e->value);
            } else {
                out += fmt_number(e->value);
            }
            return;
        case ExprKind::Variable: out += e->name; return;
        case ExprKind::Neg:
            out += '-';
            render_child(e->a, 3, out);
            return;
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Tan:
        case ExprKind::Exp: {
            const char* fn = e->kind == ExprKind::Sin   ? "sin"
                             : e->kind == ExprKind::Cos ? "cos"
                             : e->kind == ExprKind::Tan ? "tan"
                                                        : "exp";
            out += fn;
            out += '(';
            render(e->a, out);
            out += ')';
            return;
        }
        case ExprKind::Add:
            render_child(e->a, 1, out);
            out += " + ";
            render_child(e->b, 2, out);
            return;
        case ExprKind::Sub:
            render_child(e->a, 1, out);
            out += " - ";
            render_child(e->b, 2, out);
            return;
        case ExprKind::Mul:
            render_child(e->a, 2, out);
            out += "*";
            render_child(e->b, 3, out);
            return;
        case ExprKind::Div:
            render_child(e->a, 2, out);
            out += "/";
            render_child(e->b, 3, out);
            return;
        case ExprKind::Pow:
            render_child(e->a, 5, out);
            out += '^';
            out += std::to_string(e->exponent);
            return;
    }
}

} // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    render(e, out);
    return out;
}

bool tree_equal(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Constant: return a->value == b->value;
        case ExprKind::Variable: return a->name == b->name;
        case ExprKind::Pow: return a->exponent == b->exponent && tree_equal(a->a, b->a);
        case ExprKind::Neg:
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Tan:
        case ExprKind::Exp: return tree_equal(a->a, b->a);
        default: return tree_equal(a->a, b->a) && tree_equal(a->b, b->b);
    }
}

namespace {

void collect(const Expr& e, std::set<std::string>& out) {
    if (e->kind == ExprKind::Variable) out.insert(e->name);
    if (e->a) collect(e->a, out);
    if (e->b) collect(e->b, out);
}

} // namespace

std::set<std::string> variables(const Expr& e) {
    std::set<std::string> out;
    collect(e, out);
    return out;
}

} // namespace carl
