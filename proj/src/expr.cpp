#include "solsurf/expr.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>

#include "solsurf/error.hpp"
#include "solsurf/quadrature.hpp"
#include "solsurf/specfun.hpp"

namespace solsurf {

struct Expr::Node {
    Kind kind = Kind::Number;
    cplx value{};
    std::string name;
    Func func = Func::Exp;
    std::shared_ptr<const Node> a, b;
    bool has_z = false;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct FuncEntry {
    std::string_view name;
    Func func;
};

constexpr FuncEntry kFunctions[] = {
    {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt}, {"sin", Func::Sin},
    {"cos", Func::Cos},   {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"erf", Func::Erf},
};

std::optional<Func> lookup_function(std::string_view name)
{
    for (const auto& f : kFunctions)
        if (f.name == name)
            return f.func;
    return std::nullopt;
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

cplx apply(Func f, cplx x, double tol)
{
    switch (f) {
    case Func::Exp: return std::exp(x);
    case Func::Log: return std::log(x);
    case Func::Sqrt: return std::sqrt(x);
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Sinh: return std::sinh(x);
    case Func::Cosh: return std::cosh(x);
    case Func::Erf: return erf_c(x, tol);
    }
    return {};
}

}  // namespace

std::string_view to_string(Func f)
{
    for (const auto& e : kFunctions)
        if (e.func == f)
            return e.name;
    return "?";
}

cplx complex_pow(cplx base, cplx exponent)
{
    if (exponent.imag() == 0.0 && std::abs(exponent.real()) <= 1024.0 &&
        exponent.real() == std::floor(exponent.real())) {
        long n = static_cast<long>(exponent.real());
        const bool invert = n < 0;
        n = std::labs(n);
        cplx result = 1.0, b = base;
        while (n > 0) {
            if (n & 1)
                result *= b;
            b *= b;
            n >>= 1;
        }
        return invert ? 1.0 / result : result;
    }
    if (base == cplx(0.0)) {
        if (exponent.real() > 0)
            return 0.0;
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return std::exp(exponent * std::log(base));
}

// ---------------------------------------------------------------------------
// construction with constant folding

Expr::Expr() : Expr(number(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::number(cplx v)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::variable()
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->has_z = true;
    return Expr(std::move(n));
}

Expr Expr::parameter(std::string name)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Parameter;
    n->name = std::move(name);
    return Expr(std::move(n));
}

// Helpers with access to the private constructor.
struct ExprAccess {
    static NodePtr node(const Expr& e) { return e.node_; }
    static Expr wrap(NodePtr n) { return Expr(std::move(n)); }
    static Expr binary(Expr::Kind kind, const Expr& a, const Expr& b)
    {
        auto n = std::make_shared<Expr::Node>();
        n->kind = kind;
        n->a = a.node_;
        n->b = b.node_;
        n->has_z = a.depends_on_z() || b.depends_on_z();
        return Expr(std::move(n));
    }
    static Expr unary(Expr::Kind kind, const Expr& a)
    {
        auto n = std::make_shared<Expr::Node>();
        n->kind = kind;
        n->a = a.node_;
        n->has_z = a.depends_on_z();
        return Expr(std::move(n));
    }
};

namespace {

std::optional<Expr> fold_if_finite(cplx v)
{
    if (!finite(v))
        return std::nullopt;
    return Expr::number(v);
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b)
{
    if (a.is_number() && b.is_number())
        if (auto f = fold_if_finite(a.value() + b.value()))
            return *f;
    if (a.is_number(0.0))
        return b;
    if (b.is_number(0.0))
        return a;
    return ExprAccess::binary(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b)
{
    if (a.is_number() && b.is_number())
        if (auto f = fold_if_finite(a.value() - b.value()))
            return *f;
    if (b.is_number(0.0))
        return a;
    if (a.is_number(0.0))
        return -b;
    return ExprAccess::binary(Expr::Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b)
{
    if (a.is_number() && b.is_number())
        if (auto f = fold_if_finite(a.value() * b.value()))
            return *f;
    if (a.is_number(0.0) || b.is_number(0.0))
        return Expr::number(0.0);
    if (a.is_number(1.0))
        return b;
    if (b.is_number(1.0))
        return a;
    return ExprAccess::binary(Expr::Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b)
{
    if (a.is_number() && b.is_number() && b.value() != cplx(0.0))
        if (auto f = fold_if_finite(a.value() / b.value()))
            return *f;
    if (b.is_number(1.0))
        return a;
    if (a.is_number(0.0) && !b.is_number(0.0))
        return Expr::number(0.0);
    return ExprAccess::binary(Expr::Kind::Div, a, b);
}

Expr operator-(const Expr& a)
{
    if (a.is_number())
        return Expr::number(-a.value());
    if (a.kind() == Expr::Kind::Neg)
        return a.lhs();
    return ExprAccess::unary(Expr::Kind::Neg, a);
}

Expr pow(const Expr& base, const Expr& exponent)
{
    if (base.is_number() && exponent.is_number())
        if (auto f = fold_if_finite(complex_pow(base.value(), exponent.value())))
            return *f;
    if (exponent.is_number(1.0))
        return base;
    if (exponent.is_number(0.0))
        return Expr::number(1.0);
    return ExprAccess::binary(Expr::Kind::Pow, base, exponent);
}

Expr Expr::call(Func f, const Expr& arg)
{
    if (arg.is_number()) {
        try {
            if (auto folded = fold_if_finite(apply(f, arg.value(), 1e-15)))
                return *folded;
        } catch (const Error&) {
            // leave unfolded; evaluation will report the failure
        }
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->func = f;
    n->a = ExprAccess::node(arg);
    n->has_z = arg.depends_on_z();
    return Expr(std::move(n));
}

Expr Expr::integral(const Expr& integrand, const Expr& base)
{
    if (base.depends_on_z())
        throw Error(ErrorKind::InvalidArgument, "integral base point must not depend on z");
    if (integrand.is_number(0.0))
        return number(0.0);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Integral;
    n->a = ExprAccess::node(integrand);
    n->b = ExprAccess::node(base);
    n->has_z = true;
    return Expr(std::move(n));
}

Expr exp(const Expr& a) { return Expr::call(Func::Exp, a); }
Expr log(const Expr& a) { return Expr::call(Func::Log, a); }
Expr sqrt(const Expr& a) { return Expr::call(Func::Sqrt, a); }
Expr erf(const Expr& a) { return Expr::call(Func::Erf, a); }

// ---------------------------------------------------------------------------
// accessors

Expr::Kind Expr::kind() const { return node_->kind; }
cplx Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Func Expr::func() const { return node_->func; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }
bool Expr::depends_on_z() const { return node_->has_z; }

std::set<std::string> Expr::parameter_names() const
{
    std::set<std::string> out;
    std::function<void(const Node*)> walk = [&](const Node* n) {
        if (!n)
            return;
        if (n->kind == Kind::Parameter)
            out.insert(n->name);
        walk(n->a.get());
        walk(n->b.get());
    };
    walk(node_.get());
    return out;
}

bool Expr::structurally_equal(const Expr& other) const
{
    std::function<bool(const Node*, const Node*)> eq = [&](const Node* x, const Node* y) {
        if (x == y)
            return true;
        if (!x || !y || x->kind != y->kind)
            return false;
        switch (x->kind) {
        case Kind::Number: return x->value == y->value;
        case Kind::Variable: return true;
        case Kind::Parameter: return x->name == y->name;
        case Kind::Call: return x->func == y->func && eq(x->a.get(), y->a.get());
        default: return eq(x->a.get(), y->a.get()) && eq(x->b.get(), y->b.get());
        }
    };
    return eq(node_.get(), other.node_.get());
}

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(Expr::Kind k)
{
    switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
    }
}

std::string format_real(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_number(cplx v)
{
    if (v.imag() == 0.0) {
        if (v.real() < 0 || std::signbit(v.real()))
            return "(" + format_real(v.real()) + ")";
        return format_real(v.real());
    }
    if (v == cplx(0.0, 1.0))
        return "i";
    std::string im = format_real(v.imag());
    if (v.imag() < 0)
        im = "(" + im + ")";
    if (v.real() == 0.0 && !std::signbit(v.real()))
        return "(" + im + "*i)";
    return "(" + format_real(v.real()) + "+" + im + "*i)";
}

void print(const Expr& e, std::string& out)
{
    auto child = [&](const Expr& c, bool parens) {
        if (parens)
            out += '(';
        print(c, out);
        if (parens)
            out += ')';
    };
    const int p = precedence(e.kind());
    switch (e.kind()) {
    case Expr::Kind::Number: out += format_number(e.value()); return;
    case Expr::Kind::Variable: out += 'z'; return;
    case Expr::Kind::Parameter: out += e.name(); return;
    case Expr::Kind::Call:
        out += to_string(e.func());
        child(e.lhs(), true);
        return;
    case Expr::Kind::Integral:
        out += "integral(";
        print(e.lhs(), out);
        out += ", ";
        print(e.rhs(), out);
        out += ')';
        return;
    case Expr::Kind::Neg:
        out += '-';
        child(e.lhs(), precedence(e.lhs().kind()) < 3);
        return;
    case Expr::Kind::Pow:
        child(e.lhs(), precedence(e.lhs().kind()) <= 4);
        out += '^';
        child(e.rhs(), precedence(e.rhs().kind()) < 3);
        return;
    default: {
        const char op = e.kind() == Expr::Kind::Add   ? '+'
                        : e.kind() == Expr::Kind::Sub ? '-'
                        : e.kind() == Expr::Kind::Mul ? '*'
                                                      : '/';
        child(e.lhs(), precedence(e.lhs().kind()) < p);
        out += op;
        child(e.rhs(), precedence(e.rhs().kind()) <= p);
        return;
    }
    }
}

}  // namespace

std::string Expr::to_string() const
{
    std::string out;
    print(*this, out);
    return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    Expr run()
    {
        skip_ws();
        if (pos_ >= text_.size())
            fail("empty expression");
        Expr e = parse_expr();
        skip_ws();
        if (pos_ < text_.size())
            fail(std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::SyntaxError)
    {
        throw Error(kind, msg, pos_);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr()
    {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = lhs + parse_term();
            else if (accept('-'))
                lhs = lhs - parse_term();
            else
                return lhs;
        }
    }

    Expr parse_term()
    {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = lhs * parse_unary();
            else if (accept('/'))
                lhs = lhs / parse_unary();
            else
                return lhs;
        }
    }

    Expr parse_unary()
    {
        if (accept('-'))
            return -parse_unary();
        if (accept('+'))
            return parse_unary();
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        if (accept('^'))
            return pow(base, parse_unary());
        return base;
    }

    Expr parse_primary()
    {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-'))
                ++q;
            if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
                pos_ = q;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        double v = 0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::number(v);
    }

    Expr parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        const std::size_t after = pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            if (name == "integral") {
                Expr integrand = parse_expr();
                if (!accept(','))
                    fail("integral(f, a) expects two arguments");
                const std::size_t base_pos = pos_;
                Expr base = parse_expr();
                if (!accept(')'))
                    fail("expected ')'");
                if (base.depends_on_z()) {
                    pos_ = base_pos;
                    fail("integral base point must not depend on z");
                }
                return Expr::integral(integrand, base);
            }
            const auto f = lookup_function(name);
            if (!f) {
                pos_ = start;
                fail("unknown function '" + name + "'", ErrorKind::UnknownFunction);
            }
            Expr arg = parse_expr();
            if (!accept(')'))
                fail("expected ')'");
            return Expr::call(*f, arg);
        }
        pos_ = after;
        if (name == "z")
            return Expr::variable();
        if (name == "i")
            return Expr::number(cplx(0.0, 1.0));
        if (name == "pi")
            return Expr::number(std::numbers::pi);
        if (name == "e")
            return Expr::number(std::numbers::e);
        if (options_.parameters && !options_.parameters->count(name)) {
            pos_ = start;
            fail("unknown identifier '" + name + "'", ErrorKind::UnknownIdentifier);
        }
        return Expr::parameter(name);
    }

    std::string_view text_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(std::string_view text, const ParseOptions& options)
{
    return Parser(text, options).run();
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

cplx eval_node(const Expr& e, cplx z, const ParamMap& params, const EvalOptions& opt)
{
    cplx v;
    switch (e.kind()) {
    case Expr::Kind::Number: return e.value();
    case Expr::Kind::Variable: return z;
    case Expr::Kind::Parameter: {
        auto it = params.find(e.name());
        if (it == params.end())
            throw Error(ErrorKind::UnboundParameter, "parameter '" + e.name() + "' is not bound");
        return it->second;
    }
    case Expr::Kind::Add: v = eval_node(e.lhs(), z, params, opt) + eval_node(e.rhs(), z, params, opt); break;
    case Expr::Kind::Sub: v = eval_node(e.lhs(), z, params, opt) - eval_node(e.rhs(), z, params, opt); break;
    case Expr::Kind::Mul: v = eval_node(e.lhs(), z, params, opt) * eval_node(e.rhs(), z, params, opt); break;
    case Expr::Kind::Div: {
        const cplx den = eval_node(e.rhs(), z, params, opt);
        if (den == cplx(0.0))
            throw Error(ErrorKind::PoleOrOverflow, "division by zero");
        v = eval_node(e.lhs(), z, params, opt) / den;
        break;
    }
    case Expr::Kind::Pow:
        v = complex_pow(eval_node(e.lhs(), z, params, opt), eval_node(e.rhs(), z, params, opt));
        break;
    case Expr::Kind::Neg: v = -eval_node(e.lhs(), z, params, opt); break;
    case Expr::Kind::Call: {
        const cplx arg = eval_node(e.lhs(), z, params, opt);
        if (e.func() == Func::Log && arg == cplx(0.0))
            throw Error(ErrorKind::PoleOrOverflow, "log(0)");
        v = apply(e.func(), arg, opt.special_tol);
        break;
    }
    case Expr::Kind::Integral: {
        const cplx base = eval_node(e.rhs(), z, params, opt);
        const cplx delta = z - base;
        if (delta == cplx(0.0))
            return 0.0;
        const Expr integrand = e.lhs();
        auto f = [&](double t) { return eval_node(integrand, base + t * delta, params, opt) * delta; };
        v = integrate_gk<cplx>(f, 0.0, 1.0, std::max(opt.special_tol, 1e-14));
        break;
    }
    }
    if (!finite(v))
        throw Error(ErrorKind::PoleOrOverflow, "non-finite value in '" + e.to_string() + "'");
    return v;
}

}  // namespace

cplx Expr::eval(cplx z, const ParamMap& params, const EvalOptions& options) const
{
    const cplx v = eval_node(*this, z, params, options);
    if (std::abs(v) > options.blowup)
        throw Error(ErrorKind::PoleOrOverflow, "|value| exceeds blowup threshold");
    return v;
}

// ---------------------------------------------------------------------------
// differentiation

Expr Expr::derivative() const
{
    using K = Kind;
    switch (kind()) {
    case K::Number:
    case K::Parameter: return number(0.0);
    case K::Variable: return number(1.0);
    case K::Add: return lhs().derivative() + rhs().derivative();
    case K::Sub: return lhs().derivative() - rhs().derivative();
    case K::Mul: return lhs().derivative() * rhs() + lhs() * rhs().derivative();
    case K::Div: {
        const Expr f = lhs(), g = rhs();
        if (!g.depends_on_z())
            return f.derivative() / g;
        return (f.derivative() * g - f * g.derivative()) / pow(g, number(2.0));
    }
    case K::Neg: return -lhs().derivative();
    case K::Pow: {
        const Expr f = lhs(), g = rhs();
        if (!g.depends_on_z())
            return g * pow(f, g - number(1.0)) * f.derivative();
        return pow(f, g) * (g.derivative() * log(f) + g * f.derivative() / f);
    }
    case K::Call: {
        const Expr f = lhs();
        const Expr df = f.derivative();
        switch (func()) {
        case Func::Exp: return exp(f) * df;
        case Func::Log: return df / f;
        case Func::Sqrt: return df / (number(2.0) * sqrt(f));
        case Func::Sin: return call(Func::Cos, f) * df;
        case Func::Cos: return -(call(Func::Sin, f)) * df;
        case Func::Sinh: return call(Func::Cosh, f) * df;
        case Func::Cosh: return call(Func::Sinh, f) * df;
        case Func::Erf:
            return number(2.0 / std::sqrt(std::numbers::pi)) * exp(-pow(f, number(2.0))) * df;
        }
        break;
    }
    case K::Integral: return lhs();
    }
    return number(0.0);
}

// ---------------------------------------------------------------------------
// polynomials

namespace {

using Poly = std::vector<cplx>;

void trim(Poly& p)
{
    while (p.size() > 1 && p.back() == cplx(0.0))
        p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b, double sign)
{
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += sign * b[i];
    trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

std::optional<Poly> as_poly(const Expr& e, const ParamMap& params)
{
    if (!e.depends_on_z()) {
        try {
            return Poly{e.eval(0.0, params)};
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    switch (e.kind()) {
    case Expr::Kind::Variable: return Poly{0.0, 1.0};
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        auto a = as_poly(e.lhs(), params), b = as_poly(e.rhs(), params);
        if (!a || !b)
            return std::nullopt;
        return poly_add(*a, *b, e.kind() == Expr::Kind::Add ? 1.0 : -1.0);
    }
    case Expr::Kind::Mul: {
        auto a = as_poly(e.lhs(), params), b = as_poly(e.rhs(), params);
        if (!a || !b)
            return std::nullopt;
        return poly_mul(*a, *b);
    }
    case Expr::Kind::Div: {
        if (e.rhs().depends_on_z())
            return std::nullopt;
        auto a = as_poly(e.lhs(), params), b = as_poly(e.rhs(), params);
        if (!a || !b || (*b)[0] == cplx(0.0))
            return std::nullopt;
        for (auto& c : *a)
            c /= (*b)[0];
        return a;
    }
    case Expr::Kind::Neg: {
        auto a = as_poly(e.lhs(), params);
        if (!a)
            return std::nullopt;
        for (auto& c : *a)
            c = -c;
        return a;
    }
    case Expr::Kind::Pow: {
        if (e.rhs().depends_on_z())
            return std::nullopt;
        auto n = as_poly(e.rhs(), params);
        if (!n || (*n)[0].imag() != 0.0)
            return std::nullopt;
        const double k = (*n)[0].real();
        if (k < 0 || k != std::floor(k) || k > 64)
            return std::nullopt;
        auto base = as_poly(e.lhs(), params);
        if (!base)
            return std::nullopt;
        Poly r{1.0};
        for (int j = 0; j < static_cast<int>(k); ++j)
            r = poly_mul(r, *base);
        return r;
    }
    default: return std::nullopt;
    }
}

}  // namespace

std::optional<std::vector<cplx>> polynomial_coefficients(const Expr& e, const ParamMap& params)
{
    auto p = as_poly(e, params);
    if (p)
        trim(*p);
    return p;
}

Expr polynomial_expr(const std::vector<cplx>& coeffs)
{
    Expr sum = Expr::number(0.0);
    const Expr z = Expr::variable();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == cplx(0.0))
            continue;
        const Expr term = Expr::number(coeffs[k]) * pow(z, Expr::number(static_cast<double>(k)));
        sum = sum + term;
    }
    return sum;
}

}  // namespace solsurf
