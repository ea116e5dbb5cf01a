#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "solsurf/mcore.hpp"

namespace solsurf {

using ParamMap = std::map<std::string, cplx>;

enum class Func { Exp, Log, Sqrt, Sin, Cos, Sinh, Cosh, Erf };

std::string_view to_string(Func f);

struct ParseOptions {
    /// When set, identifiers outside this set (and not z/i/pi/e) are rejected
    /// with UnknownIdentifier. When empty, every free identifier is a parameter.
    std::optional<std::set<std::string>> parameters;
};

struct EvalOptions {
    double blowup = 1e12;
    /// Tolerance handed to erf and to integral(...) quadrature.
    double special_tol = 1e-15;
};

/// Immutable expression tree for a meromorphic function of the single
/// complex variable z.
///
/// Grammar, lowest to highest precedence:
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?          right-associative
///     primary := number | identifier | identifier '(' args ')' | '(' expr ')'
///
/// Identifiers: z (the variable), i, pi, e (constants), function names
/// exp log sqrt sin cos sinh cosh erf, the two-argument form integral(f, a)
/// meaning the path integral of f from the constant a to z along the straight
/// segment, and anything else is a named parameter.
///
/// All constructors fold constant subtrees, so parsing and printing commute:
/// parse(to_string(e)) is structurally equal to e.
class Expr {
public:
    enum class Kind { Number, Variable, Parameter, Add, Sub, Mul, Div, Pow, Neg, Call, Integral };

    Expr();

    static Expr parse(std::string_view text, const ParseOptions& options = {});

    static Expr number(cplx v);
    static Expr variable();
    static Expr parameter(std::string name);
    static Expr call(Func f, const Expr& arg);
    /// integral of `integrand` from the constant `base` to z.
    static Expr integral(const Expr& integrand, const Expr& base);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& base, const Expr& exponent);

    Kind kind() const;
    cplx value() const;              ///< Number only
    const std::string& name() const; ///< Parameter only
    Func func() const;               ///< Call only
    Expr lhs() const;                ///< binary ops, Neg/Call operand, Integral integrand
    Expr rhs() const;                ///< binary ops, Integral base

    bool is_number() const { return kind() == Kind::Number; }
    bool is_number(cplx v) const { return is_number() && value() == v; }
    bool depends_on_z() const;
    std::set<std::string> parameter_names() const;

    std::string to_string() const;
    cplx eval(cplx z, const ParamMap& params = {}, const EvalOptions& options = {}) const;
    Expr derivative() const;

    bool structurally_equal(const Expr& other) const;

    struct Node;

private:
    friend struct ExprAccess;
    explicit Expr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);
Expr erf(const Expr& a);

/// Principal complex power; exact repeated multiplication for integer exponents.
cplx complex_pow(cplx base, cplx exponent);

/// Coefficients c0, c1, ... when e is a polynomial in z (parameters bound
/// from `params`); nullopt otherwise. Trailing zero coefficients are trimmed.
std::optional<std::vector<cplx>> polynomial_coefficients(const Expr& e, const ParamMap& params = {});

/// sum c_k z^k as an expression tree.
Expr polynomial_expr(const std::vector<cplx>& coeffs);

}  // namespace solsurf
