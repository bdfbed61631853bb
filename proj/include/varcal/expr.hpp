#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace varcal {

/// Functions understood by the expression language.
enum class Func { Sin, Cos, Tan, Cot, Sqrt, Exp, Ln, Arctan, Arccot };

std::string_view func_name(Func f) noexcept;

/// Reserved variable names.
namespace vars {
inline constexpr std::string_view x = "x";
inline constexpr std::string_view y = "y";
inline constexpr std::string_view yp = "yp";
inline constexpr std::string_view ypp = "ypp";
}  // namespace vars

/// Immutable algebraic expression tree with shared subtrees.
///
/// Subtraction is represented as Sum + Negate and division as
/// Product + Power(., -1). Copies are cheap and thread-safe.
class Expr {
public:
    enum class Kind { Constant, Variable, Sum, Product, Power, Negate, Call };

    /// Constant(0).
    Expr();

    static Expr constant(double value);
    static Expr variable(std::string name);
    /// Requires at least two terms.
    static Expr sum(std::vector<Expr> terms);
    /// Requires at least two factors.
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, Expr exponent);
    static Expr negate(Expr arg);
    static Expr call(Func f, Expr arg);

    Kind kind() const noexcept;
    bool is_constant() const noexcept { return kind() == Kind::Constant; }
    bool is_constant(double v) const noexcept { return is_constant() && value() == v; }

    /// Constant payload; 0 for other kinds.
    double value() const noexcept;
    /// Variable name; empty for other kinds.
    const std::string& name() const noexcept;
    /// Function of a Call node.
    Func func() const noexcept;
    /// Terms of a Sum, factors of a Product, {base, exponent} of a Power,
    /// the single argument of Negate/Call; empty for leaves.
    std::span<const Expr> operands() const noexcept;

    const Expr& base() const { return operands()[0]; }
    const Expr& exponent() const { return operands()[1]; }
    const Expr& arg() const { return operands()[0]; }

    /// Structural equality (constants compare by value).
    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Raw tree builders (no normalization).
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Total order on trees used to sort Sum terms and Product factors.
/// Negative, zero or positive like strcmp.
int compare(const Expr& a, const Expr& b);

using Bindings = std::map<std::string, double, std::less<>>;

/// Parse infix text. Precedence: ^ (right-assoc) > unary minus > * / > + -.
/// `y'` is accepted as an alias for `yp` and `y''` for `ypp`.
/// Throws ParseError on malformed input or unknown function names.
Expr parse(std::string_view text);

/// Infix rendering that parse() accepts; constants use the shortest
/// round-trip decimal form.
std::string to_string(const Expr& e);

/// Bounded simplification: flatten, fold constants, remove identities,
/// collect like terms/factors with numeric coefficients, distribute numeric
/// coefficients over a lone sum and integer powers over products, and
/// sort operands canonically. Idempotent.
Expr normalize(const Expr& e);

/// Partial derivative with every other name held constant. Normalized.
Expr differentiate(const Expr& e, std::string_view var);

/// d/dx along a trajectory: de/dx + yp*de/dy + ypp*de/dyp. Normalized.
/// Throws std::invalid_argument if e contains ypp.
Expr total_x_derivative(const Expr& e);

/// Replace every occurrence of `var` and normalize.
Expr substitute(const Expr& e, std::string_view var, const Expr& replacement);

/// Numeric value. Throws UnboundVariable or DomainError.
double evaluate(const Expr& e, const Bindings& b);

/// Identifiers occurring in normalize(e).
std::set<std::string, std::less<>> free_variables(const Expr& e);

/// True if `var` occurs in e (without normalizing).
bool contains(const Expr& e, std::string_view var);

}  // namespace varcal
