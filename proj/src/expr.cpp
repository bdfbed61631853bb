#include "varcal/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace varcal {

struct Expr::Node {
    Kind kind = Kind::Constant;
    double value = 0.0;
    std::string name;
    Func func = Func::Sin;
    std::vector<Expr> ops;
};

std::string_view func_name(Func f) noexcept {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Cot: return "cot";
        case Func::Sqrt: return "sqrt";
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Arctan: return "arctan";
        case Func::Arccot: return "arccot";
    }
    return "?";
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
    if (name.empty()) throw std::invalid_argument("variable name must not be empty");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    if (terms.size() < 2) throw std::invalid_argument("Sum needs at least two terms");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->ops = std::move(terms);
    return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    if (factors.size() < 2) throw std::invalid_argument("Product needs at least two factors");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->ops = std::move(factors);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, Expr exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->ops = {std::move(base), std::move(exponent)};
    return Expr(std::move(n));
}

Expr Expr::negate(Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->ops = {std::move(arg)};
    return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->func = f;
    n->ops = {std::move(arg)};
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept { return node_->name; }
Func Expr::func() const noexcept { return node_->func; }
std::span<const Expr> Expr::operands() const noexcept { return node_->ops; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Expr::Kind::Constant: return a.value() == b.value();
        case Expr::Kind::Variable: return a.name() == b.name();
        case Expr::Kind::Call:
            if (a.func() != b.func()) return false;
            break;
        default: break;
    }
    return std::ranges::equal(a.operands(), b.operands());
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::negate(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
    return Expr::product({a, Expr::power(b, Expr::constant(-1.0))});
}
Expr operator-(const Expr& a) { return Expr::negate(a); }

namespace {

int kind_rank(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Constant: return 0;
        case Expr::Kind::Variable: return 1;
        case Expr::Kind::Call: return 2;
        case Expr::Kind::Sum: return 3;
        case Expr::Kind::Product: return 4;
        case Expr::Kind::Negate: return 5;
        case Expr::Kind::Power: return 6;
    }
    return 7;
}

int compare_values(double a, double b) {
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
    using K = Expr::Kind;
    // Powers order by base first, so x, x^2 and x^-1 end up adjacent.
    if (a.kind() == K::Power || b.kind() == K::Power) {
        static const Expr one = Expr::constant(1.0);
        const Expr& ba = a.kind() == K::Power ? a.base() : a;
        const Expr& ea = a.kind() == K::Power ? a.exponent() : one;
        const Expr& bb = b.kind() == K::Power ? b.base() : b;
        const Expr& eb = b.kind() == K::Power ? b.exponent() : one;
        if (int c = compare(ba, bb)) return c;
        return compare(ea, eb);
    }
    if (a.kind() != b.kind()) return kind_rank(a.kind()) - kind_rank(b.kind());
    switch (a.kind()) {
        case K::Constant: return compare_values(a.value(), b.value());
        case K::Variable: return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
        case K::Call:
            if (a.func() != b.func()) return static_cast<int>(a.func()) - static_cast<int>(b.func());
            break;
        default: break;
    }
    auto oa = a.operands();
    auto ob = b.operands();
    for (std::size_t i = 0; i < oa.size() && i < ob.size(); ++i) {
        if (int c = compare(oa[i], ob[i])) return c;
    }
    return compare_values(static_cast<double>(oa.size()), static_cast<double>(ob.size()));
}

bool contains(const Expr& e, std::string_view var) {
    if (e.kind() == Expr::Kind::Variable) return e.name() == var;
    return std::ranges::any_of(e.operands(), [&](const Expr& op) { return contains(op, var); });
}

namespace {

void collect_names(const Expr& e, std::set<std::string, std::less<>>& out) {
    if (e.kind() == Expr::Kind::Variable) {
        out.insert(e.name());
        return;
    }
    for (const auto& op : e.operands()) collect_names(op, out);
}

Expr replace(const Expr& e, std::string_view var, const Expr& replacement) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Constant: return e;
        case K::Variable: return e.name() == var ? replacement : e;
        default: break;
    }
    if (!contains(e, var)) return e;
    std::vector<Expr> ops;
    ops.reserve(e.operands().size());
    for (const auto& op : e.operands()) ops.push_back(replace(op, var, replacement));
    switch (e.kind()) {
        case K::Sum: return Expr::sum(std::move(ops));
        case K::Product: return Expr::product(std::move(ops));
        case K::Power: return Expr::power(ops[0], ops[1]);
        case K::Negate: return Expr::negate(ops[0]);
        case K::Call: return Expr::call(e.func(), ops[0]);
        default: return e;
    }
}

}  // namespace

std::set<std::string, std::less<>> free_variables(const Expr& e) {
    std::set<std::string, std::less<>> out;
    collect_names(normalize(e), out);
    return out;
}

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement) {
    return normalize(replace(e, var, replacement));
}

}  // namespace varcal
