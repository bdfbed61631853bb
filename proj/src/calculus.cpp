#include <stdexcept>

#include "varcal/expr.hpp"

namespace varcal {
namespace {

Expr num(double v) { return Expr::constant(v); }

Expr square(const Expr& u) { return Expr::power(u, num(2.0)); }

// d/du of f(u), as an expression in u.
Expr outer_derivative(Func f, const Expr& u) {
    const Expr call = Expr::call(f, u);
    switch (f) {
        case Func::Sin: return Expr::call(Func::Cos, u);
        case Func::Cos: return -Expr::call(Func::Sin, u);
        case Func::Tan: return num(1.0) + square(call);
        case Func::Cot: return -(num(1.0) + square(call));
        case Func::Sqrt: return num(1.0) / (num(2.0) * call);
        case Func::Exp: return call;
        case Func::Ln: return num(1.0) / u;
        case Func::Arctan: return num(1.0) / (num(1.0) + square(u));
        case Func::Arccot: return -(num(1.0) / (num(1.0) + square(u)));
    }
    throw std::logic_error("unhandled function");
}

Expr raw_derivative(const Expr& e, std::string_view var) {
    using K = Expr::Kind;
    if (!contains(e, var)) return num(0.0);
    switch (e.kind()) {
        case K::Constant: return num(0.0);
        case K::Variable: return num(1.0);
        case K::Negate: return -raw_derivative(e.arg(), var);
        case K::Sum: {
            std::vector<Expr> terms;
            for (const auto& t : e.operands()) {
                if (contains(t, var)) terms.push_back(raw_derivative(t, var));
            }
            if (terms.size() == 1) return terms.front();
            return Expr::sum(std::move(terms));
        }
        case K::Product: {
            auto factors = e.operands();
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (!contains(factors[i], var)) continue;
                std::vector<Expr> term{raw_derivative(factors[i], var)};
                for (std::size_t j = 0; j < factors.size(); ++j) {
                    if (j != i) term.push_back(factors[j]);
                }
                terms.push_back(Expr::product(std::move(term)));
            }
            if (terms.size() == 1) return terms.front();
            return Expr::sum(std::move(terms));
        }
        case K::Power: {
            const Expr& b = e.base();
            const Expr& p = e.exponent();
            if (!contains(p, var)) {
                return Expr::product({p, Expr::power(b, p - num(1.0)), raw_derivative(b, var)});
            }
            const Expr log_b = Expr::call(Func::Ln, b);
            if (!contains(b, var)) return Expr::product({e, log_b, raw_derivative(p, var)});
            return e * (raw_derivative(p, var) * log_b + p * raw_derivative(b, var) / b);
        }
        case K::Call: return outer_derivative(e.func(), e.arg()) * raw_derivative(e.arg(), var);
    }
    return num(0.0);
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) {
    return normalize(raw_derivative(normalize(e), var));
}

Expr total_x_derivative(const Expr& e) {
    if (contains(e, vars::ypp)) {
        throw std::invalid_argument("total_x_derivative: input must not contain ypp");
    }
    const Expr n = normalize(e);
    const Expr yp = Expr::variable(std::string(vars::yp));
    const Expr ypp = Expr::variable(std::string(vars::ypp));
    return normalize(Expr::sum({raw_derivative(n, vars::x), yp * raw_derivative(n, vars::y),
                                ypp * raw_derivative(n, vars::yp)}));
}

}  // namespace varcal
