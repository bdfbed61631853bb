#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "detail.hpp"
#include "varcal/error.hpp"

namespace varcal {
namespace detail {

namespace {

// A pole is declared when the denominator of tan/cot is at rounding level.
bool near_zero_at(double denom, double u) {
    return std::abs(denom) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u));
}

Applied finite_or(double v, const char* failure) {
    if (!std::isfinite(v)) return {0.0, failure};
    return {v, nullptr};
}

}  // namespace

Applied apply_func(Func f, double u) noexcept {
    if (!std::isfinite(u)) return {0.0, "non-finite argument"};
    switch (f) {
        case Func::Sin: return {std::sin(u), nullptr};
        case Func::Cos: return {std::cos(u), nullptr};
        case Func::Tan: {
            const double c = std::cos(u);
            if (near_zero_at(c, u)) return {0.0, "tan at a pole"};
            return finite_or(std::sin(u) / c, "tan overflow");
        }
        case Func::Cot: {
            const double s = std::sin(u);
            if (near_zero_at(s, u)) return {0.0, "cot at a multiple of pi"};
            return finite_or(std::cos(u) / s, "cot overflow");
        }
        case Func::Sqrt:
            if (u < 0.0) return {0.0, "sqrt of negative argument"};
            return {std::sqrt(u), nullptr};
        case Func::Exp: return finite_or(std::exp(u), "exp overflow");
        case Func::Ln:
            if (u <= 0.0) return {0.0, "ln of non-positive argument"};
            return {std::log(u), nullptr};
        case Func::Arctan: return {std::atan(u), nullptr};
        case Func::Arccot: return {std::numbers::pi / 2.0 - std::atan(u), nullptr};
    }
    return {0.0, "unknown function"};
}

Applied apply_power(double base, double exponent) noexcept {
    if (!std::isfinite(base) || !std::isfinite(exponent)) return {0.0, "non-finite operand"};
    if (base == 0.0 && exponent < 0.0) return {0.0, "division by zero"};
    if (base < 0.0 && exponent != std::trunc(exponent)) {
        return {0.0, "negative base with non-integer exponent"};
    }
    return finite_or(std::pow(base, exponent), "power overflow");
}

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string format_point(const Bindings& b) {
    std::string out = "{";
    bool first = true;
    for (const auto& [name, value] : b) {
        if (!first) out += ", ";
        first = false;
        out += name + "=" + format_double(value);
    }
    return out + "}";
}

}  // namespace detail

namespace {

struct Evaluator {
    const Bindings& bindings;

    [[noreturn]] void fail(const Expr& at, const char* what) const {
        throw DomainError(to_string(at), detail::format_point(bindings), what);
    }

    double operator()(const Expr& e) const {
        using K = Expr::Kind;
        switch (e.kind()) {
            case K::Constant: return e.value();
            case K::Variable: {
                auto it = bindings.find(e.name());
                if (it == bindings.end()) throw UnboundVariable(e.name());
                return it->second;
            }
            case K::Sum: {
                double acc = 0.0;
                for (const auto& t : e.operands()) acc += (*this)(t);
                if (!std::isfinite(acc)) fail(e, "non-finite sum");
                return acc;
            }
            case K::Product: {
                double acc = 1.0;
                for (const auto& f : e.operands()) acc *= (*this)(f);
                if (!std::isfinite(acc)) fail(e, "non-finite product");
                return acc;
            }
            case K::Power: {
                auto r = detail::apply_power((*this)(e.base()), (*this)(e.exponent()));
                if (!r.ok()) fail(e, r.failure);
                return r.value;
            }
            case K::Negate: return -(*this)(e.arg());
            case K::Call: {
                auto r = detail::apply_func(e.func(), (*this)(e.arg()));
                if (!r.ok()) fail(e, r.failure);
                return r.value;
            }
        }
        return 0.0;
    }
};

}  // namespace

double evaluate(const Expr& e, const Bindings& b) { return Evaluator{b}(e); }

}  // namespace varcal
