#include <cmath>

#include "detail.hpp"

namespace varcal {
namespace {

// Binding strength of the rendered text, weakest first.
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

struct Rendered {
    std::string text;
    int prec;
};

Rendered render(const Expr& e);

std::string wrap(const Rendered& r, int need) {
    return r.prec < need ? "(" + r.text + ")" : r.text;
}

bool negative_constant(const Expr& e) { return e.is_constant() && std::signbit(e.value()); }

Rendered render_product(std::span<const Expr> factors) {
    std::string sign;
    std::vector<std::string> numerator;
    std::vector<std::string> denominator;
    std::size_t start = 0;
    if (factors.front().is_constant()) {
        double c = factors.front().value();
        if (std::signbit(c)) {
            sign = "-";
            c = -c;
        }
        if (c != 1.0 || factors.size() == 1) numerator.push_back(detail::format_double(c));
        start = 1;
    }
    for (std::size_t i = start; i < factors.size(); ++i) {
        const Expr& f = factors[i];
        if (f.kind() == Expr::Kind::Power && negative_constant(f.exponent())) {
            const double k = -f.exponent().value();
            if (k == 1.0) {
                denominator.push_back(wrap(render(f.base()), kPower));
            } else {
                denominator.push_back(render(Expr::power(f.base(), Expr::constant(k))).text);
            }
            continue;
        }
        numerator.push_back(wrap(render(f), numerator.empty() && sign.empty() ? kUnary : kPower));
    }
    std::string text = sign;
    if (numerator.empty()) {
        text += "1";
    } else {
        for (std::size_t i = 0; i < numerator.size(); ++i) {
            if (i) text += "*";
            text += numerator[i];
        }
    }
    if (!denominator.empty()) {
        text += "/";
        if (denominator.size() == 1) {
            text += denominator.front();
        } else {
            text += "(";
            for (std::size_t i = 0; i < denominator.size(); ++i) {
                if (i) text += "*";
                text += denominator[i];
            }
            text += ")";
        }
    }
    return {text, sign.empty() ? (denominator.empty() && numerator.size() <= 1 ? kPower : kProduct) : kUnary};
}

Rendered render_sum(std::span<const Expr> terms) {
    std::string text = wrap(render(terms.front()), kProduct);
    for (const auto& t : terms.subspan(1)) {
        if (t.kind() == Expr::Kind::Negate) {
            text += " - " + wrap(render(t.arg()), kProduct);
        } else if (negative_constant(t)) {
            text += " - " + detail::format_double(-t.value());
        } else if (t.kind() == Expr::Kind::Product && negative_constant(t.operands().front())) {
            std::vector<Expr> flipped(t.operands().begin(), t.operands().end());
            flipped.front() = Expr::constant(-flipped.front().value());
            text += " - " + wrap(render_product(flipped), kProduct);
        } else {
            text += " + " + wrap(render(t), kProduct);
        }
    }
    return {text, kSum};
}

Rendered render(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Constant:
            if (std::signbit(e.value())) return {"-" + detail::format_double(-e.value()), kUnary};
            return {detail::format_double(e.value()), kAtom};
        case K::Variable: return {e.name(), kAtom};
        case K::Call: return {std::string(func_name(e.func())) + "(" + render(e.arg()).text + ")", kAtom};
        case K::Negate: return {"-" + wrap(render(e.arg()), kPower), kUnary};
        case K::Power:
            return {wrap(render(e.base()), kAtom) + "^" + wrap(render(e.exponent()), kPower), kPower};
        case K::Product: return render_product(e.operands());
        case K::Sum: return render_sum(e.operands());
    }
    return {"?", kAtom};
}

}  // namespace

std::string to_string(const Expr& e) { return render(e).text; }

}  // namespace varcal
