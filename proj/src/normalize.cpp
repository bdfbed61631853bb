#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "detail.hpp"

namespace varcal {
namespace {

Expr make_sum(std::vector<Expr> terms);
Expr make_product(std::vector<Expr> factors);
Expr make_power(const Expr& base, const Expr& exponent);
std::pair<double, Expr> split_coefficient(const Expr& term);
Expr scale(double coef, const Expr& rest);

// Writes a normalized sum as k * s with the leading term of s having coefficient 1.
std::pair<double, Expr> extract_content(const Expr& sum) {
    const double k = split_coefficient(sum.operands().front()).first;
    if (k == 1.0) return {1.0, sum};
    std::vector<Expr> terms;
    for (const auto& t : sum.operands()) {
        if (t.is_constant()) {
            terms.push_back(Expr::constant(t.value() / k));
        } else {
            auto [c, rest] = split_coefficient(t);
            terms.push_back(scale(c / k, rest));
        }
    }
    return {k, make_sum(std::move(terms))};
}

bool is_integer_constant(const Expr& e) {
    return e.is_constant() && std::isfinite(e.value()) && e.value() == std::trunc(e.value());
}

// Folding happens on a sorted copy so the result does not depend on operand order.
double sorted_fold(std::vector<double> values, double init, std::function<double(double, double)> op) {
    std::ranges::sort(values);
    return std::accumulate(values.begin(), values.end(), init, op);
}

Expr make_call(Func f, const Expr& arg) {
    if (arg.is_constant()) {
        auto r = detail::apply_func(f, arg.value());
        if (r.ok()) return Expr::constant(r.value);
    }
    return Expr::call(f, arg);
}

Expr make_power(const Expr& base, const Expr& exponent) {
    if (exponent.is_constant(0.0)) return Expr::constant(1.0);
    if (exponent.is_constant(1.0)) return base;
    if (base.is_constant(1.0)) return Expr::constant(1.0);
    if (base.is_constant() && exponent.is_constant()) {
        auto r = detail::apply_power(base.value(), exponent.value());
        if (r.ok()) return Expr::constant(r.value);
        return Expr::power(base, exponent);
    }
    if (is_integer_constant(exponent)) {
        if (base.kind() == Expr::Kind::Power) {
            return make_power(base.base(), make_product({base.exponent(), exponent}));
        }
        if (base.kind() == Expr::Kind::Product) {
            std::vector<Expr> factors;
            for (const auto& f : base.operands()) factors.push_back(make_power(f, exponent));
            return make_product(std::move(factors));
        }
        if (base.kind() == Expr::Kind::Sum) {
            auto [k, monic] = extract_content(base);
            auto r = detail::apply_power(k, exponent.value());
            if (k != 1.0 && r.ok()) return make_product({Expr::constant(r.value), Expr::power(monic, exponent)});
        }
    }
    return Expr::power(base, exponent);
}

Expr make_product(std::vector<Expr> input) {
    std::vector<Expr> flat;
    for (auto& f : input) {
        if (f.kind() == Expr::Kind::Product) {
            flat.insert(flat.end(), f.operands().begin(), f.operands().end());
        } else {
            flat.push_back(std::move(f));
        }
    }

    std::vector<double> constants;
    struct Group {
        Expr base;
        std::vector<Expr> exponents;
    };
    std::vector<Group> groups;
    for (const auto& f : flat) {
        if (f.is_constant()) {
            constants.push_back(f.value());
            continue;
        }
        const bool pow = f.kind() == Expr::Kind::Power;
        const Expr& base = pow ? f.base() : f;
        Expr exponent = pow ? f.exponent() : Expr::constant(1.0);
        auto it = std::ranges::find_if(groups, [&](const Group& g) { return g.base == base; });
        if (it == groups.end()) {
            groups.push_back({base, {std::move(exponent)}});
        } else {
            it->exponents.push_back(std::move(exponent));
        }
    }

    std::vector<Expr> others;
    bool reflatten = false;
    for (auto& g : groups) {
        Expr exponent = g.exponents.size() == 1 ? g.exponents.front() : make_sum(std::move(g.exponents));
        Expr combined = make_power(g.base, exponent);
        if (combined.is_constant()) {
            constants.push_back(combined.value());
        } else {
            reflatten = reflatten || combined.kind() == Expr::Kind::Product;
            others.push_back(std::move(combined));
        }
    }
    if (reflatten) {
        for (double c : constants) others.push_back(Expr::constant(c));
        return make_product(std::move(others));
    }

    // A sum sharing the product with other factors keeps its numeric content
    // in the product coefficient, so -(a + b)*c and (-a - b)*c agree.
    if (others.size() >= 2) {
        bool extracted = false;
        for (auto& f : others) {
            if (f.kind() != Expr::Kind::Sum) continue;
            auto [k, monic] = extract_content(f);
            if (k == 1.0) continue;
            constants.push_back(k);
            f = std::move(monic);
            extracted = true;
        }
        if (extracted) {
            for (double c : constants) others.push_back(Expr::constant(c));
            return make_product(std::move(others));
        }
    }

    const double coef = sorted_fold(std::move(constants), 1.0, std::multiplies<>{});
    if (coef == 0.0) return Expr::constant(0.0);
    if (others.empty()) return Expr::constant(coef);
    if (others.size() == 1 && others.front().kind() == Expr::Kind::Sum) {
        if (coef == 1.0) return others.front();
        std::vector<Expr> terms;
        for (const auto& t : others.front().operands()) {
            terms.push_back(make_product({Expr::constant(coef), t}));
        }
        return make_sum(std::move(terms));
    }
    std::ranges::sort(others, [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    if (coef == 1.0) {
        if (others.size() == 1) return others.front();
        return Expr::product(std::move(others));
    }
    others.insert(others.begin(), Expr::constant(coef));
    return Expr::product(std::move(others));
}

// Splits a normalized term into numeric coefficient and the remaining factors.
std::pair<double, Expr> split_coefficient(const Expr& term) {
    if (term.kind() == Expr::Kind::Product && term.operands().front().is_constant()) {
        auto ops = term.operands();
        const double c = ops.front().value();
        if (ops.size() == 2) return {c, ops[1]};
        return {c, Expr::product({ops.begin() + 1, ops.end()})};
    }
    return {1.0, term};
}

Expr scale(double coef, const Expr& rest) {
    if (coef == 1.0) return rest;
    std::vector<Expr> factors{Expr::constant(coef)};
    if (rest.kind() == Expr::Kind::Product) {
        factors.insert(factors.end(), rest.operands().begin(), rest.operands().end());
    } else {
        factors.push_back(rest);
    }
    return Expr::product(std::move(factors));
}

Expr make_sum(std::vector<Expr> input) {
    std::vector<Expr> flat;
    for (auto& t : input) {
        if (t.kind() == Expr::Kind::Sum) {
            flat.insert(flat.end(), t.operands().begin(), t.operands().end());
        } else {
            flat.push_back(std::move(t));
        }
    }

    std::vector<double> constants;
    struct Group {
        Expr rest;
        std::vector<double> coefs;
    };
    std::vector<Group> groups;
    for (const auto& t : flat) {
        if (t.is_constant()) {
            constants.push_back(t.value());
            continue;
        }
        auto [c, rest] = split_coefficient(t);
        auto it = std::ranges::find_if(groups, [&](const Group& g) { return g.rest == rest; });
        if (it == groups.end()) {
            groups.push_back({std::move(rest), {c}});
        } else {
            it->coefs.push_back(c);
        }
    }

    std::ranges::sort(groups, [](const Group& a, const Group& b) { return compare(a.rest, b.rest) < 0; });
    std::vector<Expr> terms;
    for (auto& g : groups) {
        const double c = sorted_fold(std::move(g.coefs), 0.0, std::plus<>{});
        if (c != 0.0) terms.push_back(scale(c, g.rest));
    }
    const double k = sorted_fold(std::move(constants), 0.0, std::plus<>{});
    if (k != 0.0 || terms.empty()) terms.push_back(Expr::constant(k));
    if (terms.size() == 1) return terms.front();
    return Expr::sum(std::move(terms));
}

}  // namespace

Expr normalize(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Constant:
        case K::Variable: return e;
        case K::Negate: return make_product({Expr::constant(-1.0), normalize(e.arg())});
        case K::Call: return make_call(e.func(), normalize(e.arg()));
        case K::Power: return make_power(normalize(e.base()), normalize(e.exponent()));
        case K::Sum:
        case K::Product: {
            std::vector<Expr> ops;
            ops.reserve(e.operands().size());
            for (const auto& op : e.operands()) ops.push_back(normalize(op));
            return e.kind() == K::Sum ? make_sum(std::move(ops)) : make_product(std::move(ops));
        }
    }
    return e;
}

}  // namespace varcal
