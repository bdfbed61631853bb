#pragma once

// Test-only helpers: random expression generators and independent numeric
// references. Nothing here calls into the library's numeric kernels.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "varcal/expr.hpp"

namespace varcal::testing {

struct GenOptions {
    int max_depth = 5;
    /// Only constants that are exact in binary floating point.
    bool exact_constants = false;
    /// Variable names drawn for leaves.
    std::vector<std::string> names{"x", "y", "yp"};
};

/// Random raw (unnormalized) expression over a safe function set.
class ExprGenerator {
public:
    explicit ExprGenerator(std::uint64_t seed, GenOptions opts = {}) : rng_(seed), opts_(std::move(opts)) {}

    Expr operator()() { return gen(opts_.max_depth); }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    GenOptions opts_;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    Expr leaf() {
        if (pick(3) != 0) return Expr::variable(opts_.names[pick(static_cast<int>(opts_.names.size()))]);
        static const double exact[] = {-2.0, -1.0, 0.5, 1.0, 2.0, 3.0};
        if (opts_.exact_constants || pick(2) == 0) return Expr::constant(exact[pick(6)]);
        return Expr::constant(std::uniform_real_distribution<double>(-3.0, 3.0)(rng_));
    }

    Expr gen(int depth) {
        if (depth <= 0 || pick(4) == 0) return leaf();
        switch (pick(6)) {
            case 0: {
                std::vector<Expr> t{gen(depth - 1), gen(depth - 1)};
                if (pick(3) == 0) t.push_back(gen(depth - 1));
                return Expr::sum(std::move(t));
            }
            case 1: {
                std::vector<Expr> f{gen(depth - 1), gen(depth - 1)};
                if (pick(3) == 0) f.push_back(gen(depth - 1));
                return Expr::product(std::move(f));
            }
            case 2: {
                static const double exps[] = {2.0, 3.0, -1.0, -2.0};
                return Expr::power(gen(depth - 1), Expr::constant(exps[pick(4)]));
            }
            case 3: return Expr::negate(gen(depth - 1));
            case 4: return gen(depth - 1) - gen(depth - 1);
            default: {
                static const Func safe[] = {Func::Sin, Func::Cos, Func::Exp, Func::Arctan, Func::Arccot};
                return Expr::call(safe[pick(5)], gen(depth - 1));
            }
        }
    }
};

inline Bindings random_bindings(std::mt19937_64& rng, double lo = -1.5, double hi = 1.5) {
    std::uniform_real_distribution<double> u(lo, hi);
    return Bindings{{"x", u(rng)}, {"y", u(rng)}, {"yp", u(rng)}, {"ypp", u(rng)}};
}

/// |a - b| <= tol * max(1, |a|, |b|).
inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Composite Simpson with n (even) panels; plain reference rule.
inline double composite_simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Descent time along the arc of (x-3)^2 + (y-6)^2 = 25 from (0,2) to (3,1),
/// parametrized by the polar angle phi and integrated with phi = phi_A + u^2.
inline double circle_arc_time_oracle(double g) {
    const double phi_a = std::atan2(-4.0, -3.0) + 2.0 * std::numbers::pi;  // in (pi, 3pi/2)
    const double phi_b = 1.5 * std::numbers::pi;
    const double span = std::sqrt(phi_b - phi_a);
    auto f = [&](double u) {
        if (u == 0.0) {
            // drop = -4 - 5 sin(phi) ~ -5 cos(phi_a) u^2 near phi_a
            return 2.0 * 5.0 / std::sqrt(-5.0 * std::cos(phi_a));
        }
        const double phi = phi_a + u * u;
        const double drop = -4.0 - 5.0 * std::sin(phi);
        return 2.0 * u * 5.0 / std::sqrt(drop);
    };
    return composite_simpson(f, 0.0, span, 200000) / std::sqrt(2.0 * g);
}

}  // namespace varcal::testing
