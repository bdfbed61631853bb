#include "varcal/varcalc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "varcal/error.hpp"

namespace varcal {
namespace {

Expr var(std::string_view name) { return Expr::variable(std::string(name)); }

struct CurvePoint {
    double y, yp, ypp;
};

// y, y', y'' of an explicit curve y = c(x), differentiated symbolically once.
class ExplicitCurve {
public:
    explicit ExplicitCurve(const Expr& c)
        : c_(normalize(c)), dc_(differentiate(c_, vars::x)), ddc_(differentiate(dc_, vars::x)) {
        for (auto name : {vars::y, vars::yp, vars::ypp}) {
            if (contains(c_, name)) {
                throw std::invalid_argument("candidate curve must be an expression in x, found " + std::string(name));
            }
        }
    }

    CurvePoint at(double x, Bindings& b) const {
        b.insert_or_assign(std::string(vars::x), x);
        return {evaluate(c_, b), evaluate(dc_, b), evaluate(ddc_, b)};
    }

private:
    Expr c_, dc_, ddc_;
};

void check_grid(double x_lo, double x_hi, int n) {
    if (n < 2) throw std::invalid_argument("sample count must be at least 2");
    if (!(x_hi > x_lo)) throw std::invalid_argument("interval must satisfy x_lo < x_hi");
}

double grid_point(double x_lo, double x_hi, int n, int i) {
    return i == n - 1 ? x_hi : x_lo + (x_hi - x_lo) * i / (n - 1);
}

}  // namespace

Lagrangian::Lagrangian(Expr expr) : expr_(normalize(expr)) {
    if (contains(expr_, vars::ypp)) throw std::invalid_argument("a first-order Lagrangian must not contain ypp");
}

const char* to_string(IntegralKind kind) noexcept {
    return kind == IntegralKind::Momentum ? "momentum" : "energy";
}

std::vector<FirstIntegral> detect_first_integrals(const Lagrangian& L) {
    const auto free = free_variables(L.expr());
    std::vector<FirstIntegral> out;
    const Expr dL_dyp = differentiate(L.expr(), vars::yp);
    if (!free.contains(vars::y)) out.push_back({IntegralKind::Momentum, dL_dyp});
    if (!free.contains(vars::x)) {
        out.push_back({IntegralKind::Energy, normalize(var(vars::yp) * dL_dyp - L.expr())});
    }
    return out;
}

EulerLagrangeResult euler_lagrange(const Lagrangian& L) {
    const Expr dL_dy = differentiate(L.expr(), vars::y);
    const Expr dL_dyp = differentiate(L.expr(), vars::yp);
    EulerLagrangeResult r{normalize(dL_dy - total_x_derivative(dL_dyp)), std::nullopt, detect_first_integrals(L)};
    try {
        r.accel = accel_form(r);
    } catch (const DegenerateLagrangian&) {
    }
    return r;
}

Expr accel_form(const EulerLagrangeResult& r) {
    const Expr q = differentiate(r.residual, vars::ypp);
    if (q.is_constant(0.0)) {
        throw DegenerateLagrangian("Euler-Lagrange equation is not second order (d^2L/dyp^2 == 0): " +
                                   to_string(r.residual) + " = 0");
    }
    const Expr p = substitute(r.residual, vars::ypp, Expr::constant(0.0));
    return normalize(-(p / q));
}

VerificationReport verify_extremal(const Lagrangian& L, const Expr& candidate, double x_lo, double x_hi, int n,
                                   const Bindings& params) {
    check_grid(x_lo, x_hi, n);
    const ExplicitCurve curve(candidate);
    const Expr residual = euler_lagrange(L).residual;
    Bindings b = params;
    VerificationReport report{0.0, n, x_lo};
    for (int i = 0; i < n; ++i) {
        const double x = grid_point(x_lo, x_hi, n, i);
        const auto p = curve.at(x, b);
        b.insert_or_assign(std::string(vars::y), p.y);
        b.insert_or_assign(std::string(vars::yp), p.yp);
        b.insert_or_assign(std::string(vars::ypp), p.ypp);
        const double r = std::abs(evaluate(residual, b));
        if (r > report.max_abs_residual) {
            report.max_abs_residual = r;
            report.worst_x = x;
        }
    }
    return report;
}

ConstancyReport first_integral_constancy(const FirstIntegral& fi, const Expr& candidate, double x_lo, double x_hi,
                                         int n, const Bindings& params) {
    check_grid(x_lo, x_hi, n);
    const ExplicitCurve curve(candidate);
    Bindings b = params;
    std::vector<double> values;
    values.reserve(n);
    for (int i = 0; i < n; ++i) {
        const auto p = curve.at(grid_point(x_lo, x_hi, n, i), b);
        b.insert_or_assign(std::string(vars::y), p.y);
        b.insert_or_assign(std::string(vars::yp), p.yp);
        values.push_back(evaluate(fi.phi, b));
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    ConstancyReport report{mean, 0.0};
    for (double v : values) report.max_deviation = std::max(report.max_deviation, std::abs(v - mean));
    return report;
}

}  // namespace varcal
