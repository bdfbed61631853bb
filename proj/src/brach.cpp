#include "varcal/brach.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "detail.hpp"
#include "varcal/error.hpp"

namespace varcal::brach {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kThetaInset = 1e-9;
constexpr double kStartTolerance = 1e-9;
constexpr int kClearanceSamples = 256;

// 1 - cos(theta) without cancellation near 0.
double one_minus_cos(double theta) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
}

// theta - sin(theta) without cancellation near 0.
double theta_minus_sin(double theta) {
    if (std::abs(theta) < 1e-2) {
        const double t2 = theta * theta;
        return theta * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
    }
    return theta - std::sin(theta);
}

void check_gravity(double g) {
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("gravity must be positive and finite");
}

Bindings at_x(double x) { return Bindings{{std::string(vars::x), x}}; }

Expr explicit_curve(const Expr& curve) {
    Expr c = normalize(curve);
    for (auto name : {vars::y, vars::yp, vars::ypp}) {
        if (contains(c, name)) throw std::invalid_argument("curve must be an expression in x, found " + std::string(name));
    }
    return c;
}

}  // namespace

double chord_ratio(double theta) { return theta_minus_sin(theta) / one_minus_cos(theta); }

CycloidSolution solve_constants(const Endpoints& e, double tol) {
    if (!std::isfinite(e.x0) || !std::isfinite(e.y0) || !std::isfinite(e.x1) || !std::isfinite(e.y1)) {
        throw InfeasibleInput("endpoints must be finite");
    }
    if (!(e.x1 > e.x0)) throw InfeasibleInput("endpoint B must lie to the right of A (x1 > x0)");
    if (e.y1 > e.y0) throw InfeasibleInput("ascending endpoint unsupported by this parametrization (y1 > y0)");

    if (e.y1 == e.y0) return {e.x0, e.y0, (e.x1 - e.x0) / std::numbers::pi, kTwoPi};

    const double drop = e.y0 - e.y1;
    const double ratio = (e.x1 - e.x0) / drop;
    const double lo = kThetaInset;
    const double hi = kTwoPi - kThetaInset;
    if (!(ratio > chord_ratio(lo) && ratio < chord_ratio(hi))) {
        throw InfeasibleInput("endpoint slope out of range: (x1 - x0)/(y0 - y1) = " + detail::format_double(ratio));
    }
    const double theta1 = bisect([ratio](double t) { return chord_ratio(t) - ratio; }, lo, hi, tol);
    return {e.x0, e.y0, 2.0 * drop / one_minus_cos(theta1), theta1};
}

std::pair<double, double> cycloid_xy(const CycloidSolution& s, double theta) {
    if (!(theta >= 0.0 && theta <= s.theta1)) {
        throw std::out_of_range("theta " + detail::format_double(theta) + " outside [0, theta1]");
    }
    return {s.x0 + 0.5 * s.a * theta_minus_sin(theta), s.y0 - 0.5 * s.a * one_minus_cos(theta)};
}

CurveSamples sample_cycloid(const CycloidSolution& s, int n) {
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    CurveSamples out{{}, "cycloid"};
    out.points.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double theta = i == n ? s.theta1 : s.theta1 * i / n;
        auto [x, y] = cycloid_xy(s, theta);
        out.points.push_back({x, y});
    }
    return out;
}

double min_time(const CycloidSolution& s, double g) {
    check_gravity(g);
    return s.theta1 * std::sqrt(s.a / (2.0 * g));
}

double descent_time(const Expr& curve, double x0, double x1, double y0, double g, const QuadratureSpec& spec) {
    check_gravity(g);
    if (!(x1 > x0)) throw InfeasibleInput("descent interval requires x1 > x0");
    const Expr c = explicit_curve(curve);
    const Expr dc = differentiate(c, vars::x);

    const double start = evaluate(c, at_x(x0));
    if (std::abs(start - y0) > kStartTolerance) {
        throw InfeasibleInput("curve does not start at the release height: curve(" + detail::format_double(x0) +
                              ") = " + detail::format_double(start) + ", expected " + detail::format_double(y0));
    }
    for (int i = 1; i <= kClearanceSamples; ++i) {
        const double x = i == kClearanceSamples ? x1 : x0 + (x1 - x0) * i / kClearanceSamples;
        const double y = evaluate(c, at_x(x));
        if (y >= y0) {
            throw InfeasibleInput("curve is not below the release height at x=" + detail::format_double(x) +
                                  " (y=" + detail::format_double(y) + ", y0=" + detail::format_double(y0) + ")");
        }
    }

    auto integrand = [&](double x) {
        const Bindings b = at_x(x);
        const double drop = y0 - evaluate(c, b);
        if (!(drop > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double slope = evaluate(dc, b);
        return std::sqrt((1.0 + slope * slope) / drop);
    };
    return integrate_singular(integrand, x0, x1, spec) / std::sqrt(2.0 * g);
}

double parametric_integrand(const CycloidSolution& s, double theta) {
    const double dx = 0.5 * s.a * one_minus_cos(theta);
    const double dy = -0.5 * s.a * std::sin(theta);
    const double drop = 0.5 * s.a * one_minus_cos(theta);
    const double slope = dy / dx;
    return std::sqrt(1.0 + slope * slope) * dx / std::sqrt(drop);
}

double descent_time_parametric(const CycloidSolution& s, double g, const QuadratureSpec& spec) {
    check_gravity(g);
    return integrate_singular([&s](double theta) { return parametric_integrand(s, theta); }, 0.0, s.theta1, spec) /
           std::sqrt(2.0 * g);
}

CurveSamples sample_curve(const Expr& curve, double x0, double x1, int n, std::string label) {
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    const Expr c = explicit_curve(curve);
    CurveSamples out{{}, std::move(label)};
    out.points.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = i == n ? x1 : x0 + (x1 - x0) * i / n;
        out.points.push_back({x, evaluate(c, at_x(x))});
    }
    return out;
}

}  // namespace varcal::brach
