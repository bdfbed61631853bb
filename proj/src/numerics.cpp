#include "varcal/numerics.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "detail.hpp"
#include "varcal/error.hpp"

namespace varcal {
namespace {

constexpr int kShootIterations = 200;
constexpr int kScanBrackets = 64;
constexpr int kInitialPanels = 16;
constexpr double kEndpointInset = 1e-12;
constexpr double kExtrapolationStep = 1e-4;

double checked_accel(const AccelFn& f, double x, double y, double yp) {
    double v;
    try {
        v = f(x, y, yp);
    } catch (const DomainError& e) {
        throw SolverError("integration failed at x=" + detail::format_double(x) + ": " + e.what());
    }
    if (!std::isfinite(v)) {
        throw SolverError("integration failed at x=" + detail::format_double(x) + ": non-finite acceleration");
    }
    return v;
}

}  // namespace

OdeTrajectory rk4(const AccelFn& f, double x0, double y0, double yp0, double x1, int n) {
    if (n < 1) throw std::invalid_argument("rk4: step count must be at least 1");
    if (x1 == x0) throw std::invalid_argument("rk4: x1 must differ from x0");

    OdeTrajectory traj;
    traj.step = (x1 - x0) / n;
    traj.samples.reserve(static_cast<std::size_t>(n) + 1);
    const double h = traj.step;
    double y = y0;
    double v = yp0;
    traj.samples.push_back({x0, y, v});
    for (int i = 0; i < n; ++i) {
        const double x = x0 + i * h;
        const double k1y = v;
        const double k1v = checked_accel(f, x, y, v);
        const double k2y = v + 0.5 * h * k1v;
        const double k2v = checked_accel(f, x + 0.5 * h, y + 0.5 * h * k1y, k2y);
        const double k3y = v + 0.5 * h * k2v;
        const double k3v = checked_accel(f, x + 0.5 * h, y + 0.5 * h * k2y, k3y);
        const double k4y = v + h * k3v;
        const double k4v = checked_accel(f, x + h, y + h * k3y, k4y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        traj.samples.push_back({i + 1 == n ? x1 : x0 + (i + 1) * h, y, v});
    }
    return traj;
}

ShootResult shoot(const AccelFn& f, double a, double A, double b, double B, double s_lo, double s_hi, double tol,
                  int n) {
    if (!(tol > 0.0)) throw std::invalid_argument("shoot: tolerance must be positive");
    if (s_lo > s_hi) std::swap(s_lo, s_hi);

    std::optional<OdeTrajectory> last;
    auto miss = [&](double s) {
        last = rk4(f, a, A, s, b, n);
        return last->back().y - B;
    };
    auto try_miss = [&](double s) -> std::optional<double> {
        try {
            return miss(s);
        } catch (const SolverError&) {
            return std::nullopt;
        }
    };
    auto done = [&](double s) { return ShootResult{s, rk4(f, a, A, s, b, n)}; };

    std::optional<double> f_lo = try_miss(s_lo);
    std::optional<double> f_hi = try_miss(s_hi);
    if (f_lo && std::abs(*f_lo) <= tol) return done(s_lo);
    if (f_hi && std::abs(*f_hi) <= tol) return done(s_hi);

    double lo = s_lo, hi = s_hi;
    if (!(f_lo && f_hi && std::signbit(*f_lo) != std::signbit(*f_hi))) {
        // Scan uniform sub-brackets for the first sign change.
        int failed = 0;
        double seen_min = std::numeric_limits<double>::infinity();
        double seen_max = -seen_min;
        std::optional<double> prev;
        double prev_s = s_lo;
        bool found = false;
        for (int i = 0; i <= kScanBrackets && !found; ++i) {
            const double s = i == kScanBrackets ? s_hi : s_lo + (s_hi - s_lo) * i / kScanBrackets;
            const auto fs = try_miss(s);
            if (!fs) {
                ++failed;
                prev.reset();
                continue;
            }
            if (std::abs(*fs) <= tol) return done(s);
            seen_min = std::min(seen_min, *fs);
            seen_max = std::max(seen_max, *fs);
            if (prev && std::signbit(*prev) != std::signbit(*fs)) {
                lo = prev_s;
                hi = s;
                f_lo = prev;
                f_hi = fs;
                found = true;
            }
            prev = fs;
            prev_s = s;
        }
        if (!found) {
            std::ostringstream msg;
            msg << "shooting: y(b) - B does not change sign for slopes in [" << detail::format_double(s_lo) << ", "
                << detail::format_double(s_hi) << "]; scanned " << kScanBrackets << " sub-brackets, " << failed
                << " trial(s) failed to integrate";
            if (seen_min <= seen_max) {
                msg << ", miss ranged over [" << detail::format_double(seen_min) << ", "
                    << detail::format_double(seen_max) << "]";
            }
            throw SolverError(msg.str());
        }
    }

    double flo = *f_lo, fhi = *f_hi;
    double width_before = hi - lo;
    int secant_steps = 0;
    for (int it = 0; it < kShootIterations; ++it) {
        double s = hi - fhi * (hi - lo) / (fhi - flo);
        const bool force_bisect = secant_steps >= 2 && (hi - lo) > 0.5 * width_before;
        if (force_bisect || !(s > lo && s < hi)) {
            s = 0.5 * (lo + hi);
            secant_steps = 0;
            width_before = hi - lo;
        } else {
            ++secant_steps;
        }
        const double fs = miss(s);
        if (std::abs(fs) <= tol) return ShootResult{s, std::move(*last)};
        if (std::signbit(fs) == std::signbit(flo)) {
            lo = s;
            flo = fs;
        } else {
            hi = s;
            fhi = fs;
        }
        if (secant_steps == 0) width_before = hi - lo;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)})) {
            throw SolverError("shooting: bracket collapsed at slope " + detail::format_double(s) +
                              " with miss " + detail::format_double(fs) + " above tolerance");
        }
    }
    throw SolverError("shooting: iteration cap (" + std::to_string(kShootIterations) + ") exceeded");
}

double bisect(const ScalarFn& g, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("bisect: tolerance must be positive");
    if (lo > hi) std::swap(lo, hi);
    auto eval = [&](double t) {
        const double v = g(t);
        if (!std::isfinite(v)) throw SolverError("bisect: non-finite value at " + detail::format_double(t));
        return v;
    };
    double glo = eval(lo);
    const double ghi = eval(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (std::signbit(glo) == std::signbit(ghi)) {
        throw SolverError("bisect: no sign change on [" + detail::format_double(lo) + ", " +
                          detail::format_double(hi) + "]");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = eval(mid);
        if (gm == 0.0) return mid;
        if (std::signbit(gm) == std::signbit(glo)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

class AdaptiveSimpson {
public:
    AdaptiveSimpson(std::function<double(double)> f, int max_depth) : f_(std::move(f)), max_depth_(max_depth) {}

    double integrate(double a, double b, double eps) {
        const double fa = f_(a), fb = f_(b), fm = f_(0.5 * (a + b));
        return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), eps, 0);
    }

private:
    std::function<double(double)> f_;
    int max_depth_;

    static double simpson(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
        const double m = 0.5 * (a + b);
        const double flm = f_(0.5 * (a + m));
        const double frm = f_(0.5 * (m + b));
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
        if (depth >= max_depth_) {
            throw SolverError("quadrature: depth limit " + std::to_string(max_depth_) + " reached near x-offset t=" +
                              detail::format_double(m) + " without meeting tolerance");
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
    }
};

// Adaptive Simpson over [lo, hi] with tolerance relative to a coarse estimate of the integral of |f|.
double adaptive_integral(const ScalarFn& f, double lo, double hi, const QuadratureSpec& spec) {
    constexpr int kScalePanels = 64;
    double scale = 0.0;
    for (int i = 0; i < kScalePanels; ++i) {
        const double a = lo + (hi - lo) * i / kScalePanels;
        const double b = lo + (hi - lo) * (i + 1) / kScalePanels;
        scale += (b - a) / 6.0 * (std::abs(f(a)) + 4.0 * std::abs(f(0.5 * (a + b))) + std::abs(f(b)));
    }
    const double eps = spec.rel_tol * std::max(scale, std::numeric_limits<double>::min());

    AdaptiveSimpson simpson(f, spec.max_depth);
    double total = 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        const double a = lo + (hi - lo) * i / kInitialPanels;
        const double b = i + 1 == kInitialPanels ? hi : lo + (hi - lo) * (i + 1) / kInitialPanels;
        total += simpson.integrate(a, b, eps / kInitialPanels);
    }
    return total;
}

}  // namespace

double integrate_singular(const ScalarFn& g, double x0, double x1, const QuadratureSpec& spec) {
    if (!(x1 > x0)) throw std::invalid_argument("integrate_singular: requires x1 > x0");
    if (!(spec.rel_tol > 0.0)) throw std::invalid_argument("integrate_singular: rel_tol must be positive");

    auto checked = [&](double x) {
        double v;
        try {
            v = g(x);
        } catch (const Error& e) {
            throw SolverError("quadrature: integrand failed at x=" + detail::format_double(x) + ": " + e.what());
        }
        if (!std::isfinite(v)) {
            throw SolverError("quadrature: integrand is not finite at x=" + detail::format_double(x));
        }
        return v;
    };

    double start;
    try {
        start = g(x0);
    } catch (const Error&) {
        start = std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isfinite(start)) return adaptive_integral(checked, x0, x1, spec);

    const double range = std::sqrt(x1 - x0);
    auto quiet = [&](double t) {
        try {
            return 2.0 * t * g(x0 + t * t);
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    const double direct = quiet(kEndpointInset * range);
    const double delta = kExtrapolationStep * range;
    const double extrapolated = 2.0 * quiet(delta) - quiet(2.0 * delta);
    double at_zero;
    if (std::isfinite(direct) &&
        (!std::isfinite(extrapolated) || std::abs(direct - extrapolated) <= 1e-6 * std::max(1.0, std::abs(extrapolated)))) {
        at_zero = direct;
    } else if (std::isfinite(extrapolated)) {
        at_zero = extrapolated;
    } else {
        throw SolverError("quadrature: integrand is not finite next to x=" + detail::format_double(x0));
    }

    auto transformed = [&](double t) { return t == 0.0 ? at_zero : 2.0 * t * checked(x0 + t * t); };
    return adaptive_integral(transformed, 0.0, range, spec);
}

}  // namespace varcal
