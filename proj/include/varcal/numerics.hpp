#pragma once

#include <functional>
#include <vector>

namespace varcal {

/// Right-hand side of y'' = f(x, y, y').
using AccelFn = std::function<double(double x, double y, double yp)>;
using ScalarFn = std::function<double(double)>;

struct OdeSample {
    double x, y, yp;
};

/// Uniform-step solution of a second-order initial value problem. Samples
/// are ordered in the direction of integration.
struct OdeTrajectory {
    std::vector<OdeSample> samples;
    double step = 0.0;

    const OdeSample& back() const { return samples.back(); }
};

struct QuadratureSpec {
    double rel_tol = 1e-10;
    int max_depth = 40;
};

struct ShootResult {
    double slope = 0.0;
    OdeTrajectory trajectory;
};

/// Classical RK4 on (y, y')' = (y', f) with n uniform steps from x0 to x1.
/// A DomainError (or a non-finite value) raised by f aborts with a
/// SolverError naming the failing x.
OdeTrajectory rk4(const AccelFn& f, double x0, double y0, double yp0, double x1, int n);

/// Finds the initial slope s with y(b; s) = B for y(a) = A, y'(a) = s.
///
/// Root finding is a secant/bisection hybrid on F(s) = y(b; s) - B and stops
/// once |F| <= tol. When [s_lo, s_hi] does not bracket a sign change, 64
/// uniform sub-brackets are scanned (trials that fail to integrate are
/// skipped) before giving up with a SolverError.
ShootResult shoot(const AccelFn& f, double a, double A, double b, double B, double s_lo, double s_hi, double tol,
                  int n = 1000);

/// Bisection until the bracket is at most tol wide. Returns an endpoint
/// directly when g vanishes there.
double bisect(const ScalarFn& g, double lo, double hi, double tol);

/// Integral of g over [x0, x1] where g may blow up like (x - x0)^(-1/2).
///
/// If g(x0) is finite, integrates g directly with adaptive Simpson.
/// Otherwise substitutes x = x0 + t^2 and integrates 2t g(x0 + t^2) over
/// [0, sqrt(x1 - x0)]. The value at t = 0 is taken
/// one step inside, at t = 1e-12 * sqrt(x1 - x0); if that is non-finite or
/// disagrees with a linear extrapolation from the interior, the
/// extrapolated value is used.
double integrate_singular(const ScalarFn& g, double x0, double x1, const QuadratureSpec& spec = {});

}  // namespace varcal
