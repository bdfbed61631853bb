#pragma once

#include <string>
#include <utility>
#include <vector>

#include "varcal/expr.hpp"
#include "varcal/numerics.hpp"

namespace varcal::brach {

inline constexpr double kDefaultGravity = 9.8;

/// Start A(x0, y0) and end B(x1, y1); y points up, so descent means y1 <= y0.
struct Endpoints {
    double x0, y0, x1, y1;
};

/// Cycloid through A with generating-circle diameter `a`, reaching B at
/// parameter theta1:
///   x = x0 + a/2 (theta - sin theta),  y = y0 - a/2 (1 - cos theta).
struct CycloidSolution {
    double x0, y0;
    double a;
    double theta1;
};

struct CurvePoint {
    double x, y;
};

struct CurveSamples {
    std::vector<CurvePoint> points;
    std::string label;
};

/// (theta - sin theta) / (1 - cos theta), strictly increasing on (0, 2pi).
double chord_ratio(double theta);

/// Solves for (a, theta1). Throws InfeasibleInput when x1 <= x0 or y1 > y0.
/// Level endpoints (y1 == y0) give theta1 = 2pi and a = (x1 - x0)/pi.
CycloidSolution solve_constants(const Endpoints& e, double tol = 1e-13);

/// Point at parameter theta in [0, theta1]; throws std::out_of_range otherwise.
std::pair<double, double> cycloid_xy(const CycloidSolution& s, double theta);

/// n + 1 points on a uniform theta grid from 0 to theta1.
CurveSamples sample_cycloid(const CycloidSolution& s, int n);

/// theta1 * sqrt(a / (2g)).
double min_time(const CycloidSolution& s, double g = kDefaultGravity);

/// Descent time from rest along y = curve(x), x in [x0, x1], starting at
/// height y0 = curve(x0):  1/sqrt(2g) * integral sqrt((1 + y'^2) / (y0 - y)) dx.
/// Throws InfeasibleInput if curve(x0) != y0 (1e-9) or the curve reaches y0
/// again on (x0, x1] (checked on 256 samples).
double descent_time(const Expr& curve, double x0, double x1, double y0, double g = kDefaultGravity,
                    const QuadratureSpec& spec = {});

/// sqrt(1 + (y'(theta)/x'(theta))^2) x'(theta) / sqrt(y0 - y(theta)) along the cycloid.
double parametric_integrand(const CycloidSolution& s, double theta);

/// Descent time along the cycloid by quadrature of parametric_integrand.
double descent_time_parametric(const CycloidSolution& s, double g = kDefaultGravity, const QuadratureSpec& spec = {});

/// n + 1 points of y = curve(x) on a uniform x grid.
CurveSamples sample_curve(const Expr& curve, double x0, double x1, int n, std::string label);

}  // namespace varcal::brach
