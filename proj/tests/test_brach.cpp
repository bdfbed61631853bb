#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "varcal/brach.hpp"
#include "varcal/error.hpp"

using namespace varcal;
using namespace varcal::brach;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("solve_constants") {
    auto s = solve_constants({0, 2, 3, 1});
    CHECK(std::abs(s.a - 1.239374053) < 1e-6);
    CHECK(std::abs(s.theta1 - 4.051628024) < 1e-6);
    CHECK(s.x0 == 0.0);
    CHECK(s.y0 == 2.0);

    s = solve_constants({1, 3, 15, 1});
    CHECK(std::abs(s.a - 4.776249228) < 1e-6);
    CHECK(std::abs(s.theta1 - 4.875635855) < 1e-6);

    s = solve_constants({0, 1, 3, 1});
    CHECK(s.theta1 == 2 * kPi);
    CHECK(s.a == 3.0 / kPi);

    CHECK_THROWS_AS(solve_constants({3, 1, 0, 2}), InfeasibleInput);
    CHECK_THROWS_AS(solve_constants({0, 1, 0, 0}), InfeasibleInput);
    CHECK_THROWS_WITH_AS(solve_constants({0, 1, 1, 2}), doctest::Contains("ascending"), InfeasibleInput);
}

TEST_CASE("cycloid_xy") {
    const auto s = solve_constants({0, 2, 3, 1});
    auto [x0, y0] = cycloid_xy(s, 0.0);
    CHECK(x0 == 0.0);
    CHECK(y0 == 2.0);
    auto [xm, ym] = cycloid_xy(s, kPi);
    CHECK(ym == doctest::Approx(2.0 - s.a).epsilon(1e-15));
    CHECK(xm == doctest::Approx(s.a * kPi / 2).epsilon(1e-15));
    auto [x1, y1] = cycloid_xy(s, s.theta1);
    CHECK(std::abs(x1 - 3.0) < 1e-6);
    CHECK(std::abs(y1 - 1.0) < 1e-6);
    CHECK_THROWS_AS(cycloid_xy(s, -0.1), std::out_of_range);
    CHECK_THROWS_AS(cycloid_xy(s, s.theta1 + 1e-9), std::out_of_range);
}

TEST_CASE("sample_cycloid") {
    const auto s = solve_constants({0, 2, 3, 1});
    auto c = sample_cycloid(s, 1);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0].x == 0.0);
    CHECK(c.points[0].y == 2.0);
    CHECK(std::abs(c.points[1].x - 3.0) < 1e-9);
    CHECK(std::abs(c.points[1].y - 1.0) < 1e-9);

    c = sample_cycloid(s, 100);
    REQUIRE(c.points.size() == 101);
    double min_y = 1e300;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        min_y = std::min(min_y, c.points[i].y);
        if (i) CHECK(c.points[i].x > c.points[i - 1].x);
        CHECK(std::isfinite(c.points[i].y));
    }
    // theta1 > pi, so the lowest point y0 - a lies on the arc; a 100-step grid gets within O(h^2).
    CHECK(min_y == doctest::Approx(2.0 - s.a).epsilon(1e-3));
    CHECK(std::abs((2.0 - s.a) - 0.760626) < 1e-6);
    CHECK_THROWS_AS(sample_cycloid(s, 0), std::invalid_argument);
}

TEST_CASE("min_time") {
    CHECK(std::abs(min_time(solve_constants({0, 2, 3, 1}), 9.8) - 1.018832361) < 1e-6);
    CHECK(std::abs(min_time(solve_constants({1, 3, 15, 1}), 9.8) - 2.406837209) < 1e-6);
    CHECK(min_time({0, 0, 2 * 9.8, 1.0}, 9.8) == 1.0);
    const auto s = solve_constants({0, 2, 3, 1});
    CHECK(min_time(s, 2 * 9.8) == doctest::Approx(min_time(s, 9.8) / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(min_time(s, 0.0), std::invalid_argument);
}

TEST_CASE("descent_time along explicit curves") {
    const double line = descent_time(parse("-x/3 + 2"), 0, 3, 2, 9.8);
    CHECK(std::abs(line - 1.428571428) < 1e-6);
    CHECK(std::abs(line - 10.0 / 7.0) < 1e-9);

    const double arc = descent_time(parse("6 - sqrt(16 - x^2 + 6*x)"), 0, 3, 2, 9.8);
    CHECK(std::abs(arc - 1.151743820) < 1e-6);
    CHECK(std::abs(arc - varcal::testing::circle_arc_time_oracle(9.8)) < 1e-9);

    for (double b : {1.0, 2.0, 5.0}) {
        const Expr curve = Expr::constant(1.0) - Expr::variable("x") / Expr::constant(b);
        const double t = descent_time(curve, 0, b, 1, 0.5);
        CHECK(std::abs(t / (2 * std::sqrt(1 + b * b)) - 1.0) < 1e-6);
    }
}

TEST_CASE("descent_time preconditions") {
    CHECK_THROWS_WITH_AS(descent_time(parse("2 + x"), 0, 3, 2), doctest::Contains("not below"), InfeasibleInput);
    CHECK_THROWS_WITH_AS(descent_time(parse("2.1 - x"), 0, 3, 2), doctest::Contains("release height"),
                         InfeasibleInput);
    // Dips and comes back up to y0 inside the interval.
    CHECK_THROWS_AS(descent_time(parse("2 - x*(2 - x)"), 0, 3, 2), InfeasibleInput);
    CHECK_THROWS_AS(descent_time(parse("2 - x + y"), 0, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(descent_time(parse("2 - x"), 3, 0, 2), InfeasibleInput);
}

TEST_CASE("parametric time equals the closed form") {
    for (auto e : {Endpoints{0, 2, 3, 1}, Endpoints{1, 3, 15, 1}, Endpoints{0, 5, 1, 0}, Endpoints{0, 1, 3, 1}}) {
        const auto s = solve_constants(e);
        CHECK(std::abs(descent_time_parametric(s, 9.8) - min_time(s, 9.8)) < 1e-8);
    }
    const auto steep = solve_constants({0, 5, 1, 0});
    REQUIRE(steep.theta1 <= kPi);
    for (int i = 1; i <= 1000; ++i) {
        const double theta = steep.theta1 * i / 1000;
        CHECK(std::abs(parametric_integrand(steep, theta) - std::sqrt(steep.a)) < 1e-10);
    }
}

TEST_CASE("the cycloid beats the line and the circle arc") {
    const auto s = solve_constants({0, 2, 3, 1});
    const double t = min_time(s, 9.8);
    CHECK(t < descent_time(parse("-x/3 + 2"), 0, 3, 2, 9.8));
    CHECK(t < descent_time(parse("6 - sqrt(16 - x^2 + 6*x)"), 0, 3, 2, 9.8));
}

TEST_CASE("property: chord ratio is strictly increasing") {
    double prev = chord_ratio(1e-9);
    for (int i = 1; i < 10000; ++i) {
        const double theta = 1e-9 + (2 * kPi - 2e-9) * i / 9999.0;
        const double h = chord_ratio(theta);
        CHECK(h > prev);
        prev = h;
    }
}

TEST_CASE("property: solved cycloid reaches the endpoint") {
    std::mt19937_64 rng(0xb2ac);
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    std::uniform_real_distribution<double> span(0.05, 10.0);
    const double tol = 1e-12;
    for (int i = 0; i < 200; ++i) {
        const double x0 = pos(rng), y0 = pos(rng);
        const Endpoints e{x0, y0, x0 + span(rng), y0 - span(rng)};
        const auto s = solve_constants(e, tol);
        auto [x, y] = cycloid_xy(s, s.theta1);
        INFO("endpoints ", e.x0, ",", e.y0, " -> ", e.x1, ",", e.y1, " theta1=", s.theta1);
        // x(theta1) - x0 = drop * chord_ratio(theta1), so an error of tol in theta1
        // moves x by drop * chord_ratio'(theta1) * tol.
        const double h = 1e-6;
        const double slope = (chord_ratio(s.theta1 + h) - chord_ratio(s.theta1 - h)) / (2 * h);
        const double gain = std::max({1.0, (e.y0 - e.y1) * std::abs(slope), std::abs(e.x1), std::abs(e.y1)});
        CHECK(std::abs(x - e.x1) <= 10 * tol * gain);
        CHECK(std::abs(y - e.y1) <= 10 * tol * gain);
    }
}

TEST_CASE("sample_curve") {
    const auto c = sample_curve(parse("2 - x/3"), 0, 3, 3, "line");
    REQUIRE(c.points.size() == 4);
    CHECK(c.label == "line");
    CHECK(c.points[3].x == 3.0);
    CHECK(c.points[3].y == doctest::Approx(1.0));
}
