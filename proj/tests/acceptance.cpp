// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "varcal/brach.hpp"
#include "varcal/error.hpp"
#include "varcal/numerics.hpp"
#include "varcal/varcalc.hpp"

#ifndef VARCAL_BIN
#error "VARCAL_BIN must name the varcal executable"
#endif

using namespace varcal;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void within(Check& c, const std::string& name, double got, double want, double tol) {
    c.expect(std::abs(got - want) <= tol, name + " = " + num(got) + ", want " + num(want) + " +- " + num(tol));
}

Expr n(const char* text) { return normalize(parse(text)); }

AccelFn accel_fn(const Lagrangian& L) {
    const Expr a = accel_form(euler_lagrange(L));
    return [a](double x, double y, double yp) { return evaluate(a, {{"x", x}, {"y", y}, {"yp", yp}}); };
}

Check el_derivation() {
    Check c;
    const auto r1 = euler_lagrange(Lagrangian(parse("12*x*y - yp^2")));
    const auto r2 = euler_lagrange(Lagrangian(parse("yp*(1 + x^2*yp)")));
    c.expect(normalize(r1.residual) == n("12*x + 2*ypp"), "first residual is " + to_string(r1.residual));
    c.expect(normalize(r2.residual) == n("-4*x*yp - 2*x^2*ypp"), "second residual is " + to_string(r2.residual));
    return c;
}

Check extremal_verification() {
    Check c;
    const auto v1 = verify_extremal(Lagrangian(parse("12*x*y - yp^2")), parse("-x^3"), -1.0, 0.0, 201);
    const auto v2 = verify_extremal(Lagrangian(parse("yp*(1 + x^2*yp)")), parse("7 - 4/x"), 1.0, 2.0, 201);
    c.expect(v1.max_abs_residual < 1e-9, "-x^3 residual " + num(v1.max_abs_residual));
    c.expect(v2.max_abs_residual < 1e-9, "7 - 4/x residual " + num(v2.max_abs_residual));
    return c;
}

Check momentum_constant() {
    Check c;
    const auto fis = detect_first_integrals(Lagrangian(parse("yp*(1 + x^2*yp)")));
    c.expect(fis.size() == 1 && fis[0].kind == IntegralKind::Momentum, "expected a single momentum integral");
    if (!c.ok) return c;
    const auto rep = first_integral_constancy(fis[0], parse("7 - 4/x"), 1.0, 2.0, 201);
    within(c, "K", rep.value, 9.0, 1e-9);
    c.expect(rep.max_deviation <= 1e-9, "deviation " + num(rep.max_deviation));
    return c;
}

Check shooting() {
    Check c;
    const auto s1 = shoot(accel_fn(Lagrangian(parse("12*x*y - yp^2"))), -1.0, 1.0, 0.0, 0.0, -10.0, 10.0, 1e-10);
    const auto s2 = shoot(accel_fn(Lagrangian(parse("yp*(1 + x^2*yp)"))), 1.0, 3.0, 2.0, 5.0, -10.0, 10.0, 1e-10);
    within(c, "slope 1", s1.slope, -3.0, 1e-6);
    within(c, "slope 2", s2.slope, 4.0, 1e-6);
    within(c, "y(0)", s1.trajectory.back().y, 0.0, 1e-8);
    within(c, "y(2)", s2.trajectory.back().y, 5.0, 1e-8);
    return c;
}

Check cycloid_constants() {
    Check c;
    const auto s1 = brach::solve_constants({0, 2, 3, 1});
    const auto s2 = brach::solve_constants({1, 3, 15, 1});
    within(c, "a", s1.a, 1.239374053, 1e-6);
    within(c, "theta1", s1.theta1, 4.051628024, 1e-6);
    within(c, "a", s2.a, 4.776249228, 1e-6);
    within(c, "theta1", s2.theta1, 4.875635855, 1e-6);
    return c;
}

Check minimal_times() {
    Check c;
    within(c, "T", brach::min_time(brach::solve_constants({0, 2, 3, 1}), 9.8), 1.018832361, 1e-6);
    within(c, "T", brach::min_time(brach::solve_constants({1, 3, 15, 1}), 9.8), 2.406837209, 1e-6);
    return c;
}

Check curve_times() {
    Check c;
    const double line = brach::descent_time(parse("-x/3 + 2"), 0, 3, 2, 9.8);
    const double arc = brach::descent_time(parse("6 - sqrt(16 - x^2 + 6*x)"), 0, 3, 2, 9.8);
    const double cycloid = brach::min_time(brach::solve_constants({0, 2, 3, 1}), 9.8);
    within(c, "line", line, 1.428571428, 1e-6);
    within(c, "line vs 10/7", line, 10.0 / 7.0, 1e-9);
    within(c, "arc", arc, 1.151743820, 1e-6);
    c.expect(line > cycloid && arc > cycloid, "cycloid is not the fastest");
    return c;
}

Check sloped_line_identity() {
    Check c;
    for (double b : {1.0, 2.0, 5.0}) {
        const std::string curve = "1 - x/" + num(b);
        const double t = brach::descent_time(parse(curve), 0, b, 1, 0.5);
        const double want = 2.0 * std::sqrt(1.0 + b * b);
        c.expect(std::abs(t - want) <= 1e-6 * want, "b=" + num(b) + ": " + num(t) + " vs " + num(want));
    }
    return c;
}

Check property_suites() {
    using varcal::testing::close_rel;
    Check c;

    // Symbolic derivative against central differences.
    varcal::testing::ExprGenerator gen(0xacce97);
    const char* names[] = {"x", "y", "yp"};
    int checked = 0, failed = 0;
    for (int i = 0; checked < 200 && i < 5000; ++i) {
        const Expr e = gen();
        const char* var = names[i % 3];
        const Expr d = differentiate(e, var);
        for (int attempt = 0; attempt < 20; ++attempt) {
            Bindings b = varcal::testing::random_bindings(gen.rng());
            const double h = 1e-6;
            double exact, fd, f0;
            try {
                f0 = evaluate(e, b);
                exact = evaluate(d, b);
                Bindings plus = b, minus = b;
                plus[var] += h;
                minus[var] -= h;
                fd = (evaluate(e, plus) - evaluate(e, minus)) / (2 * h);
            } catch (const Error&) {
                continue;
            }
            if (std::abs(f0) > 1e3 || std::abs(exact) > 1e4) continue;
            if (!close_rel(exact, fd, 1e-5)) ++failed;
            ++checked;
            break;
        }
    }
    c.expect(checked == 200 && failed == 0,
             "derivative: " + std::to_string(failed) + " of " + std::to_string(checked) + " disagree");

    // First-integral identities.
    const Expr yp = Expr::variable("yp");
    std::mt19937_64 rng(0x1de7);
    int identity_failures = 0;
    int momentum_points = 0, energy_points = 0;
    for (const char* text : {"yp*(1 + x^2*yp)", "exp(x)*yp^2 + 3*x*yp", "sqrt((1 + yp^2)/(y0 - y))",
                             "y*sqrt(1 + yp^2)"}) {
        const auto r = euler_lagrange(Lagrangian(parse(text)));
        for (const auto& fi : r.first_integrals) {
            const Expr dphi = total_x_derivative(fi.phi);
            const Expr factor = fi.kind == IntegralKind::Momentum ? Expr::constant(1.0) : yp;
            for (int i = 0; i < 100; ++i) {
                Bindings b = varcal::testing::random_bindings(rng, -1.0, 1.0);
                b["x"] += 2.0;
                b["y0"] = 3.0;
                if (!close_rel(evaluate(dphi, b), -evaluate(factor * r.residual, b), 1e-10)) ++identity_failures;
                ++(fi.kind == IntegralKind::Momentum ? momentum_points : energy_points);
            }
        }
    }
    c.expect(identity_failures == 0, "first-integral identity failed at " + std::to_string(identity_failures) +
                                         " points");
    c.expect(momentum_points >= 100 && energy_points >= 100, "identities not exercised for both integral kinds");

    // Parametric cycloid time against the closed form.
    for (const brach::Endpoints e : {brach::Endpoints{0, 2, 3, 1}, brach::Endpoints{1, 3, 15, 1}}) {
        const auto s = brach::solve_constants(e);
        within(c, "parametric time", brach::descent_time_parametric(s), brach::min_time(s), 1e-8);
    }

    // RK4 order on y'' = -2 y'/x, exact solution 7 - 4/x.
    const AccelFn f = [](double x, double, double yp) { return -2.0 * yp / x; };
    auto err = [&](int steps) { return std::abs(rk4(f, 1.0, 3.0, 4.0, 2.0, steps).back().y - 5.0); };
    const double ratio = err(10) / err(20);
    c.expect(ratio >= 12.0 && ratio <= 20.0, "rk4 ratio " + num(ratio));

    // Chord ratio monotone on (0, 2pi).
    double prev = brach::chord_ratio(1e-9);
    bool monotone = true;
    for (int i = 1; i < 10000; ++i) {
        const double h = brach::chord_ratio(1e-9 + (2 * std::numbers::pi - 2e-9) * i / 9999.0);
        monotone = monotone && h > prev;
        prev = h;
    }
    c.expect(monotone, "chord ratio not strictly increasing");
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Check cli_determinism() {
    Check c;
    const fs::path root = fs::temp_directory_path() / ("varcal_acceptance_" + std::to_string(::getpid()));
    const std::string common = " --x0 0 --y0 2 --x1 3 --y1 1 --format json --csv out.csv --svg out.svg > out.json";
    const std::vector<std::string> commands{
        "brach solve" + common,
        "brach compare --curve '-x/3 + 2' --curve '6 - sqrt(16 - x^2 + 6*x)'" + common,
    };
    for (std::size_t k = 0; k < commands.size(); ++k) {
        std::vector<std::string> artifacts;
        for (int run = 0; run < 2; ++run) {
            const fs::path dir = root / (std::to_string(k) + "_" + std::to_string(run));
            fs::create_directories(dir);
            const std::string cmd = "cd '" + dir.string() + "' && '" VARCAL_BIN "' " + commands[k];
            const int status = std::system(cmd.c_str());
            c.expect(status == 0, "'" + commands[k] + "' failed");
            artifacts.push_back(slurp(dir / "out.csv") + slurp(dir / "out.svg") + slurp(dir / "out.json"));
        }
        c.expect(!artifacts[0].empty() && artifacts[0] == artifacts[1], "artifacts differ for: " + commands[k]);
    }
    fs::remove_all(root);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
        {"Euler-Lagrange residuals", el_derivation},
        {"extremal verification", extremal_verification},
        {"momentum constant", momentum_constant},
        {"shooting slopes and endpoints", shooting},
        {"brachistochrone constants", cycloid_constants},
        {"minimal descent times", minimal_times},
        {"line and circle-arc times", curve_times},
        {"sloped-line time identity", sloped_line_identity},
        {"property suites", property_suites},
        {"CLI determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2zu. %s%s%s\n", result.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    result.detail.empty() ? "" : ": ", result.detail.c_str());
        if (!result.ok) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
