#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "plot.hpp"
#include "varcal/brach.hpp"
#include "varcal/error.hpp"
#include "varcal/expr.hpp"
#include "varcal/numerics.hpp"
#include "varcal/varcalc.hpp"

namespace varcal::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Bad command-line content that is not an expression syntax error.
class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string lagrangian;
    std::vector<std::string> curves;
    std::vector<std::string> params;
    std::optional<std::string> exact;
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double g = brach::kDefaultGravity;
    int samples = 200;
    int steps = 1000;
    double slope_lo = -10.0;
    double slope_hi = 10.0;
    double tol = 1e-10;
    std::optional<std::string> csv;
    std::optional<std::string> svg;
    std::string format = "text";

    bool json() const { return format == "json"; }
};

std::string sig10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Json optional_path(const std::optional<std::string>& p) { return p ? Json(*p) : Json(nullptr); }

Json endpoints_json(const RunConfig& c) {
    return Json{{"x0", c.x0}, {"y0", c.y0}, {"x1", c.x1}, {"y1", c.y1}};
}

Bindings parse_params(const std::vector<std::string>& specs) {
    Bindings b;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects NAME=VALUE, got '" + s + "'");
        const std::string name = s.substr(0, eq);
        if (name == vars::x || name == vars::y || name == vars::yp || name == vars::ypp) {
            throw UsageError("--param cannot bind the reserved name '" + name + "'");
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(s.substr(eq + 1), &used);
            if (used != s.size() - eq - 1) throw std::invalid_argument("trailing characters");
            b[name] = v;
        } catch (const std::exception&) {
            throw UsageError("--param value for '" + name + "' is not a number");
        }
    }
    return b;
}

Lagrangian parse_lagrangian(const std::string& text) {
    Expr e = parse(text);
    if (contains(e, vars::ypp)) throw UsageError("a Lagrangian must not contain ypp");
    return Lagrangian(std::move(e));
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    writer(f);
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_el(const RunConfig& c, std::ostream& out) {
    const Lagrangian L = parse_lagrangian(c.lagrangian);
    const EulerLagrangeResult r = euler_lagrange(L);
    if (c.json()) {
        Json integrals = Json::array();
        for (const auto& fi : r.first_integrals) {
            integrals.push_back({{"kind", to_string(fi.kind)}, {"phi", to_string(fi.phi)}});
        }
        out << Json{{"command", "el"},
                    {"lagrangian", to_string(L.expr())},
                    {"residual", to_string(r.residual)},
                    {"accel", r.accel ? Json(to_string(*r.accel)) : Json(nullptr)},
                    {"degenerate", !r.accel.has_value()},
                    {"first_integrals", integrals}}
                   .dump(2)
            << '\n';
        return kOk;
    }
    out << "lagrangian:      " << to_string(L.expr()) << '\n';
    out << "euler-lagrange:  " << to_string(r.residual) << " = 0\n";
    if (r.accel) {
        out << "acceleration:    ypp = " << to_string(*r.accel) << '\n';
    } else {
        out << "acceleration:    none (degenerate Lagrangian, the equation is not second order)\n";
    }
    if (r.first_integrals.empty()) {
        out << "first integrals: none\n";
    } else {
        out << "first integrals:\n";
        for (const auto& fi : r.first_integrals) {
            out << "  " << to_string(fi.kind) << ": " << to_string(fi.phi) << " = const\n";
        }
    }
    return kOk;
}

int cmd_extremal(const RunConfig& c, std::ostream& out) {
    const Lagrangian L = parse_lagrangian(c.lagrangian);
    const Bindings params = parse_params(c.params);
    std::optional<Expr> exact;
    if (c.exact) exact = normalize(parse(*c.exact));

    const EulerLagrangeResult r = euler_lagrange(L);
    const Expr accel = accel_form(r);
    if (c.steps < 1) throw UsageError("--steps must be at least 1");

    const AccelFn f = [&accel, &params](double x, double y, double yp) {
        Bindings b = params;
        b.insert_or_assign(std::string(vars::x), x);
        b.insert_or_assign(std::string(vars::y), y);
        b.insert_or_assign(std::string(vars::yp), yp);
        return evaluate(accel, b);
    };
    const ShootResult shot = shoot(f, c.x0, c.y0, c.x1, c.y1, c.slope_lo, c.slope_hi, c.tol, c.steps);
    const auto& samples = shot.trajectory.samples;

    // Residual with y'' from second differences of the numeric trajectory.
    double fd_residual = 0.0;
    const double h = shot.trajectory.step;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        Bindings b = params;
        b.insert_or_assign(std::string(vars::x), samples[i].x);
        b.insert_or_assign(std::string(vars::y), samples[i].y);
        b.insert_or_assign(std::string(vars::yp), samples[i].yp);
        b.insert_or_assign(std::string(vars::ypp), (samples[i + 1].y - 2.0 * samples[i].y + samples[i - 1].y) / (h * h));
        fd_residual = std::max(fd_residual, std::abs(evaluate(r.residual, b)));
    }

    const OdeTrajectory fine = rk4(f, c.x0, c.y0, shot.slope, c.x1, 2 * c.steps);
    double halving_change = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        halving_change = std::max(halving_change, std::abs(samples[i].y - fine.samples[2 * i].y));
    }

    std::optional<double> exact_dev;
    if (exact) {
        double dev = 0.0;
        for (const auto& s : samples) {
            Bindings b = params;
            b.insert_or_assign(std::string(vars::x), s.x);
            dev = std::max(dev, std::abs(s.y - evaluate(*exact, b)));
        }
        exact_dev = dev;
    }

    if (c.csv) {
        brach::CurveSamples curve{{}, "extremal"};
        for (const auto& s : samples) curve.points.push_back({s.x, s.y});
        write_file(*c.csv, [&](std::ostream& os) { write_csv(os, curve); });
    }

    const double miss = samples.back().y - c.y1;
    if (c.json()) {
        Json j{{"command", "extremal"},
               {"lagrangian", to_string(L.expr())},
               {"euler_lagrange", to_string(r.residual)},
               {"accel", to_string(accel)},
               {"boundary", endpoints_json(c)},
               {"slope", shot.slope},
               {"endpoint_miss", miss},
               {"steps", c.steps},
               {"fd_residual_max", fd_residual},
               {"step_halving_change", halving_change},
               {"exact_max_deviation", exact_dev ? Json(*exact_dev) : Json(nullptr)},
               {"csv", optional_path(c.csv)}};
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "acceleration:        ypp = " << to_string(accel) << '\n';
    out << "initial slope:       " << sig10(shot.slope) << '\n';
    out << "endpoint miss:       " << sig10(miss) << '\n';
    out << "fd residual max:     " << sig10(fd_residual) << '\n';
    out << "step-halving change: " << sig10(halving_change) << '\n';
    if (exact_dev) out << "max |y - exact|:     " << sig10(*exact_dev) << '\n';
    if (c.csv) out << "trajectory written to " << *c.csv << '\n';
    return kOk;
}

brach::CycloidSolution solve_endpoints(const RunConfig& c) {
    if (c.samples < 1) throw UsageError("--samples must be at least 1");
    return brach::solve_constants({c.x0, c.y0, c.x1, c.y1});
}

int cmd_brach_solve(const RunConfig& c, std::ostream& out) {
    const auto s = solve_endpoints(c);
    const double t = brach::min_time(s, c.g);
    const double t_quad = brach::descent_time_parametric(s, c.g);
    const std::vector<brach::CurveSamples> curves{brach::sample_cycloid(s, c.samples)};
    if (c.csv) write_file(*c.csv, [&](std::ostream& os) { write_csv(os, curves.front()); });
    if (c.svg) write_file(*c.svg, [&](std::ostream& os) { write_svg(os, curves); });

    if (c.json()) {
        Json j{{"command", "brach solve"},
               {"endpoints", endpoints_json(c)},
               {"g", c.g},
               {"a", s.a},
               {"theta1", s.theta1},
               {"min_time", t},
               {"min_time_quadrature", t_quad},
               {"samples", c.samples},
               {"csv", optional_path(c.csv)},
               {"svg", optional_path(c.svg)}};
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "a        = " << sig10(s.a) << '\n';
    out << "theta1   = " << sig10(s.theta1) << '\n';
    out << "T        = " << sig10(t) << '\n';
    out << "T (quad) = " << sig10(t_quad) << '\n';
    return kOk;
}

int cmd_brach_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto s = solve_endpoints(c);
    struct Row {
        std::string label;
        std::optional<double> time;
        std::string error;
    };
    std::vector<Row> rows{{"cycloid", brach::min_time(s, c.g), {}}};
    std::vector<brach::CurveSamples> curves{brach::sample_cycloid(s, c.samples)};

    for (const auto& text : c.curves) {
        const Expr curve = parse(text);
        try {
            const double t = brach::descent_time(curve, c.x0, c.x1, c.y0, c.g);
            auto samples = brach::sample_curve(curve, c.x0, c.x1, c.samples, text);
            if (std::abs(samples.points.back().y - c.y1) > 1e-6) {
                err << "warning: curve '" << text << "' does not pass through (x1, y1)\n";
            }
            rows.push_back({text, t, {}});
            curves.push_back(std::move(samples));
        } catch (const Error& e) {
            rows.push_back({text, std::nullopt, e.what()});
        } catch (const std::invalid_argument& e) {
            rows.push_back({text, std::nullopt, e.what()});
        }
    }

    bool cycloid_fastest = true;
    for (const auto& row : rows) {
        if (row.time && *row.time < *rows.front().time) cycloid_fastest = false;
    }
    if (!cycloid_fastest) err << "warning: a listed curve is faster than the cycloid\n";

    if (c.csv) write_file(*c.csv, [&](std::ostream& os) { write_csv(os, curves); });
    if (c.svg) write_file(*c.svg, [&](std::ostream& os) { write_svg(os, curves); });

    if (c.json()) {
        Json table = Json::array();
        for (const auto& row : rows) {
            Json j{{"label", row.label}};
            if (row.time) {
                j["time"] = *row.time;
            } else {
                j["error"] = row.error;
            }
            table.push_back(std::move(j));
        }
        Json j{{"command", "brach compare"},
               {"endpoints", endpoints_json(c)},
               {"g", c.g},
               {"a", s.a},
               {"theta1", s.theta1},
               {"rows", table},
               {"cycloid_fastest", cycloid_fastest},
               {"csv", optional_path(c.csv)},
               {"svg", optional_path(c.svg)}};
        out << j.dump(2) << '\n';
        return kOk;
    }
    std::size_t width = 5;
    for (const auto& row : rows) width = std::max(width, row.label.size());
    out << std::string("curve") << std::string(width - 5 + 2, ' ') << "time\n";
    for (const auto& row : rows) {
        out << row.label << std::string(width - row.label.size() + 2, ' ')
            << (row.time ? sig10(*row.time) : "error: " + row.error) << '\n';
    }
    return kOk;
}

void add_format(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
}

void add_endpoints(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--x0", c.x0, "Start x")->required();
    cmd->add_option("--y0", c.y0, "Start y")->required();
    cmd->add_option("--x1", c.x1, "End x")->required();
    cmd->add_option("--y1", c.y1, "End y")->required();
}

void add_brach_options(CLI::App* cmd, RunConfig& c) {
    add_endpoints(cmd, c);
    cmd->add_option("--g", c.g, "Gravitational acceleration")->capture_default_str();
    cmd->add_option("--samples", c.samples, "Plot segments per curve")->capture_default_str();
    cmd->add_option("--csv", c.csv, "Write curve samples as CSV");
    cmd->add_option("--svg", c.svg, "Write an SVG plot");
    add_format(cmd, c);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Euler-Lagrange equations, extremals and brachistochrone descent times", "varcal"};
    app.require_subcommand(1);

    auto* el = app.add_subcommand("el", "Derive the Euler-Lagrange equation and first integrals");
    el->add_option("--lagrangian,-L", c.lagrangian, "L(x, y, yp)")->required();
    add_format(el, c);

    auto* extremal = app.add_subcommand("extremal", "Solve the boundary value problem by shooting");
    extremal->add_option("--lagrangian,-L", c.lagrangian, "L(x, y, yp)")->required();
    add_endpoints(extremal, c);
    extremal->add_option("--param", c.params, "Bind a parameter, NAME=VALUE (repeatable)");
    extremal->add_option("--slope-lo", c.slope_lo, "Lower initial-slope bracket")->capture_default_str();
    extremal->add_option("--slope-hi", c.slope_hi, "Upper initial-slope bracket")->capture_default_str();
    extremal->add_option("--steps", c.steps, "RK4 steps")->capture_default_str();
    extremal->add_option("--tol", c.tol, "Tolerance on |y(x1) - y1|")->capture_default_str();
    extremal->add_option("--exact", c.exact, "Known solution y(x) to compare against");
    extremal->add_option("--csv", c.csv, "Write the trajectory as CSV");
    add_format(extremal, c);

    auto* brach_cmd = app.add_subcommand("brach", "Brachistochrone between two points");
    brach_cmd->require_subcommand(1);
    auto* solve = brach_cmd->add_subcommand("solve", "Cycloid constants and minimal descent time");
    add_brach_options(solve, c);
    auto* compare = brach_cmd->add_subcommand("compare", "Descent times along the cycloid and other curves");
    add_brach_options(compare, c);
    compare->add_option("--curve", c.curves, "Curve y(x) through the start point (repeatable)");

    std::vector<const char*> argv{"varcal"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseError;
    }

    try {
        if (el->parsed()) return cmd_el(c, out);
        if (extremal->parsed()) return cmd_extremal(c, out);
        if (solve->parsed()) return cmd_brach_solve(c, out);
        if (compare->parsed()) return cmd_brach_compare(c, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const UnboundVariable& e) {
        err << "error: " << e.what() << " (bind parameters with --param NAME=VALUE)\n";
        return kParseError;
    } catch (const DegenerateLagrangian& e) {
        err << "error: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const InfeasibleInput& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}

}  // namespace varcal::cli
