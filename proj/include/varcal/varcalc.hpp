#pragma once

#include <optional>
#include <vector>

#include "varcal/expr.hpp"

namespace varcal {

/// Integrand L(x, y, yp) of a first-order variational functional.
/// Any identifier other than x, y, yp is a symbolic parameter; ypp is rejected.
class Lagrangian {
public:
    /// Throws std::invalid_argument if `expr` contains ypp.
    explicit Lagrangian(Expr expr);

    const Expr& expr() const noexcept { return expr_; }

private:
    Expr expr_;
};

enum class IntegralKind { Momentum, Energy };

const char* to_string(IntegralKind kind) noexcept;

/// A quantity phi(x, y, yp) that is constant along every extremal.
struct FirstIntegral {
    IntegralKind kind;
    Expr phi;
};

struct EulerLagrangeResult {
    /// dL/dy - d/dx dL/dyp, affine in ypp.
    Expr residual;
    /// ypp = accel on extremals; empty for degenerate Lagrangians.
    std::optional<Expr> accel;
    std::vector<FirstIntegral> first_integrals;
};

struct VerificationReport {
    double max_abs_residual = 0.0;
    int sample_count = 0;
    double worst_x = 0.0;
};

struct ConstancyReport {
    double value = 0.0;
    double max_deviation = 0.0;
};

EulerLagrangeResult euler_lagrange(const Lagrangian& L);

/// Momentum (phi = dL/dyp) when L has no free y, energy
/// (phi = yp*dL/dyp - L) when L has no free x.
std::vector<FirstIntegral> detect_first_integrals(const Lagrangian& L);

/// Solves residual = P + Q*ypp for ypp. Throws DegenerateLagrangian if Q == 0.
Expr accel_form(const EulerLagrangeResult& r);

/// Evaluates the residual along y = candidate(x) at n uniform points of
/// [x_lo, x_hi]. `params` binds any symbolic parameters.
VerificationReport verify_extremal(const Lagrangian& L, const Expr& candidate, double x_lo, double x_hi, int n,
                                   const Bindings& params = {});

/// Mean of phi along y = candidate(x) and the largest deviation from it.
ConstancyReport first_integral_constancy(const FirstIntegral& fi, const Expr& candidate, double x_lo, double x_hi,
                                         int n, const Bindings& params = {});

}  // namespace varcal
