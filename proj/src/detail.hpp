#pragma once

#include <optional>
#include <string>

#include "varcal/expr.hpp"

namespace varcal::detail {

/// Result of applying a primitive to numbers: a value, or the reason it is
/// undefined at that point.
struct Applied {
    double value = 0.0;
    const char* failure = nullptr;

    bool ok() const noexcept { return failure == nullptr; }
};

Applied apply_func(Func f, double u) noexcept;
Applied apply_power(double base, double exponent) noexcept;

std::string format_double(double v);
std::string format_point(const Bindings& b);

}  // namespace varcal::detail
