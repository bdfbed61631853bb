#pragma once

#include <ostream>
#include <span>
#include <string>

#include "varcal/brach.hpp"

namespace varcal::cli {

/// Shortest decimal string that round-trips to the same double.
std::string shortest(double v);

/// Header `x,y`, one point per line.
void write_csv(std::ostream& out, const brach::CurveSamples& curve);

/// Header `label,x,y`, curves one after another.
void write_csv(std::ostream& out, std::span<const brach::CurveSamples> curves);

/// One polyline per curve in a shared, equally scaled viewBox with a 5%
/// margin. The first curve is blue, the rest cycle through black, red, ...
void write_svg(std::ostream& out, std::span<const brach::CurveSamples> curves);

}  // namespace varcal::cli
