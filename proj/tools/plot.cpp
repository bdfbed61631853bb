#include "plot.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace varcal::cli {
namespace {

constexpr std::array<const char*, 6> kOtherStrokes{"black", "red", "green", "orange", "purple", "brown"};
constexpr double kSvgWidth = 800.0;
constexpr double kMargin = 0.05;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string shortest(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void write_csv(std::ostream& out, const brach::CurveSamples& curve) {
    out << "x,y\n";
    for (const auto& p : curve.points) out << shortest(p.x) << ',' << shortest(p.y) << '\n';
}

void write_csv(std::ostream& out, std::span<const brach::CurveSamples> curves) {
    out << "label,x,y\n";
    for (const auto& c : curves) {
        const std::string label = csv_field(c.label);
        for (const auto& p : c.points) out << label << ',' << shortest(p.x) << ',' << shortest(p.y) << '\n';
    }
}

void write_svg(std::ostream& out, std::span<const brach::CurveSamples> curves) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    if (min_x > max_x) min_x = max_x = min_y = max_y = 0.0;
    double pad = kMargin * std::max(max_x - min_x, max_y - min_y);
    if (pad == 0.0) pad = 1.0;
    const double view_w = max_x - min_x + 2.0 * pad;
    const double view_h = max_y - min_y + 2.0 * pad;

    // SVG y grows downwards, so plot (x, -y).
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << shortest(kSvgWidth) << "\" height=\""
        << shortest(std::round(kSvgWidth * view_h / view_w)) << "\" viewBox=\"" << shortest(min_x - pad) << ' '
        << shortest(-(max_y + pad)) << ' ' << shortest(view_w) << ' ' << shortest(view_h) << "\">\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const char* stroke = i == 0 ? "blue" : kOtherStrokes[(i - 1) % kOtherStrokes.size()];
        out << "  <polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" points=\"";
        bool first = true;
        for (const auto& p : curves[i].points) {
            if (!first) out << ' ';
            first = false;
            out << shortest(p.x) << ',' << shortest(-p.y);
        }
        out << "\">\n    <title>" << xml_escape(curves[i].label) << "</title>\n  </polyline>\n";
    }
    out << "</svg>\n";
}

}  // namespace varcal::cli
