#include "fpptess/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fpptess/errors.hpp"
#include "fpptess/table.hpp"

namespace fpptess {

void emit_svg(const LimitShape& shape, const std::string& path) {
    if (shape.directions.empty())
        throw io_failure("emit_svg: empty shape");
    if (shape.directions[0].size() != 2)
        throw io_failure("emit_svg: only 2D shapes are drawable");

    double rmax = 0.0, mu_min = HUGE_VAL, mu_max = 0.0;
    for (double rad : shape.radii) {
        rmax = std::max(rmax, rad);
        mu_min = std::min(mu_min, 1.0 / rad);
        mu_max = std::max(mu_max, 1.0 / rad);
    }
    const double size = 600.0, margin = 50.0;
    double s = (size / 2.0 - margin) / rmax;
    auto px = [&](double v) { return size / 2.0 + s * v; };
    auto py = [&](double v) { return size / 2.0 - s * v; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
       << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size
       << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "  <line x1=\"0\" y1=\"" << size / 2 << "\" x2=\"" << size
       << "\" y2=\"" << size / 2 << "\" stroke=\"#bbbbbb\"/>\n";
    os << "  <line x1=\"" << size / 2 << "\" y1=\"0\" x2=\"" << size / 2
       << "\" y2=\"" << size << "\" stroke=\"#bbbbbb\"/>\n";
    os << "  <polygon points=\"";
    for (std::size_t i = 0; i < shape.directions.size(); ++i) {
        const Vec& u = shape.directions[i];
        double r = shape.radii[i];
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f,%.3f ", px(r * u[0]), py(r * u[1]));
        os << buf;
    }
    os << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    os << "  <text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"13\">"
       << "limit shape boundary, " << shape.directions.size()
       << " directions</text>\n";
    os << "  <text x=\"10\" y=\"38\" font-family=\"monospace\" font-size=\"13\">"
       << "mu range [" << format_double(mu_min) << ", " << format_double(mu_max)
       << "]</text>\n";
    os << "</svg>\n";

    atomic_write_file(path, os.str());
}

} // namespace fpptess
