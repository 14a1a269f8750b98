#pragma once

#include <string>

#include "fpptess/pht_fpp.hpp"

namespace fpptess {

// Standalone SVG of a 2D limit-shape boundary: closed polyline through the
// points radius(u) * u, coordinate axes, and a legend with the extremes of
// mu. Throws io_failure on empty shapes or unwritable paths; written
// atomically like every other emitter.
void emit_svg(const LimitShape& shape, const std::string& path);

} // namespace fpptess
