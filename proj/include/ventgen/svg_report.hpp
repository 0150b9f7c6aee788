#pragma once

#include <string>

#include "ventgen/metrics.hpp"

namespace ventgen {

// Day x hour heat-map pair for one calendar month: building electricity per
// floor area on top, share of zones judged neutral (adaptive model) below.
// Color scales are fixed (energy 0..30 Wh/m2 white->red, neutral share 0..1
// red->green) and documented in the SVG <desc> metadata. month is 1..12.
std::string render_hourly_svg(const HourlyResults& results, int month,
                              const HvacConfig& hvac);

}  // namespace ventgen
