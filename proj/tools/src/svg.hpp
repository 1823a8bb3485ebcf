#pragma once

#include <string>
#include <vector>

namespace shadowlab::cli {

/// Static SVG line plot with axes and knot ticks. Non-finite y values are
/// clipped to the top of the frame.
void write_svg(const std::string& path, const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& knots, const std::string& title);

}  // namespace shadowlab::cli
