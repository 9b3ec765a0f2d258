#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "scsf/curve.hpp"

namespace scsf {

// Data-space frame of an SVG snapshot: [min_x, max_x] x [min_y, max_y].
struct SvgFrame {
    double min_x = 0.0, max_x = 1.0;
    double min_y = 0.0, max_y = 1.0;
};

// Frame of the curve under the given view with a relative margin.
SvgFrame svg_frame(const Curve& curve, std::pair<int, int> view, double margin = 0.1);

// Stroke-only closed polyline of the projected curve, byte-deterministic.
// view is an ordered pair of distinct coordinate indices; frame defaults to
// the curve's own bounding box + 10%.
std::string render_snapshot_svg(const Curve& curve, std::pair<int, int> view,
                                std::optional<SvgFrame> frame = std::nullopt);

void emit_snapshot_svg(const Curve& curve, std::pair<int, int> view,
                       const std::string& path,
                       std::optional<SvgFrame> frame = std::nullopt);

}  // namespace scsf
