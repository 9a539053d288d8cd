#pragma once

#include "figedit/figmodel.hpp"
#include "figedit/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace figedit {

/// Axis-aligned box in SVG pixels (origin top-left, y down).
struct PixelBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    bool contains(double px, double py) const noexcept { return px >= x && px <= x + w && py >= y && py <= y + h; }
    double center_x() const noexcept { return x + w / 2.0; }
    double center_y() const noexcept { return y + h / 2.0; }
};

struct IndexedElement {
    ObjectPath path;
    PixelBox box;
};

struct RenderOutput {
    std::string svg_text;
    /// Every axes, series, text and visible legend, in document order.
    std::vector<IndexedElement> element_index;
};

/// Deterministic SVG for a document: fixed glyph metrics, coordinates with
/// two decimals, element ids carrying object paths.
RenderOutput render(const FigureDoc& doc);

/// Tick positions for [lo, hi]: the step m·10^k nearest to a quarter of the
/// range (m in {1, 2, 5, 10}, ties to the smaller m), all multiples of it
/// inside the range. Throws DegenerateRange unless lo < hi.
std::vector<double> default_ticks(double lo, double hi);

/// Topmost element under the point: texts beat legends beat axes; among
/// equals the one drawn last wins. Series are not selectable.
std::optional<ObjectPath> hit_test(const RenderOutput& out, double x_px, double y_px);

/// Layout helpers shared with the drag code.
PixelBox axes_box(const FigureDoc& doc, std::size_t axes_index);
PixelBox legend_box(const FigureDoc& doc, std::size_t axes_index);
PixelBox text_box(const FigureDoc& doc, std::size_t axes_index, std::size_t text_index);

/// Fixed-width text metric: 0.6 em per code point.
double text_width_px(std::string_view utf8, double font_px);

/// Two fixed decimals, no negative zero.
std::string format_coord(double v);

}  // namespace figedit
