#pragma once

#include "figedit/figmodel.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace figedit {

inline constexpr double kDefaultSnapPx = 8.0;
/// Smallest width or height a drag may leave, in figure fraction.
inline constexpr double kMinExtent = 0.01;

enum class Axis { X, Y };

/// Pixel/fraction conversions for a figure of the given physical size.
struct ViewTransform {
    double width_cm = 16.0;
    double height_cm = 12.0;
    double dpi = 100.0;

    static ViewTransform of(const FigureDoc& doc) { return {doc.width_cm, doc.height_cm, doc.dpi}; }

    double cm_to_px(double cm) const noexcept { return cm / 2.54 * dpi; }
    double width_px() const noexcept { return cm_to_px(width_cm); }
    double height_px() const noexcept { return cm_to_px(height_cm); }
    double extent_px(Axis a) const noexcept { return a == Axis::X ? width_px() : height_px(); }
    double px_to_fraction(Axis a, double px) const noexcept { return px / extent_px(a); }
    double fraction_to_px(Axis a, double f) const noexcept { return f * extent_px(a); }
};

enum class Handle { N, S, E, W, NE, NW, SE, SW };

std::string_view to_string(Handle h) noexcept;
/// Lowercase compass name ("n", "se", ...). Returns false if unknown.
bool parse_handle(std::string_view text, Handle& out);

struct DragMode {
    enum class Kind { Move, Resize } kind = Kind::Move;
    Handle handle = Handle::E;

    static DragMode move() { return {}; }
    static DragMode resize(Handle h) { return {Kind::Resize, h}; }
};

/// Applies a pointer drag given in screen pixels (x right, y down) to a
/// figure-fraction rect. Moving keeps the size; resizing moves only the
/// gripped edges and never shrinks below kMinExtent.
Rect drag(const Rect& rect, double dx_px, double dy_px, DragMode mode, const ViewTransform& vt);

enum class Orientation { Horizontal, Vertical };
enum class GuideKind { Edge, Center, SizeMatch };

struct Guide {
    Orientation orientation = Orientation::Vertical;
    double position = 0.0;  // figure fraction
    GuideKind kind = GuideKind::Edge;
    friend bool operator==(const Guide&, const Guide&) = default;
};

std::string_view to_string(Orientation o) noexcept;
std::string_view to_string(GuideKind k) noexcept;

struct SnapResult {
    Rect rect;
    std::vector<Guide> guides;
};

/// Aligns `rect` with `peers`. Each axis is handled on its own: among the
/// candidate alignments (low edge, centre, high edge against the same on
/// every peer, plus equal size while resizing) the one with the smallest
/// pixel distance within `threshold_px` wins, ties going to the smaller
/// resulting coordinate. Guides list every alignment that holds exactly
/// afterwards.
SnapResult snap(const Rect& rect, std::span<const Rect> peers, double threshold_px, const ViewTransform& vt,
                DragMode mode = DragMode::move());

/// Alignments of `rect` against `peers` that hold within 1e-12.
std::vector<Guide> satisfied_guides(const Rect& rect, std::span<const Rect> peers, DragMode mode);

}  // namespace figedit
