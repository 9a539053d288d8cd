#pragma once

#include "figedit/path.hpp"
#include "figedit/statement.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace figedit {

/// Rectangle in figure-fraction units, origin bottom-left.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const noexcept { return x + w; }
    double top() const noexcept { return y + h; }

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    friend bool operator==(const Range&, const Range&) = default;
};

struct TickSet {
    std::vector<double> locations;  // strictly increasing
    std::optional<std::vector<std::string>> labels;  // same length as locations
    friend bool operator==(const TickSet&, const TickSet&) = default;
};

enum class FontWeight { Normal, Bold };

struct TextNode {
    double x = 0.0;  // axes fraction
    double y = 0.0;
    std::string content;
    double fontsize_pt = 10.0;
    std::string color = "#000000";
    double rotation_deg = 0.0;
    FontWeight weight = FontWeight::Normal;
    friend bool operator==(const TextNode&, const TextNode&) = default;
};

struct LegendNode {
    Point loc{0.7, 0.7};  // lower-left corner of the box, axes fraction
    bool visible = true;
    friend bool operator==(const LegendNode&, const LegendNode&) = default;
};

struct DataSource {
    std::string path;
    std::string xcol;
    std::string ycol;
    friend bool operator==(const DataSource&, const DataSource&) = default;
};

struct SeriesNode {
    DataSource source;
    std::vector<Point> points;
    std::string color = "#1f77b4";
    double linewidth_pt = 1.5;
    friend bool operator==(const SeriesNode&, const SeriesNode&) = default;
};

struct AxesNode {
    Rect position;
    Range xlim;
    Range ylim;
    std::string xlabel;
    std::string ylabel;
    std::string title;
    std::optional<TickSet> xticks;
    std::optional<TickSet> yticks;
    std::vector<SeriesNode> series;
    std::vector<TextNode> texts;
    std::optional<LegendNode> legend;
    bool grid = false;
    friend bool operator==(const AxesNode&, const AxesNode&) = default;
};

/// Root of the scene graph. Children are addressed by position, and there
/// is no deletion, so indices stay stable for a session.
struct FigureDoc {
    std::size_t index = 1;
    double width_cm = 16.0;
    double height_cm = 12.0;
    double dpi = 100.0;
    std::vector<AxesNode> axes;
    friend bool operator==(const FigureDoc&, const FigureDoc&) = default;
};

using ElementRef =
    std::variant<const FigureDoc*, const AxesNode*, const TextNode*, const SeriesNode*, const LegendNode*>;

/// Address of `element` within `doc`. Throws ElementNotInDoc.
ObjectPath serialize_path(const FigureDoc& doc, ElementRef element);

/// Throws NoSuchFigure, PathOutOfRange or NoLegend.
ElementRef resolve_path(const FigureDoc& doc, const ObjectPath& path);

/// Every addressable element in document order: figure, then per axes the
/// axes itself, its lines, texts and legend.
std::vector<ObjectPath> enumerate_paths(const FigureDoc& doc);

/// Supplies series points for `plot_csv`. May throw figedit::Error.
using SeriesLoader = std::function<std::vector<Point>(const DataSource&)>;

/// Applies one whitelisted statement. Returns the created child's path for
/// creation methods. Either the whole statement applies or the doc is left
/// untouched.
std::optional<ObjectPath> apply_change(FigureDoc& doc, const Statement& stmt,
                                       const SeriesLoader& loader = {});

/// Structural equality with reals compared at absolute tolerance `tol`.
bool approx_equal(const FigureDoc& a, const FigureDoc& b, double tol);

std::string_view to_string(FontWeight w) noexcept;

/// Default colour for the n-th series of an axes.
std::string series_color(std::size_t n);

}  // namespace figedit
