#include "figedit/figmodel.hpp"

#include "figedit/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace figedit {

std::string_view to_string(FontWeight w) noexcept
{
    return w == FontWeight::Bold ? "bold" : "normal";
}

std::string series_color(std::size_t n)
{
    static constexpr std::array<const char*, 10> palette = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    };
    return palette[n % palette.size()];
}

namespace {

template <class T>
bool within(const T* p, const std::vector<T>& v)
{
    if (v.empty()) return false;
    std::less<const T*> lt;
    return !lt(p, v.data()) && lt(p, v.data() + v.size());
}

template <class T>
std::size_t offset_in(const T* p, const std::vector<T>& v)
{
    return static_cast<std::size_t>(p - v.data());
}

}  // namespace

ObjectPath serialize_path(const FigureDoc& doc, ElementRef element)
{
    const ObjectPath root(doc.index);
    return std::visit(
        [&](auto* p) -> ObjectPath {
            using T = std::remove_const_t<std::remove_pointer_t<decltype(p)>>;
            if constexpr (std::is_same_v<T, FigureDoc>) {
                if (p == &doc) return root;
            } else if constexpr (std::is_same_v<T, AxesNode>) {
                if (within(p, doc.axes)) return root.child(Segment::axes(offset_in(p, doc.axes)));
            } else {
                // Walk up: find the owning axes, then the figure.
                for (std::size_t i = 0; i < doc.axes.size(); ++i) {
                    const AxesNode& ax = doc.axes[i];
                    const ObjectPath axes_path = root.child(Segment::axes(i));
                    if constexpr (std::is_same_v<T, TextNode>) {
                        if (within(p, ax.texts)) return axes_path.child(Segment::texts(offset_in(p, ax.texts)));
                    } else if constexpr (std::is_same_v<T, SeriesNode>) {
                        if (within(p, ax.series)) return axes_path.child(Segment::lines(offset_in(p, ax.series)));
                    } else {
                        if (ax.legend && &*ax.legend == p) return axes_path.child(Segment::legend());
                    }
                }
            }
            throw Error(ErrorKind::ElementNotInDoc, "element is not part of this figure");
        },
        element);
}

namespace {

template <class Doc>
auto& axes_at(Doc& doc, const ObjectPath& path)
{
    if (path.figure_index() != doc.index)
        throw Error(ErrorKind::NoSuchFigure, "no figure(" + std::to_string(path.figure_index()) + ")");
    const std::size_t i = path.segments().front().index;
    if (i >= doc.axes.size())
        throw Error(ErrorKind::PathOutOfRange, path.to_text() + ": axes index out of range");
    return doc.axes[i];
}

void check_figure(const FigureDoc& doc, const ObjectPath& path)
{
    if (path.figure_index() != doc.index)
        throw Error(ErrorKind::NoSuchFigure, "no figure(" + std::to_string(path.figure_index()) + ")");
}

template <class T>
T& child_at(std::vector<T>& v, std::size_t i, const ObjectPath& path)
{
    if (i >= v.size()) throw Error(ErrorKind::PathOutOfRange, path.to_text() + ": index out of range");
    return v[i];
}

template <class T>
const T& child_at(const std::vector<T>& v, std::size_t i, const ObjectPath& path)
{
    if (i >= v.size()) throw Error(ErrorKind::PathOutOfRange, path.to_text() + ": index out of range");
    return v[i];
}

}  // namespace

ElementRef resolve_path(const FigureDoc& doc, const ObjectPath& path)
{
    check_figure(doc, path);
    const auto& segs = path.segments();
    if (segs.empty()) return &doc;
    const AxesNode& ax = axes_at(doc, path);
    if (segs.size() == 1) return &ax;
    const Segment& s = segs[1];
    switch (s.kind) {
    case SegmentKind::Texts: return &child_at(ax.texts, s.index, path);
    case SegmentKind::Lines: return &child_at(ax.series, s.index, path);
    case SegmentKind::Legend:
        if (!ax.legend) throw Error(ErrorKind::NoLegend, path.parent().to_text() + " has no legend");
        return &*ax.legend;
    case SegmentKind::Axes: break;
    }
    throw Error(ErrorKind::PathOutOfRange, path.to_text());
}

std::vector<ObjectPath> enumerate_paths(const FigureDoc& doc)
{
    const ObjectPath root(doc.index);
    std::vector<ObjectPath> out{root};
    for (std::size_t i = 0; i < doc.axes.size(); ++i) {
        const ObjectPath ap = root.child(Segment::axes(i));
        out.push_back(ap);
        for (std::size_t k = 0; k < doc.axes[i].series.size(); ++k) out.push_back(ap.child(Segment::lines(k)));
        for (std::size_t j = 0; j < doc.axes[i].texts.size(); ++j) out.push_back(ap.child(Segment::texts(j)));
        if (doc.axes[i].legend) out.push_back(ap.child(Segment::legend()));
    }
    return out;
}

namespace {

[[noreturn]] void violation(const std::string& what)
{
    throw Error(ErrorKind::InvariantViolation, what);
}

double finite(const Literal& lit, const char* what)
{
    const double v = lit.as_real();
    if (!std::isfinite(v)) violation(std::string(what) + " must be finite");
    return v;
}

double positive(const Literal& lit, const char* what)
{
    const double v = finite(lit, what);
    if (!(v > 0.0)) violation(std::string(what) + " must be positive");
    return v;
}

Rect rect_arg(const Literal& lit)
{
    const auto& l = lit.as_list();
    Rect r{finite(l[0], "x"), finite(l[1], "y"), finite(l[2], "width"), finite(l[3], "height")};
    if (r.w < 0.0 || r.h < 0.0) violation("rect width and height must be non-negative");
    return r;
}

Range range_args(const Literal& a, const Literal& b)
{
    Range r{finite(a, "limit"), finite(b, "limit")};
    if (r.lo == r.hi) violation("axis limits must differ");
    return r;
}

std::vector<double> tick_locations(const Literal& lit)
{
    std::vector<double> out;
    for (const auto& item : lit.as_list()) {
        const double v = finite(item, "tick");
        if (!out.empty() && !(v > out.back())) violation("tick locations must be strictly increasing");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> string_list(const Literal& lit)
{
    std::vector<std::string> out;
    for (const auto& item : lit.as_list()) out.push_back(item.as_string());
    return out;
}

// New locations keep existing labels only while the counts still agree.
TickSet with_locations(const std::optional<TickSet>& old, std::vector<double> locs)
{
    TickSet t;
    if (old && old->labels && old->labels->size() == locs.size()) t.labels = old->labels;
    t.locations = std::move(locs);
    return t;
}

std::optional<TickSet> with_labels(const std::optional<TickSet>& old, std::vector<std::string> labels)
{
    if (labels.empty()) {
        if (!old) return old;
        TickSet t = *old;
        t.labels.reset();
        return t;
    }
    if (!old) violation("set tick locations before tick labels");
    if (old->locations.size() != labels.size())
        violation("tick label count " + std::to_string(labels.size()) + " does not match " +
                  std::to_string(old->locations.size()) + " tick locations");
    TickSet t = *old;
    t.labels = std::move(labels);
    return t;
}

bool is_hex_color(const std::string& s)
{
    if (s.size() != 7 || s[0] != '#') return false;
    return std::all_of(s.begin() + 1, s.end(),
                       [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

FontWeight weight_arg(const Literal& lit)
{
    const auto& s = lit.as_string();
    if (s == "normal") return FontWeight::Normal;
    if (s == "bold") return FontWeight::Bold;
    violation("font weight must be \"normal\" or \"bold\"");
}

std::optional<ObjectPath> apply_figure(FigureDoc& doc, const ObjectPath& path, const Statement& s)
{
    check_figure(doc, path);
    const auto& a = s.args;
    if (s.method == "set_size_cm") {
        const double w = positive(a[0], "figure width");
        const double h = positive(a[1], "figure height");
        doc.width_cm = w;
        doc.height_cm = h;
    } else if (s.method == "set_dpi") {
        doc.dpi = positive(a[0], "dpi");
    } else if (s.method == "add_axes") {
        AxesNode ax;
        ax.position = rect_arg(a[0]);
        doc.axes.push_back(std::move(ax));
        return path.child(Segment::axes(doc.axes.size() - 1));
    }
    return std::nullopt;
}

std::optional<ObjectPath> apply_axes(AxesNode& ax, const ObjectPath& path, const Statement& s,
                                     const SeriesLoader& loader)
{
    const auto& a = s.args;
    const std::string& m = s.method;
    if (m == "set_position") {
        ax.position = rect_arg(a[0]);
    } else if (m == "set_xlim") {
        ax.xlim = range_args(a[0], a[1]);
    } else if (m == "set_ylim") {
        ax.ylim = range_args(a[0], a[1]);
    } else if (m == "set_xlabel") {
        ax.xlabel = a[0].as_string();
    } else if (m == "set_ylabel") {
        ax.ylabel = a[0].as_string();
    } else if (m == "set_title") {
        ax.title = a[0].as_string();
    } else if (m == "set_xticks") {
        ax.xticks = with_locations(ax.xticks, tick_locations(a[0]));
    } else if (m == "set_yticks") {
        ax.yticks = with_locations(ax.yticks, tick_locations(a[0]));
    } else if (m == "set_xticklabels") {
        ax.xticks = with_labels(ax.xticks, string_list(a[0]));
    } else if (m == "set_yticklabels") {
        ax.yticks = with_labels(ax.yticks, string_list(a[0]));
    } else if (m == "grid") {
        ax.grid = a[0].as_bool();
    } else if (m == "plot_csv") {
        SeriesNode series;
        series.source = {a[0].as_string(), a[1].as_string(), a[2].as_string()};
        series.color = series_color(ax.series.size());
        if (loader) {
            series.points = loader(series.source);
            if (series.points.empty()) violation("no usable rows for " + series.source.ycol);
        }
        ax.series.push_back(std::move(series));
        return path.child(Segment::lines(ax.series.size() - 1));
    } else if (m == "text") {
        TextNode t;
        t.x = finite(a[0], "x");
        t.y = finite(a[1], "y");
        t.content = a[2].as_string();
        ax.texts.push_back(std::move(t));
        return path.child(Segment::texts(ax.texts.size() - 1));
    } else if (m == "legend") {
        // Creating an existing legend is a no-op that still names it.
        if (!ax.legend) ax.legend = LegendNode{};
        return path.child(Segment::legend());
    }
    return std::nullopt;
}

void apply_text(TextNode& t, const Statement& s)
{
    const auto& a = s.args;
    const std::string& m = s.method;
    if (m == "set_text") {
        t.content = a[0].as_string();
    } else if (m == "set_position") {
        const double x = finite(a[0], "x");
        const double y = finite(a[1], "y");
        t.x = x;
        t.y = y;
    } else if (m == "set_fontsize") {
        t.fontsize_pt = positive(a[0], "font size");
    } else if (m == "set_color") {
        if (!is_hex_color(a[0].as_string())) violation("colour must look like #rrggbb (lowercase hex)");
        t.color = a[0].as_string();
    } else if (m == "set_rotation") {
        t.rotation_deg = finite(a[0], "rotation");
    } else if (m == "set_weight") {
        t.weight = weight_arg(a[0]);
    }
}

void apply_legend(LegendNode& l, const Statement& s)
{
    if (s.method == "set_loc_fraction") {
        const double x = finite(s.args[0], "x");
        const double y = finite(s.args[1], "y");
        l.loc = {x, y};
    } else if (s.method == "set_visible") {
        l.visible = s.args[0].as_bool();
    }
}

}  // namespace

std::optional<ObjectPath> apply_change(FigureDoc& doc, const Statement& stmt, const SeriesLoader& loader)
{
    check_signature(stmt);
    const ObjectPath& path = *stmt.path;
    const auto& segs = path.segments();

    // Mutations work on copies of the touched node so a throw leaves doc as is.
    if (segs.empty()) {
        FigureDoc next = doc;
        auto created = apply_figure(next, path, stmt);
        doc = std::move(next);
        return created;
    }
    AxesNode& target_axes = axes_at(doc, path);
    AxesNode ax = target_axes;
    std::optional<ObjectPath> created;
    if (segs.size() == 1) {
        created = apply_axes(ax, path, stmt, loader);
    } else {
        const Segment& s = segs[1];
        if (s.kind == SegmentKind::Texts) {
            apply_text(child_at(ax.texts, s.index, path), stmt);
        } else if (s.kind == SegmentKind::Legend) {
            if (!ax.legend) throw Error(ErrorKind::NoLegend, path.parent().to_text() + " has no legend");
            apply_legend(*ax.legend, stmt);
        }
    }
    target_axes = std::move(ax);
    return created;
}

namespace {

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool near(const std::vector<double>& a, const std::vector<double>& b, double tol)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!near(a[i], b[i], tol)) return false;
    return true;
}

bool near(const Rect& a, const Rect& b, double tol)
{
    return near(a.x, b.x, tol) && near(a.y, b.y, tol) && near(a.w, b.w, tol) && near(a.h, b.h, tol);
}

bool near(const Range& a, const Range& b, double tol) { return near(a.lo, b.lo, tol) && near(a.hi, b.hi, tol); }

bool near(const std::optional<TickSet>& a, const std::optional<TickSet>& b, double tol)
{
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return near(a->locations, b->locations, tol) && a->labels == b->labels;
}

bool near(const TextNode& a, const TextNode& b, double tol)
{
    return near(a.x, b.x, tol) && near(a.y, b.y, tol) && a.content == b.content &&
           near(a.fontsize_pt, b.fontsize_pt, tol) && a.color == b.color &&
           near(a.rotation_deg, b.rotation_deg, tol) && a.weight == b.weight;
}

bool near(const SeriesNode& a, const SeriesNode& b, double tol)
{
    if (a.source != b.source || a.color != b.color || !near(a.linewidth_pt, b.linewidth_pt, tol)) return false;
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        if (!near(a.points[i].x, b.points[i].x, tol) || !near(a.points[i].y, b.points[i].y, tol)) return false;
    return true;
}

bool near(const AxesNode& a, const AxesNode& b, double tol)
{
    if (!near(a.position, b.position, tol) || !near(a.xlim, b.xlim, tol) || !near(a.ylim, b.ylim, tol))
        return false;
    if (a.xlabel != b.xlabel || a.ylabel != b.ylabel || a.title != b.title || a.grid != b.grid) return false;
    if (!near(a.xticks, b.xticks, tol) || !near(a.yticks, b.yticks, tol)) return false;
    if (a.series.size() != b.series.size() || a.texts.size() != b.texts.size()) return false;
    for (std::size_t i = 0; i < a.series.size(); ++i)
        if (!near(a.series[i], b.series[i], tol)) return false;
    for (std::size_t i = 0; i < a.texts.size(); ++i)
        if (!near(a.texts[i], b.texts[i], tol)) return false;
    if (a.legend.has_value() != b.legend.has_value()) return false;
    if (a.legend) {
        if (a.legend->visible != b.legend->visible || !near(a.legend->loc.x, b.legend->loc.x, tol) ||
            !near(a.legend->loc.y, b.legend->loc.y, tol))
            return false;
    }
    return true;
}

}  // namespace

bool approx_equal(const FigureDoc& a, const FigureDoc& b, double tol)
{
    if (a.index != b.index || !near(a.width_cm, b.width_cm, tol) || !near(a.height_cm, b.height_cm, tol) ||
        !near(a.dpi, b.dpi, tol) || a.axes.size() != b.axes.size())
        return false;
    for (std::size_t i = 0; i < a.axes.size(); ++i)
        if (!near(a.axes[i], b.axes[i], tol)) return false;
    return true;
}

}  // namespace figedit
