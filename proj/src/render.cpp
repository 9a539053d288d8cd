#include "figedit/render.hpp"

#include "figedit/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace figedit {

namespace {

constexpr double kGlyphAdvanceEm = 0.6;
constexpr double kTickLabelPt = 8.0;
constexpr double kAxisLabelPt = 10.0;
constexpr double kTitlePt = 12.0;
constexpr double kLegendPt = 9.0;
constexpr double kTickLengthPt = 3.5;
constexpr double kFontAscent = 0.8;  // of the em, above the baseline

double pt_to_px(const FigureDoc& doc, double pt) { return pt / 72.0 * doc.dpi; }

std::size_t code_points(std::string_view s)
{
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string tick_label(double v)
{
    if (std::fabs(v) < 1e-12) return "0";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
    return std::string(buf.data(), res.ptr);
}

// Maps data coordinates into an axes box.
struct DataFrame {
    PixelBox box;
    Range xlim;
    Range ylim;

    double px(double x) const { return box.x + (x - xlim.lo) / (xlim.hi - xlim.lo) * box.w; }
    double py(double y) const { return box.y + box.h - (y - ylim.lo) / (ylim.hi - ylim.lo) * box.h; }
};

struct Vec {
    double x;
    double y;
    friend bool operator==(const Vec&, const Vec&) = default;
};

// Cohen–Sutherland clipping against an inclusive box.
enum : unsigned { kInside = 0, kLeft = 1, kRight = 2, kTop = 4, kBottom = 8 };

unsigned outcode(const PixelBox& b, Vec p)
{
    unsigned c = kInside;
    if (p.x < b.x) c |= kLeft;
    else if (p.x > b.x + b.w) c |= kRight;
    if (p.y < b.y) c |= kTop;
    else if (p.y > b.y + b.h) c |= kBottom;
    return c;
}

bool clip_segment(const PixelBox& b, Vec& p0, Vec& p1)
{
    unsigned c0 = outcode(b, p0);
    unsigned c1 = outcode(b, p1);
    for (;;) {
        if (!(c0 | c1)) return true;
        if (c0 & c1) return false;
        const unsigned out = c0 ? c0 : c1;
        Vec p{};
        if (out & kTop) {
            p = {p0.x + (p1.x - p0.x) * (b.y - p0.y) / (p1.y - p0.y), b.y};
        } else if (out & kBottom) {
            p = {p0.x + (p1.x - p0.x) * (b.y + b.h - p0.y) / (p1.y - p0.y), b.y + b.h};
        } else if (out & kRight) {
            p = {b.x + b.w, p0.y + (p1.y - p0.y) * (b.x + b.w - p0.x) / (p1.x - p0.x)};
        } else {
            p = {b.x, p0.y + (p1.y - p0.y) * (b.x - p0.x) / (p1.x - p0.x)};
        }
        if (out == c0) {
            p0 = p;
            c0 = outcode(b, p0);
        } else {
            p1 = p;
            c1 = outcode(b, p1);
        }
    }
}

// Clipped polylines of a series: consecutive visible segments are joined.
std::vector<std::vector<Vec>> clip_polyline(const PixelBox& box, const std::vector<Vec>& pts)
{
    std::vector<std::vector<Vec>> runs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Vec a = pts[i];
        Vec b = pts[i + 1];
        if (!clip_segment(box, a, b)) continue;
        if (!runs.empty() && runs.back().back() == a && a == pts[i]) {
            runs.back().push_back(b);
        } else {
            runs.push_back({a, b});
        }
    }
    return runs;
}

PixelBox bounds_of(const std::vector<Vec>& corners)
{
    double x0 = corners.front().x, x1 = x0, y0 = corners.front().y, y1 = y0;
    for (const auto& c : corners) {
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, c.y);
        y1 = std::max(y1, c.y);
    }
    return {x0, y0, x1 - x0, y1 - y0};
}

struct TickMark {
    double value;
    std::string label;
};

std::vector<TickMark> ticks_for(const std::optional<TickSet>& set, const Range& lim)
{
    const double lo = std::min(lim.lo, lim.hi);
    const double hi = std::max(lim.lo, lim.hi);
    std::vector<TickMark> out;
    if (set) {
        for (std::size_t i = 0; i < set->locations.size(); ++i) {
            const double v = set->locations[i];
            if (v < lo || v > hi) continue;
            out.push_back({v, set->labels ? (*set->labels)[i] : tick_label(v)});
        }
        return out;
    }
    for (double v : default_ticks(lo, hi)) out.push_back({v, tick_label(v)});
    return out;
}

std::string attr(std::string_view name, double v)
{
    return std::string(" ") + std::string(name) + "=\"" + format_coord(v) + "\"";
}

std::string text_element(std::string_view id, double x, double y, double size_px, std::string_view color,
                         std::string_view anchor, double rotation_deg, bool bold, std::string_view content)
{
    std::string s = "<text";
    if (!id.empty()) s += " id=\"" + xml_escape(id) + "\"";
    s += attr("x", x) + attr("y", y) + " font-family=\"monospace\"" + attr("font-size", size_px);
    s += " fill=\"" + std::string(color) + "\"";
    if (anchor != "start") s += " text-anchor=\"" + std::string(anchor) + "\"";
    if (bold) s += " font-weight=\"bold\"";
    if (rotation_deg != 0.0)
        s += " transform=\"rotate(" + format_coord(-rotation_deg) + " " + format_coord(x) + " " + format_coord(y) + ")\"";
    s += ">" + xml_escape(content) + "</text>\n";
    return s;
}

std::string line_element(double x1, double y1, double x2, double y2, std::string_view stroke, double width)
{
    return "<line" + attr("x1", x1) + attr("y1", y1) + attr("x2", x2) + attr("y2", y2) + " stroke=\"" +
           std::string(stroke) + "\"" + attr("stroke-width", width) + "/>\n";
}

std::string polyline_element(const std::vector<Vec>& run, std::string_view stroke, double width)
{
    std::string pts;
    for (std::size_t i = 0; i < run.size(); ++i) {
        if (i) pts += ' ';
        pts += format_coord(run[i].x) + "," + format_coord(run[i].y);
    }
    return "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + std::string(stroke) + "\"" +
           attr("stroke-width", width) + "/>\n";
}

std::string rect_element(const PixelBox& b, std::string_view fill, std::string_view stroke, double stroke_width)
{
    std::string s = "<rect" + attr("x", b.x) + attr("y", b.y) + attr("width", b.w) + attr("height", b.h) +
                    " fill=\"" + std::string(fill) + "\"";
    if (!stroke.empty()) s += " stroke=\"" + std::string(stroke) + "\"" + attr("stroke-width", stroke_width);
    return s + "/>\n";
}

// Legend row metrics, in pixels.
struct LegendLayout {
    double font_px;
    double pad;
    double sample;
    double gap;
    double row;
};

LegendLayout legend_layout(const FigureDoc& doc)
{
    const double f = pt_to_px(doc, kLegendPt);
    return {f, 0.5 * f, 2.0 * f, 0.5 * f, 1.4 * f};
}

std::string legend_label(const SeriesNode& s) { return s.source.ycol; }

}  // namespace

std::string format_coord(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    std::string s(buf.data(), res.ptr);
    if (s == "-0.00") s = "0.00";
    return s;
}

double text_width_px(std::string_view utf8, double font_px)
{
    return static_cast<double>(code_points(utf8)) * kGlyphAdvanceEm * font_px;
}

std::vector<double> default_ticks(double lo, double hi)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw Error(ErrorKind::DegenerateRange, "tick range needs lo < hi");
    const double raw = (hi - lo) / 4.0;
    int k = static_cast<int>(std::floor(std::log10(raw)));
    auto scaled = [](double m, int e) { return e >= 0 ? m * std::pow(10.0, e) : m / std::pow(10.0, -e); };
    if (scaled(10.0, k) <= raw) ++k;

    double best_m = 1.0;
    double best_err = std::fabs(scaled(1.0, k) - raw);
    for (double m : {2.0, 5.0, 10.0}) {
        const double err = std::fabs(scaled(m, k) - raw);
        if (err < best_err - 1e-12 * raw) {
            best_err = err;
            best_m = m;
        }
    }
    const double step = scaled(best_m, k);
    const double first = std::ceil(lo / step - 1e-9);
    const double last = std::floor(hi / step + 1e-9);
    std::vector<double> out;
    for (double i = first; i <= last; i += 1.0) {
        double v = scaled(i * best_m, k);
        if (v == 0.0) v = 0.0;  // no negative zero
        if (v >= lo && v <= hi) out.push_back(v);
    }
    return out;
}

PixelBox axes_box(const FigureDoc& doc, std::size_t i)
{
    const ViewTransform vt = ViewTransform::of(doc);
    const Rect& r = doc.axes.at(i).position;
    return {r.x * vt.width_px(), (1.0 - r.y - r.h) * vt.height_px(), r.w * vt.width_px(), r.h * vt.height_px()};
}

PixelBox legend_box(const FigureDoc& doc, std::size_t i)
{
    const AxesNode& ax = doc.axes.at(i);
    const PixelBox ab = axes_box(doc, i);
    const LegendLayout L = legend_layout(doc);
    double label_w = 0.0;
    for (const auto& s : ax.series) label_w = std::max(label_w, text_width_px(legend_label(s), L.font_px));
    const std::size_t rows = std::max<std::size_t>(1, ax.series.size());
    const double w = 2.0 * L.pad + L.sample + L.gap + label_w;
    const double h = 2.0 * L.pad + static_cast<double>(rows) * L.row;
    const LegendNode legend = ax.legend.value_or(LegendNode{});
    const double left = ab.x + legend.loc.x * ab.w;
    const double bottom = ab.y + ab.h - legend.loc.y * ab.h;
    return {left, bottom - h, w, h};
}

PixelBox text_box(const FigureDoc& doc, std::size_t i, std::size_t j)
{
    const PixelBox ab = axes_box(doc, i);
    const TextNode& t = doc.axes.at(i).texts.at(j);
    const double size = pt_to_px(doc, t.fontsize_pt);
    const double ax = ab.x + t.x * ab.w;
    const double ay = ab.y + ab.h - t.y * ab.h;
    const double w = text_width_px(t.content, size);
    const double top = -kFontAscent * size;
    const double bottom = (1.0 - kFontAscent) * size;
    const double theta = t.rotation_deg * M_PI / 180.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<Vec> corners;
    for (Vec d : {Vec{0, top}, Vec{w, top}, Vec{w, bottom}, Vec{0, bottom}}) {
        // Counter-clockwise on screen, where y points down.
        corners.push_back({ax + d.x * c + d.y * s, ay - d.x * s + d.y * c});
    }
    return bounds_of(corners);
}

RenderOutput render(const FigureDoc& doc)
{
    const ViewTransform vt = ViewTransform::of(doc);
    const double W = vt.width_px();
    const double H = vt.height_px();
    RenderOutput out;
    std::string& svg = out.svg_text;

    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"" + attr("width", W) + attr("height", H) +
           " viewBox=\"0.00 0.00 " + format_coord(W) + " " + format_coord(H) + "\">\n";
    svg += "<g id=\"" + ObjectPath(doc.index).to_text() + "\">\n";
    svg += rect_element({0, 0, W, H}, "#ffffff", "", 0);

    const double tick_len = pt_to_px(doc, kTickLengthPt);
    const double tick_font = pt_to_px(doc, kTickLabelPt);
    const double label_font = pt_to_px(doc, kAxisLabelPt);
    const double title_font = pt_to_px(doc, kTitlePt);
    const double thin = pt_to_px(doc, 0.8);

    for (std::size_t i = 0; i < doc.axes.size(); ++i) {
        const AxesNode& ax = doc.axes[i];
        const ObjectPath ap = ObjectPath(doc.index).child(Segment::axes(i));
        const PixelBox box = axes_box(doc, i);
        const DataFrame frame{box, ax.xlim, ax.ylim};
        out.element_index.push_back({ap, box});

        svg += "<g id=\"" + ap.to_text() + "\">\n";
        svg += rect_element(box, "#ffffff", "", 0);

        const auto xt = ticks_for(ax.xticks, ax.xlim);
        const auto yt = ticks_for(ax.yticks, ax.ylim);
        if (ax.grid) {
            for (const auto& t : xt) svg += line_element(frame.px(t.value), box.y, frame.px(t.value), box.y + box.h, "#b0b0b0", thin);
            for (const auto& t : yt) svg += line_element(box.x, frame.py(t.value), box.x + box.w, frame.py(t.value), "#b0b0b0", thin);
        }

        for (std::size_t k = 0; k < ax.series.size(); ++k) {
            const SeriesNode& s = ax.series[k];
            const ObjectPath sp = ap.child(Segment::lines(k));
            std::vector<Vec> pts;
            pts.reserve(s.points.size());
            for (const auto& p : s.points) pts.push_back({frame.px(p.x), frame.py(p.y)});
            const auto runs = clip_polyline(box, pts);
            std::vector<Vec> all;
            for (const auto& r : runs) all.insert(all.end(), r.begin(), r.end());
            out.element_index.push_back({sp, all.empty() ? PixelBox{box.x, box.y, 0, 0} : bounds_of(all)});
            svg += "<g id=\"" + sp.to_text() + "\">\n";
            for (const auto& r : runs) svg += polyline_element(r, s.color, pt_to_px(doc, s.linewidth_pt));
            svg += "</g>\n";
        }

        svg += rect_element(box, "none", "#000000", thin);

        const double bottom = box.y + box.h;
        for (const auto& t : xt) {
            const double x = frame.px(t.value);
            svg += line_element(x, bottom, x, bottom + tick_len, "#000000", thin);
            svg += text_element("", x, bottom + tick_len + tick_font, tick_font, "#000000", "middle", 0, false, t.label);
        }
        double widest_y_label = 0.0;
        for (const auto& t : yt) {
            const double y = frame.py(t.value);
            svg += line_element(box.x - tick_len, y, box.x, y, "#000000", thin);
            svg += text_element("", box.x - 2 * tick_len, y + 0.35 * tick_font, tick_font, "#000000", "end", 0, false,
                                t.label);
            widest_y_label = std::max(widest_y_label, text_width_px(t.label, tick_font));
        }
        if (!ax.xlabel.empty())
            svg += text_element("", box.x + box.w / 2, bottom + tick_len + tick_font + 1.4 * label_font, label_font,
                                "#000000", "middle", 0, false, ax.xlabel);
        if (!ax.ylabel.empty())
            svg += text_element("", box.x - 2 * tick_len - widest_y_label - 0.6 * label_font, box.y + box.h / 2,
                                label_font, "#000000", "middle", 90, false, ax.ylabel);
        if (!ax.title.empty())
            svg += text_element("", box.x + box.w / 2, box.y - 0.5 * title_font, title_font, "#000000", "middle", 0,
                                false, ax.title);

        for (std::size_t j = 0; j < ax.texts.size(); ++j) {
            const TextNode& t = ax.texts[j];
            const ObjectPath tp = ap.child(Segment::texts(j));
            const double x = box.x + t.x * box.w;
            const double y = box.y + box.h - t.y * box.h;
            svg += text_element(tp.to_text(), x, y, pt_to_px(doc, t.fontsize_pt), t.color, "start", t.rotation_deg,
                                t.weight == FontWeight::Bold, t.content);
            out.element_index.push_back({tp, text_box(doc, i, j)});
        }

        if (ax.legend && ax.legend->visible) {
            const ObjectPath lp = ap.child(Segment::legend());
            const PixelBox lb = legend_box(doc, i);
            const LegendLayout L = legend_layout(doc);
            out.element_index.push_back({lp, lb});
            svg += "<g id=\"" + lp.to_text() + "\">\n";
            svg += rect_element(lb, "#ffffff", "#cccccc", thin);
            for (std::size_t k = 0; k < ax.series.size(); ++k) {
                const SeriesNode& s = ax.series[k];
                const double cy = lb.y + L.pad + (static_cast<double>(k) + 0.5) * L.row;
                const double sx = lb.x + L.pad;
                svg += line_element(sx, cy, sx + L.sample, cy, s.color, pt_to_px(doc, s.linewidth_pt));
                svg += text_element("", sx + L.sample + L.gap, cy + 0.35 * L.font_px, L.font_px, "#000000", "start", 0,
                                    false, legend_label(s));
            }
            svg += "</g>\n";
        }
        svg += "</g>\n";
    }
    svg += "</g>\n</svg>\n";
    return out;
}

std::optional<ObjectPath> hit_test(const RenderOutput& out, double x_px, double y_px)
{
    auto rank = [](const ObjectPath& p) {
        switch (p.target_kind()) {
        case TargetKind::Text: return 3;
        case TargetKind::Legend: return 2;
        case TargetKind::Axes: return 1;
        default: return 0;
        }
    };
    const IndexedElement* best = nullptr;
    for (const auto& e : out.element_index) {
        const int r = rank(e.path);
        if (r == 0 || !e.box.contains(x_px, y_px)) continue;
        if (!best || r >= rank(best->path)) best = &e;
    }
    if (!best) return std::nullopt;
    return best->path;
}

}  // namespace figedit
