#include "figedit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace figedit {

std::string_view to_string(Handle h) noexcept
{
    switch (h) {
    case Handle::N: return "n";
    case Handle::S: return "s";
    case Handle::E: return "e";
    case Handle::W: return "w";
    case Handle::NE: return "ne";
    case Handle::NW: return "nw";
    case Handle::SE: return "se";
    case Handle::SW: return "sw";
    }
    return "?";
}

bool parse_handle(std::string_view text, Handle& out)
{
    for (Handle h : {Handle::N, Handle::S, Handle::E, Handle::W, Handle::NE, Handle::NW, Handle::SE, Handle::SW}) {
        if (to_string(h) == text) {
            out = h;
            return true;
        }
    }
    return false;
}

std::string_view to_string(Orientation o) noexcept
{
    return o == Orientation::Horizontal ? "h" : "v";
}

std::string_view to_string(GuideKind k) noexcept
{
    switch (k) {
    case GuideKind::Edge: return "edge";
    case GuideKind::Center: return "center";
    case GuideKind::SizeMatch: return "size-match";
    }
    return "?";
}

namespace {

enum class Grip { None, Low, High };

Grip grip_for(DragMode mode, Axis axis)
{
    if (mode.kind == DragMode::Kind::Move) return Grip::None;
    switch (mode.handle) {
    case Handle::E: return axis == Axis::X ? Grip::High : Grip::None;
    case Handle::W: return axis == Axis::X ? Grip::Low : Grip::None;
    case Handle::N: return axis == Axis::Y ? Grip::High : Grip::None;
    case Handle::S: return axis == Axis::Y ? Grip::Low : Grip::None;
    case Handle::NE: return axis == Axis::X ? Grip::High : Grip::High;
    case Handle::NW: return axis == Axis::X ? Grip::Low : Grip::High;
    case Handle::SE: return axis == Axis::X ? Grip::High : Grip::Low;
    case Handle::SW: return axis == Axis::X ? Grip::Low : Grip::Low;
    }
    return Grip::None;
}

// One axis of a rect: start coordinate and extent.
struct Span {
    double lo = 0.0;
    double ext = 0.0;
    double center() const { return lo + ext / 2.0; }
    double hi() const { return lo + ext; }
};

Span span_of(const Rect& r, Axis a) { return a == Axis::X ? Span{r.x, r.w} : Span{r.y, r.h}; }

void set_span(Rect& r, Axis a, Span s)
{
    if (a == Axis::X) {
        r.x = s.lo;
        r.w = s.ext;
    } else {
        r.y = s.lo;
        r.h = s.ext;
    }
}

Span resize_low(Span s, double delta)
{
    const double hi = s.hi();
    Span out{s.lo + delta, s.ext - delta};
    if (out.ext < kMinExtent) out = {hi - kMinExtent, kMinExtent};
    return out;
}

Span resize_high(Span s, double delta)
{
    return {s.lo, std::max(s.ext + delta, kMinExtent)};
}

}  // namespace

Rect drag(const Rect& rect, double dx_px, double dy_px, DragMode mode, const ViewTransform& vt)
{
    const double dx = vt.px_to_fraction(Axis::X, dx_px);
    const double dy = -vt.px_to_fraction(Axis::Y, dy_px);  // screen y points down
    Rect out = rect;
    if (mode.kind == DragMode::Kind::Move) {
        out.x += dx;
        out.y += dy;
        return out;
    }
    for (Axis axis : {Axis::X, Axis::Y}) {
        const double delta = axis == Axis::X ? dx : dy;
        const Span s = span_of(rect, axis);
        switch (grip_for(mode, axis)) {
        case Grip::Low: set_span(out, axis, resize_low(s, delta)); break;
        case Grip::High: set_span(out, axis, resize_high(s, delta)); break;
        case Grip::None: break;
        }
    }
    return out;
}

namespace {

constexpr double kExact = 1e-12;
constexpr double kTiePx = 1e-9;

enum class Feature { Low, Center, High };

double feature_value(Span s, Feature f)
{
    switch (f) {
    case Feature::Low: return s.lo;
    case Feature::Center: return s.center();
    case Feature::High: return s.hi();
    }
    return s.lo;
}

struct Candidate {
    double distance_px = 0.0;
    double result_coord = 0.0;
    Span result;
};

void consider(std::optional<Candidate>& best, const Candidate& c, double threshold_px)
{
    if (!(c.distance_px <= threshold_px)) return;
    if (!best || c.distance_px < best->distance_px - kTiePx ||
        (std::fabs(c.distance_px - best->distance_px) <= kTiePx && c.result_coord < best->result_coord))
        best = c;
}

Span snap_axis(Span s, Axis axis, std::span<const Rect> peers, double threshold_px, const ViewTransform& vt,
               Grip grip, bool resizing)
{
    const double px = vt.extent_px(axis);
    std::optional<Candidate> best;
    constexpr Feature features[] = {Feature::Low, Feature::Center, Feature::High};

    for (const Rect& peer_rect : peers) {
        const Span peer = span_of(peer_rect, axis);
        for (Feature pf : features) {
            const double target = feature_value(peer, pf);
            if (!resizing) {
                for (Feature sf : features) {
                    Span moved = s;
                    if (sf == Feature::Low) moved.lo = target;
                    else if (sf == Feature::Center) moved.lo = target - s.ext / 2.0;
                    else moved.lo = target - s.ext;
                    const double d = std::fabs(target - feature_value(s, sf)) * px;
                    consider(best, {d, moved.lo, moved}, threshold_px);
                }
            } else if (grip == Grip::High) {
                const Span r{s.lo, target - s.lo};
                if (r.ext >= kMinExtent) consider(best, {std::fabs(target - s.hi()) * px, target, r}, threshold_px);
            } else if (grip == Grip::Low) {
                const double hi = s.hi();
                const Span r{target, hi - target};
                if (r.ext >= kMinExtent) consider(best, {std::fabs(target - s.lo) * px, target, r}, threshold_px);
            }
        }
        if (resizing && grip != Grip::None && peer.ext >= kMinExtent) {
            const double d = std::fabs(peer.ext - s.ext) * px;
            if (grip == Grip::High) {
                consider(best, {d, s.lo + peer.ext, Span{s.lo, peer.ext}}, threshold_px);
            } else {
                const double lo = s.hi() - peer.ext;
                consider(best, {d, lo, Span{lo, peer.ext}}, threshold_px);
            }
        }
    }
    return best ? best->result : s;
}

}  // namespace

std::vector<Guide> satisfied_guides(const Rect& rect, std::span<const Rect> peers, DragMode mode)
{
    std::vector<Guide> guides;
    const bool resizing = mode.kind == DragMode::Kind::Resize;
    for (Axis axis : {Axis::X, Axis::Y}) {
        const Orientation o = axis == Axis::X ? Orientation::Vertical : Orientation::Horizontal;
        const Span s = span_of(rect, axis);
        const Grip grip = grip_for(mode, axis);
        for (const Rect& peer_rect : peers) {
            const Span peer = span_of(peer_rect, axis);
            for (Feature pf : {Feature::Low, Feature::Center, Feature::High}) {
                for (Feature sf : {Feature::Low, Feature::Center, Feature::High}) {
                    const double pv = feature_value(peer, pf);
                    if (std::fabs(feature_value(s, sf) - pv) > kExact) continue;
                    const bool center = pf == Feature::Center || sf == Feature::Center;
                    guides.push_back({o, pv, center ? GuideKind::Center : GuideKind::Edge});
                }
            }
            if (resizing && grip != Grip::None && std::fabs(peer.ext - s.ext) <= kExact) {
                guides.push_back({o, grip == Grip::High ? s.hi() : s.lo, GuideKind::SizeMatch});
            }
        }
    }
    std::sort(guides.begin(), guides.end(), [](const Guide& a, const Guide& b) {
        if (a.orientation != b.orientation) return a.orientation < b.orientation;
        if (a.position != b.position) return a.position < b.position;
        return a.kind < b.kind;
    });
    guides.erase(std::unique(guides.begin(), guides.end()), guides.end());
    return guides;
}

SnapResult snap(const Rect& rect, std::span<const Rect> peers, double threshold_px, const ViewTransform& vt,
                DragMode mode)
{
    SnapResult out{rect, {}};
    if (peers.empty()) return out;
    const bool resizing = mode.kind == DragMode::Kind::Resize;
    for (Axis axis : {Axis::X, Axis::Y}) {
        const Grip grip = grip_for(mode, axis);
        if (resizing && grip == Grip::None) continue;
        set_span(out.rect, axis, snap_axis(span_of(rect, axis), axis, peers, threshold_px, vt, grip, resizing));
    }
    out.guides = satisfied_guides(out.rect, peers, mode);
    return out;
}

}  // namespace figedit
