#include "figedit/path.hpp"

#include "figedit/error.hpp"

#include <cctype>

namespace figedit {

ObjectPath::ObjectPath(std::size_t figure_index, std::vector<Segment> segments)
    : figure_index_(figure_index), segments_(std::move(segments))
{
    validate_shape(figure_index_, segments_);
}

TargetKind ObjectPath::target_kind() const noexcept
{
    if (segments_.empty()) return TargetKind::Figure;
    switch (segments_.back().kind) {
    case SegmentKind::Axes: return TargetKind::Axes;
    case SegmentKind::Texts: return TargetKind::Text;
    case SegmentKind::Lines: return TargetKind::Series;
    case SegmentKind::Legend: return TargetKind::Legend;
    }
    return TargetKind::Figure;
}

ObjectPath ObjectPath::parent() const
{
    ObjectPath p = *this;
    if (!p.segments_.empty()) p.segments_.pop_back();
    return p;
}

ObjectPath ObjectPath::child(Segment s) const
{
    auto segs = segments_;
    segs.push_back(s);
    return ObjectPath(figure_index_, std::move(segs));
}

std::size_t ObjectPath::axes_index() const
{
    if (segments_.empty())
        throw Error(ErrorKind::InvariantViolation, "figure path has no axes index");
    return segments_.front().index;
}

std::string ObjectPath::to_text() const
{
    std::string out = "figure(" + std::to_string(figure_index_) + ")";
    for (const auto& s : segments_) {
        switch (s.kind) {
        case SegmentKind::Axes: out += ".axes[" + std::to_string(s.index) + "]"; break;
        case SegmentKind::Texts: out += ".texts[" + std::to_string(s.index) + "]"; break;
        case SegmentKind::Lines: out += ".lines[" + std::to_string(s.index) + "]"; break;
        case SegmentKind::Legend: out += ".legend"; break;
        }
    }
    return out;
}

void validate_shape(std::size_t figure_index, const std::vector<Segment>& segments)
{
    if (figure_index < 1) throw Error(ErrorKind::SyntaxError, "figure index starts at 1");
    if (segments.empty()) return;
    if (segments.size() > 2)
        throw Error(ErrorKind::SyntaxError, "path is nested too deeply");
    if (segments[0].kind != SegmentKind::Axes)
        throw Error(ErrorKind::SyntaxError, "first path segment must be axes[i]");
    if (segments.size() == 2 && segments[1].kind == SegmentKind::Axes)
        throw Error(ErrorKind::SyntaxError, "axes cannot be nested");
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

[[noreturn]] void fail(std::size_t pos, const std::string& what)
{
    throw Error(ErrorKind::SyntaxError, what, std::nullopt, pos + 1);
}

std::size_t parse_index(std::string_view text, std::size_t& pos)
{
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail(start, "expected an unsigned decimal index");
    if (pos - start > 1 && text[start] == '0') fail(start, "index has a leading zero");
    if (pos - start > 9) fail(start, "index is too large");
    return std::stoul(std::string(text.substr(start, pos - start)));
}

void expect(std::string_view text, std::size_t& pos, char c)
{
    if (pos >= text.size() || text[pos] != c) fail(pos, std::string("expected '") + c + "'");
    ++pos;
}

}  // namespace

namespace detail {

ObjectPath parse_path_prefix(std::string_view text, std::size_t& pos)
{
    constexpr std::string_view root = "figure(";
    if (text.substr(pos, root.size()) != root) fail(pos, "path must start with figure(N)");
    pos += root.size();
    const std::size_t index_pos = pos;
    const std::size_t figure = parse_index(text, pos);
    if (figure < 1) fail(index_pos, "figure index starts at 1");
    expect(text, pos, ')');

    std::vector<Segment> segments;
    while (pos < text.size() && text[pos] == '.') {
        std::size_t p = pos + 1;
        const std::size_t name_start = p;
        if (p >= text.size() || !is_ident_start(text[p])) fail(p, "expected a name after '.'");
        while (p < text.size() && is_ident_char(text[p])) ++p;
        const std::string_view name = text.substr(name_start, p - name_start);
        if (p < text.size() && text[p] == '(') break;  // method call, not ours

        Segment seg;
        if (name == "legend") {
            seg = Segment::legend();
        } else if (name == "axes" || name == "texts" || name == "lines") {
            expect(text, p, '[');
            seg.index = parse_index(text, p);
            expect(text, p, ']');
            seg.kind = name == "axes" ? SegmentKind::Axes
                     : name == "texts" ? SegmentKind::Texts
                                       : SegmentKind::Lines;
        } else {
            fail(name_start, "unknown path segment '" + std::string(name) + "'");
        }
        segments.push_back(seg);
        try {
            validate_shape(figure, segments);
        } catch (const Error& e) {
            fail(name_start, e.message());
        }
        pos = p;
    }
    return ObjectPath(figure, std::move(segments));
}

}  // namespace detail

ObjectPath parse_path(std::string_view text)
{
    std::size_t pos = 0;
    ObjectPath p = detail::parse_path_prefix(text, pos);
    if (pos != text.size()) fail(pos, "trailing characters after path");
    return p;
}

}  // namespace figedit
