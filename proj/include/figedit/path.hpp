#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace figedit {

enum class SegmentKind { Axes, Texts, Lines, Legend };

struct Segment {
    SegmentKind kind = SegmentKind::Axes;
    std::size_t index = 0;  // unused for Legend

    static Segment axes(std::size_t i) { return {SegmentKind::Axes, i}; }
    static Segment texts(std::size_t i) { return {SegmentKind::Texts, i}; }
    static Segment lines(std::size_t i) { return {SegmentKind::Lines, i}; }
    static Segment legend() { return {SegmentKind::Legend, 0}; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// What an object path addresses, derived from its shape alone.
enum class TargetKind { Figure, Axes, Text, Series, Legend };

/// Canonical address of a figure element: `figure(N)` followed by
/// `axes[i]` and then at most one of `texts[j]`, `lines[k]` or `legend`.
/// Figure numbers start at 1, child indices at 0.
class ObjectPath {
public:
    ObjectPath() = default;
    explicit ObjectPath(std::size_t figure_index, std::vector<Segment> segments = {});

    std::size_t figure_index() const noexcept { return figure_index_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }

    TargetKind target_kind() const noexcept;

    /// Path of the owning element; the figure path is its own parent.
    ObjectPath parent() const;
    ObjectPath child(Segment s) const;

    /// Axes index of paths below figure level.
    std::size_t axes_index() const;

    std::string to_text() const;

    friend bool operator==(const ObjectPath&, const ObjectPath&) = default;

private:
    std::size_t figure_index_ = 1;
    std::vector<Segment> segments_;
};

/// Parses the canonical text form. Throws Error(SyntaxError) with a 1-based
/// column on malformed input.
ObjectPath parse_path(std::string_view text);

/// Throws Error(SyntaxError) if the segment sequence is not a valid shape.
void validate_shape(std::size_t figure_index, const std::vector<Segment>& segments);

namespace detail {

/// Parses `figure(N)` and any following `.segment` parts starting at `pos`.
/// Stops (without consuming) at a `.name(` method call or at the first
/// character that cannot continue a path. Column numbers in errors are
/// `pos`-relative to the start of `text`.
ObjectPath parse_path_prefix(std::string_view text, std::size_t& pos);

}  // namespace detail

}  // namespace figedit
