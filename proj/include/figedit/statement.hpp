#pragma once

#include "figedit/path.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace figedit {

/// A literal argument: real, integer, string, boolean or list of literals.
struct Literal {
    using List = std::vector<Literal>;
    std::variant<double, std::int64_t, std::string, bool, List> value;

    Literal() : value(0.0) {}
    Literal(double v) : value(v) {}
    Literal(int v) : value(static_cast<std::int64_t>(v)) {}
    Literal(std::int64_t v) : value(v) {}
    Literal(std::string v) : value(std::move(v)) {}
    Literal(const char* v) : value(std::string(v)) {}
    Literal(bool v) : value(v) {}
    Literal(List v) : value(std::move(v)) {}

    bool is_number() const noexcept;
    bool is_string() const noexcept { return std::holds_alternative<std::string>(value); }
    bool is_bool() const noexcept { return std::holds_alternative<bool>(value); }
    bool is_list() const noexcept { return std::holds_alternative<List>(value); }

    /// Integers widen to reals.
    double as_real() const;
    const std::string& as_string() const;
    bool as_bool() const;
    const List& as_list() const;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Canonical real text: shortest round-trip decimal, at most 6 fractional
/// digits, fixed notation for |v| in [1e-4, 1e7) and exponent form
/// otherwise. Always carries a '.' or an exponent so it re-reads as a real.
std::string format_real(double v);

/// Canonical literal text; lists use ", " separators.
std::string format_literal(const Literal& lit);

/// The literal as it reads back after canonical formatting. Reals are
/// rounded to what format_real emits; everything else is unchanged.
Literal canonical_literal(const Literal& lit);

/// One parsed statement: `path.method(args)`, or `method(args)` for bare
/// calls (path is empty).
struct Statement {
    std::optional<ObjectPath> path;
    std::string method;
    std::vector<Literal> args;
    std::string raw_line;

    bool same_call(const Statement& o) const
    {
        return path == o.path && method == o.method && args == o.args;
    }
};

enum class ArgType { Real, String, Bool, RealList, StringList, Rect };

/// One entry of the closed core method whitelist.
struct MethodSpec {
    TargetKind target;
    std::string_view name;
    std::vector<ArgType> params;
    /// Kind of child a creation method appends; empty for property methods.
    std::optional<SegmentKind> creates;
};

std::span<const MethodSpec> core_methods();

const MethodSpec* find_method(TargetKind target, std::string_view name);

/// Throws UnknownMethod, ArityMismatch or TypeMismatch.
const MethodSpec& check_signature(const Statement& stmt);

std::string_view to_string(TargetKind kind) noexcept;

}  // namespace figedit
