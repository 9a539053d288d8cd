#pragma once

#include "figedit/change.hpp"
#include "figedit/error.hpp"
#include "figedit/figmodel.hpp"
#include "figedit/statement.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace figedit {

inline constexpr std::string_view kSentinelStart = "#% start: automatic generated code from the figure editor";
inline constexpr std::string_view kSentinelEnd = "#% end: generated code";
inline constexpr std::string_view kMarker = "show()";

enum class LineKind { Statement, Comment, Blank, Marker, SentinelStart, SentinelEnd };

std::string_view to_string(LineKind kind) noexcept;

/// A classified script line. Statement lines carry either the parsed
/// statement or the syntax error that stopped the parse.
struct ScriptLine {
    LineKind kind = LineKind::Blank;
    std::string text;
    std::optional<Statement> statement;
    std::optional<Error> error;
};

/// Total classification; never throws. A trailing '\r' is ignored.
ScriptLine parse_line(std::string_view line);

/// Parses one statement line. Throws SyntaxError with a 1-based column.
Statement parse_statement(std::string_view line);

/// `method(args)` with canonical literals.
std::string command_text(std::string_view method, const std::vector<Literal>& args);

/// Canonical statement text for a change: `path.method(args)`.
std::string emit_statement(const ChangeRecord& change);
std::string emit_statement(const Statement& stmt);

/// Parses the interior of a generated block into change records. Creation
/// targets are numbered by replaying creations per parent, starting from
/// the child counts of `base` when given (otherwise from zero). Errors carry
/// the 1-based line within `lines`.
std::vector<ChangeRecord> parse_block(const std::vector<std::string>& lines, const FigureDoc* base = nullptr);

}  // namespace figedit
