#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace figedit {

enum class ErrorKind {
    SyntaxError,
    UnknownMethod,
    ArityMismatch,
    TypeMismatch,
    PathOutOfRange,
    NoSuchFigure,
    NoLegend,
    InvariantViolation,
    ElementNotInDoc,
    DuplicateKeyInBlock,
    NoMarker,
    UnpairedSentinel,
    MultipleBlocks,
    BlockAfterMarker,
    FileNotFound,
    EmptyFile,
    RaggedRows,
    DuplicateColumn,
    NoSuchColumn,
    DegenerateRange,
    IoError,
    Locked,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported as a figedit::Error. Line and
/// column are 1-based when present.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<std::size_t> line = std::nullopt,
          std::optional<std::size_t> column = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    std::optional<std::size_t> column() const noexcept { return column_; }

    /// Copy of this error located at `line` (columns are kept).
    Error at_line(std::size_t line) const;

private:
    ErrorKind kind_;
    std::string message_;
    std::optional<std::size_t> line_;
    std::optional<std::size_t> column_;
};

}  // namespace figedit
