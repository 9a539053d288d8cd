#include "figedit/error.hpp"

namespace figedit {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownMethod: return "UnknownMethod";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::PathOutOfRange: return "PathOutOfRange";
    case ErrorKind::NoSuchFigure: return "NoSuchFigure";
    case ErrorKind::NoLegend: return "NoLegend";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::ElementNotInDoc: return "ElementNotInDoc";
    case ErrorKind::DuplicateKeyInBlock: return "DuplicateKeyInBlock";
    case ErrorKind::NoMarker: return "NoMarker";
    case ErrorKind::UnpairedSentinel: return "UnpairedSentinel";
    case ErrorKind::MultipleBlocks: return "MultipleBlocks";
    case ErrorKind::BlockAfterMarker: return "BlockAfterMarker";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::DuplicateColumn: return "DuplicateColumn";
    case ErrorKind::NoSuchColumn: return "NoSuchColumn";
    case ErrorKind::DegenerateRange: return "DegenerateRange";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Locked: return "Locked";
    }
    return "Error";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message,
                    std::optional<std::size_t> line, std::optional<std::size_t> column)
{
    std::string out;
    if (line) {
        out += "line " + std::to_string(*line);
        if (column) out += ", column " + std::to_string(*column);
        out += ": ";
    } else if (column) {
        out += "column " + std::to_string(*column) + ": ";
    }
    out += to_string(kind);
    if (!message.empty()) out += ": " + message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> line,
             std::optional<std::size_t> column)
    : std::runtime_error(compose(kind, message, line, column)),
      kind_(kind),
      message_(message),
      line_(line),
      column_(column)
{
}

Error Error::at_line(std::size_t line) const
{
    return Error(kind_, message_, line, column_);
}

}  // namespace figedit
