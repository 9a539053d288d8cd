#pragma once

#include "figedit/figscript.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace figedit {

/// Inclusive, 0-based line range of the generated block (sentinels included).
struct BlockSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    friend bool operator==(const BlockSpan&, const BlockSpan&) = default;
};

/// A scanned user script. Each line keeps its own terminator so splicing
/// can reproduce untouched bytes exactly.
struct PatchedScript {
    std::vector<ScriptLine> lines;
    std::vector<std::string> raw;      // line content as in the file, minus terminator
    std::vector<std::string> endings;  // "\n", "\r\n" or "" (last line only)
    std::optional<BlockSpan> block_span;
    std::size_t marker_line = 0;
    std::string line_ending = "\n";  // dominant terminator, used for new lines
    std::vector<std::string> warnings;

    /// Lines strictly between the sentinels, or empty when there is no block.
    std::vector<std::string> block_interior() const;
};

/// Finds the first `show()` marker and the generated block. Throws NoMarker,
/// UnpairedSentinel, MultipleBlocks or BlockAfterMarker with a 1-based line.
PatchedScript scan(std::string_view script_text);

/// Replaces the existing block with `block`, or inserts it directly before
/// the marker. Every other byte of the script is kept.
std::string splice(const PatchedScript& script, const std::vector<std::string>& block);

/// Writes via a sibling temporary file and rename, so the target is either
/// the old or the new content.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Advisory `<script>.lock` file held for the lifetime of an editing
/// session. Throws Locked if another session holds it.
class ScriptLock {
public:
    explicit ScriptLock(const std::filesystem::path& script);
    ~ScriptLock();
    ScriptLock(ScriptLock&& other) noexcept;
    ScriptLock& operator=(ScriptLock&& other) noexcept;
    ScriptLock(const ScriptLock&) = delete;
    ScriptLock& operator=(const ScriptLock&) = delete;

    const std::filesystem::path& path() const noexcept { return lock_path_; }

private:
    void release() noexcept;
    std::filesystem::path lock_path_;
};

}  // namespace figedit
