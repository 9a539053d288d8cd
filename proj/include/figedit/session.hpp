#pragma once

#include "figedit/figmodel.hpp"
#include "figedit/ingest.hpp"
#include "figedit/patcher.hpp"
#include "figedit/tracker.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace figedit {

struct SessionOptions {
    /// Hold `<script>.lock` while the session lives.
    bool lock = false;
};

struct SaveResult {
    bool written = false;
    std::filesystem::path path;
};

/// An editing session on one script. The base document is the script
/// without its generated block; the live document is the base with every
/// tracked change replayed in emission order. Failed operations leave the
/// session and the file untouched.
class Session {
public:
    /// Throws the first SyntaxError / scan / apply error, located at its
    /// 1-based line in the script.
    static Session open(const std::filesystem::path& script, SessionOptions options = {});

    /// Applies and records one statement. Real arguments are first rounded
    /// to their canonical text so the live document matches what a save
    /// writes. Returns the created child path for creation methods.
    std::optional<ObjectPath> edit(const Statement& stmt);
    std::optional<ObjectPath> edit(std::string_view statement_line);

    /// Splices the current block into the script on disk. Writes nothing
    /// (written == false) when the bytes would not change. The first write
    /// of a session keeps the previous content in `<script>.bak`.
    SaveResult save();

    /// The script text a save would produce right now.
    std::string patched_text() const;

    const std::filesystem::path& script_path() const noexcept { return script_; }
    const FigureDoc& base_doc() const noexcept { return base_; }
    const FigureDoc& live_doc() const noexcept { return live_; }
    const Tracker& tracker() const noexcept { return tracker_; }
    bool dirty() const noexcept { return dirty_; }
    std::uint64_t revision() const noexcept { return revision_; }
    std::vector<std::string> warnings() const;

private:
    Session(std::filesystem::path script, DataCache cache);

    FigureDoc replay(const Tracker& tracker, const std::optional<std::size_t>& block_offset = {}) const;
    SeriesLoader loader() const;

    std::filesystem::path script_;
    DataCache cache_;
    FigureDoc base_;
    FigureDoc live_;
    Tracker tracker_;
    std::vector<std::string> saved_block_;
    std::vector<std::string> scan_warnings_;
    bool dirty_ = false;
    bool backed_up_ = false;
    std::uint64_t revision_ = 0;
    std::unique_ptr<ScriptLock> lock_;
};

}  // namespace figedit
