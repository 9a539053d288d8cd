#include "figedit/patcher.hpp"

#include "figedit/error.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

namespace figedit {

std::vector<std::string> PatchedScript::block_interior() const
{
    if (!block_span) return {};
    return {raw.begin() + static_cast<std::ptrdiff_t>(block_span->start + 1),
            raw.begin() + static_cast<std::ptrdiff_t>(block_span->end)};
}

PatchedScript scan(std::string_view text)
{
    PatchedScript out;
    std::size_t pos = 0;
    std::size_t crlf = 0;
    std::size_t lf = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view content;
        std::string ending;
        if (nl == std::string_view::npos) {
            content = text.substr(pos);
            pos = text.size();
        } else {
            content = text.substr(pos, nl - pos);
            pos = nl + 1;
            if (!content.empty() && content.back() == '\r') {
                content.remove_suffix(1);
                ending = "\r\n";
                ++crlf;
            } else {
                ending = "\n";
                ++lf;
            }
        }
        out.raw.emplace_back(content);
        out.endings.push_back(std::move(ending));
        out.lines.push_back(parse_line(content));
    }
    out.line_ending = crlf > lf ? "\r\n" : "\n";

    std::optional<std::size_t> start;
    std::optional<std::size_t> end;
    std::optional<std::size_t> marker;
    for (std::size_t i = 0; i < out.lines.size(); ++i) {
        switch (out.lines[i].kind) {
        case LineKind::SentinelStart:
            if (start) throw Error(ErrorKind::MultipleBlocks, "second generated block starts here", i + 1);
            start = i;
            break;
        case LineKind::SentinelEnd:
            if (!start || end) throw Error(ErrorKind::UnpairedSentinel, "end sentinel without a start", i + 1);
            end = i;
            break;
        case LineKind::Marker:
            if (marker)
                out.warnings.push_back("line " + std::to_string(i + 1) + ": extra show() ignored; the block goes before line " +
                                       std::to_string(*marker + 1));
            else
                marker = i;
            break;
        default: break;
        }
    }
    if (start && !end) throw Error(ErrorKind::UnpairedSentinel, "start sentinel without an end", *start + 1);
    if (!marker) throw Error(ErrorKind::NoMarker, "no show() line found");
    out.marker_line = *marker;
    if (start) {
        if (*end >= *marker)
            throw Error(ErrorKind::BlockAfterMarker, "generated block must come before show()", *start + 1);
        out.block_span = BlockSpan{*start, *end};
    }
    return out;
}

std::string splice(const PatchedScript& script, const std::vector<std::string>& block)
{
    std::size_t cut_begin = script.marker_line;
    std::size_t cut_end = script.marker_line;  // exclusive
    if (script.block_span) {
        cut_begin = script.block_span->start;
        cut_end = script.block_span->end + 1;
    }
    std::string out;
    for (std::size_t i = 0; i < cut_begin; ++i) out += script.raw[i] + script.endings[i];
    for (const auto& line : block) out += line + script.line_ending;
    for (std::size_t i = cut_end; i < script.raw.size(); ++i) out += script.raw[i] + script.endings[i];
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::FileNotFound, path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error(ErrorKind::IoError, "short write to " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::IoError, "cannot replace " + path.string());
    }
}

ScriptLock::ScriptLock(const std::filesystem::path& script)
{
    std::filesystem::path lock = script;
    lock += ".lock";
    const int fd = ::open(lock.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) throw Error(ErrorKind::Locked, lock.string() + " exists; another session is editing this script");
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
    lock_path_ = std::move(lock);
}

ScriptLock::~ScriptLock() { release(); }

ScriptLock::ScriptLock(ScriptLock&& other) noexcept : lock_path_(std::move(other.lock_path_))
{
    other.lock_path_.clear();
}

ScriptLock& ScriptLock::operator=(ScriptLock&& other) noexcept
{
    if (this != &other) {
        release();
        lock_path_ = std::move(other.lock_path_);
        other.lock_path_.clear();
    }
    return *this;
}

void ScriptLock::release() noexcept
{
    if (lock_path_.empty()) return;
    std::error_code ec;
    std::filesystem::remove(lock_path_, ec);
    lock_path_.clear();
}

}  // namespace figedit
