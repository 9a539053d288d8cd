#include "figedit/session.hpp"

#include "figedit/error.hpp"
#include "figedit/figscript.hpp"

namespace figedit {

Session::Session(std::filesystem::path script, DataCache cache)
    : script_(std::move(script)), cache_(std::move(cache))
{
}

SeriesLoader Session::loader() const
{
    DataCache cache = cache_;
    return [cache](const DataSource& src) mutable { return cache.series(src); };
}

Session Session::open(const std::filesystem::path& script, SessionOptions options)
{
    const std::filesystem::path path = std::filesystem::absolute(script).lexically_normal();
    std::unique_ptr<ScriptLock> lock;
    if (options.lock) lock = std::make_unique<ScriptLock>(path);

    Session s(path, DataCache(path.parent_path()));
    s.lock_ = std::move(lock);
    const std::string text = read_file(path);
    const PatchedScript ps = scan(text);
    s.scan_warnings_ = ps.warnings;

    const SeriesLoader load = s.loader();
    for (std::size_t i = 0; i < ps.lines.size(); ++i) {
        if (ps.block_span && i >= ps.block_span->start && i <= ps.block_span->end) continue;
        const ScriptLine& line = ps.lines[i];
        if (line.kind != LineKind::Statement) continue;
        if (line.error) throw line.error->at_line(i + 1);
        try {
            apply_change(s.base_, *line.statement, load);
        } catch (const Error& e) {
            throw e.at_line(i + 1);
        }
    }

    std::optional<std::size_t> offset;
    if (ps.block_span) {
        // Block-relative line n is script line start + 1 + n.
        offset = ps.block_span->start + 1;
        try {
            s.tracker_.load(parse_block(ps.block_interior(), &s.base_));
        } catch (const Error& e) {
            throw e.at_line(*offset + e.line().value_or(0));
        }
    }
    s.live_ = s.replay(s.tracker_, offset);
    s.saved_block_ = ps.block_span ? s.tracker_.emit_block() : std::vector<std::string>{};
    s.dirty_ = false;
    return s;
}

FigureDoc Session::replay(const Tracker& tracker, const std::optional<std::size_t>& block_offset) const
{
    FigureDoc doc = base_;
    const SeriesLoader load = loader();
    for (const ChangeRecord* rec : tracker.ordered()) {
        try {
            auto created = apply_change(doc, rec->statement(), load);
            if (rec->creation && created != rec->target_path)
                throw Error(ErrorKind::InvariantViolation,
                            rec->target_command + " would create " + (created ? created->to_text() : "nothing") +
                                ", block expects " + rec->target_path.to_text());
        } catch (const Error& e) {
            if (block_offset && rec->line && rec->origin == Origin::Loaded) throw e.at_line(*block_offset + *rec->line);
            throw;
        }
    }
    return doc;
}

std::optional<ObjectPath> Session::edit(const Statement& stmt)
{
    Statement st = stmt;
    for (auto& a : st.args) a = canonical_literal(a);
    check_signature(st);

    FigureDoc probe = live_;
    auto created = apply_change(probe, st, loader());

    Tracker next = tracker_;
    next.record(make_change(st, created));
    FigureDoc live = replay(next);

    tracker_ = std::move(next);
    live_ = std::move(live);
    dirty_ = tracker_.emit_block() != saved_block_;
    ++revision_;
    return created;
}

std::optional<ObjectPath> Session::edit(std::string_view statement_line)
{
    return edit(parse_statement(statement_line));
}

std::string Session::patched_text() const
{
    return splice(scan(read_file(script_)), tracker_.emit_block());
}

SaveResult Session::save()
{
    const std::string current = read_file(script_);
    const std::vector<std::string> block = tracker_.emit_block();
    const std::string next = splice(scan(current), block);
    SaveResult result{false, script_};
    if (next != current) {
        if (!backed_up_) {
            std::filesystem::path bak = script_;
            bak += ".bak";
            write_atomic(bak, current);
            backed_up_ = true;
        }
        write_atomic(script_, next);
        result.written = true;
    }
    saved_block_ = block;
    dirty_ = false;
    return result;
}

std::vector<std::string> Session::warnings() const
{
    auto out = scan_warnings_;
    for (auto& w : cache_.warnings()) out.push_back(std::move(w));
    return out;
}

}  // namespace figedit
