#include "figedit/figscript.hpp"

#include <charconv>
#include <cmath>
#include <map>

namespace figedit {

std::string_view to_string(LineKind kind) noexcept
{
    switch (kind) {
    case LineKind::Statement: return "statement";
    case LineKind::Comment: return "comment";
    case LineKind::Blank: return "blank";
    case LineKind::Marker: return "marker";
    case LineKind::SentinelStart: return "sentinel_start";
    case LineKind::SentinelEnd: return "sentinel_end";
    }
    return "unknown";
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string_view strip_cr(std::string_view line)
{
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

class StatementParser {
public:
    explicit StatementParser(std::string_view text) : text_(text) {}

    Statement parse()
    {
        Statement st;
        st.raw_line = std::string(text_);
        skip_space();
        if (text_.substr(pos_, 7) == "figure(") {
            st.path = detail::parse_path_prefix(text_, pos_);
            if (!eat('.')) fail(pos_, "expected '.method(...)' after the path");
        }
        st.method = identifier();
        if (!eat('(')) fail(pos_, "expected '(' after method name");
        skip_space();
        if (!eat(')')) {
            for (;;) {
                st.args.push_back(literal());
                skip_space();
                if (eat(')')) break;
                if (!eat(',')) fail(pos_, pos_ >= text_.size() ? "missing ')'" : "expected ',' or ')'");
                skip_space();
            }
        }
        skip_space();
        if (pos_ != text_.size()) fail(pos_, "unexpected text after statement");
        return st;
    }

private:
    [[noreturn]] void fail(std::size_t pos, const std::string& what) const
    {
        throw Error(ErrorKind::SyntaxError, what, std::nullopt, pos + 1);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    bool eat(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string identifier()
    {
        const std::size_t start = pos_;
        if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail(pos_, "expected a method name");
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Literal literal()
    {
        if (pos_ >= text_.size()) fail(pos_, "missing ')'");
        const char c = text_[pos_];
        if (c == '"') return string_literal();
        if (c == '[') return list_literal();
        if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) return number_literal();
        if (is_ident_start(c)) {
            const std::size_t start = pos_;
            const std::string word = identifier();
            if (word == "true") return Literal(true);
            if (word == "false") return Literal(false);
            fail(start, "unknown literal '" + word + "'");
        }
        fail(pos_, "expected a literal");
    }

    Literal string_literal()
    {
        const std::size_t start = pos_++;
        std::string out;
        while (pos_ < text_.size()) {
            const char c = text_[pos_++];
            if (c == '"') return Literal(std::move(out));
            if (c == '\\') {
                if (pos_ >= text_.size()) break;
                const char e = text_[pos_];
                if (e != '"' && e != '\\') fail(pos_ - 1, "unsupported escape sequence");
                out += e;
                ++pos_;
            } else {
                out += c;
            }
        }
        fail(start, "unterminated string");
    }

    Literal list_literal()
    {
        ++pos_;
        Literal::List items;
        skip_space();
        if (eat(']')) return Literal(std::move(items));
        for (;;) {
            items.push_back(literal());
            skip_space();
            if (eat(']')) return Literal(std::move(items));
            if (!eat(',')) fail(pos_, "expected ',' or ']'");
            skip_space();
        }
    }

    Literal number_literal()
    {
        const std::size_t start = pos_;
        if (text_[pos_] == '-') ++pos_;
        bool real = false;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '.') {
                real = true;
                ++pos_;
            } else if (c == 'e' || c == 'E') {
                real = true;
                ++pos_;
                if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
            } else {
                break;
            }
        }
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        if (real) {
            double v = 0.0;
            auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) fail(start, "malformed real number");
            return Literal(v);
        }
        std::int64_t v = 0;
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) fail(start, "malformed integer");
        return Literal(v);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Statement parse_statement(std::string_view line)
{
    return StatementParser(strip_cr(line)).parse();
}

ScriptLine parse_line(std::string_view line)
{
    line = strip_cr(line);
    ScriptLine out;
    out.text = std::string(line);
    std::string_view lead = line;
    while (!lead.empty() && is_space(lead.front())) lead.remove_prefix(1);

    if (lead.starts_with("#% start:")) {
        out.kind = LineKind::SentinelStart;
    } else if (lead.starts_with("#% end:")) {
        out.kind = LineKind::SentinelEnd;
    } else if (trim(line) == kMarker) {
        out.kind = LineKind::Marker;
    } else if (lead.starts_with('#')) {
        out.kind = LineKind::Comment;
    } else if (lead.empty()) {
        out.kind = LineKind::Blank;
    } else {
        out.kind = LineKind::Statement;
        try {
            out.statement = StatementParser(line).parse();
        } catch (const Error& e) {
            out.error = e;
        }
    }
    return out;
}

std::string command_text(std::string_view method, const std::vector<Literal>& args)
{
    std::string out(method);
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += format_literal(args[i]);
    }
    out += ')';
    return out;
}

std::string emit_statement(const ChangeRecord& change)
{
    return change.command_path.to_text() + "." + command_text(change.target_command, change.args);
}

std::string emit_statement(const Statement& stmt)
{
    std::string out;
    if (stmt.path) out = stmt.path->to_text() + ".";
    return out + command_text(stmt.method, stmt.args);
}

Statement ChangeRecord::statement() const
{
    Statement st;
    st.path = command_path;
    st.method = target_command;
    st.args = args;
    st.raw_line = command_path.to_text() + "." + command_text;
    return st;
}

ChangeRecord make_change(const Statement& stmt, const std::optional<ObjectPath>& created)
{
    ChangeRecord c;
    c.command_path = stmt.path.value_or(ObjectPath(1));
    c.command_text = command_text(stmt.method, stmt.args);
    c.target_path = created.value_or(c.command_path);
    c.target_command = stmt.method;
    c.args = stmt.args;
    c.creation = created.has_value();
    return c;
}

namespace {

std::size_t base_count(const FigureDoc* base, const ObjectPath& parent, SegmentKind kind)
{
    if (!base || parent.figure_index() != base->index) return 0;
    if (kind == SegmentKind::Axes) return base->axes.size();
    const std::size_t i = parent.axes_index();
    if (i >= base->axes.size()) return 0;
    return kind == SegmentKind::Texts ? base->axes[i].texts.size() : base->axes[i].series.size();
}

}  // namespace

std::vector<ChangeRecord> parse_block(const std::vector<std::string>& lines, const FigureDoc* base)
{
    std::vector<ChangeRecord> out;
    std::map<std::pair<std::string, SegmentKind>, std::size_t> counters;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        ScriptLine sl = parse_line(lines[i]);
        if (sl.kind == LineKind::Blank) continue;
        if (sl.kind != LineKind::Statement)
            throw Error(ErrorKind::SyntaxError,
                        "only statements are allowed inside the generated block (found " +
                            std::string(to_string(sl.kind)) + ")",
                        line_no);
        if (sl.error) throw sl.error->at_line(line_no);
        const Statement& st = *sl.statement;
        const MethodSpec* spec = nullptr;
        try {
            spec = &check_signature(st);
        } catch (const Error& e) {
            throw e.at_line(line_no);
        }

        std::optional<ObjectPath> created;
        if (spec->creates) {
            const ObjectPath& parent = *st.path;
            if (*spec->creates == SegmentKind::Legend) {
                created = parent.child(Segment::legend());
            } else {
                auto key = std::make_pair(parent.to_text(), *spec->creates);
                auto it = counters.find(key);
                if (it == counters.end()) it = counters.emplace(key, base_count(base, parent, *spec->creates)).first;
                created = parent.child(Segment{*spec->creates, it->second++});
            }
        }
        ChangeRecord rec = make_change(st, created);
        rec.seq = out.size();
        rec.origin = Origin::Loaded;
        rec.line = line_no;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace figedit
