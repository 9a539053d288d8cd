#include "figedit/ingest.hpp"

#include "figedit/error.hpp"
#include "figedit/patcher.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

namespace figedit {

namespace {

std::vector<std::vector<std::string>> split_records(std::string_view text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t i = 0;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n' || (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
            end_record();
            if (c == '\r') ++i;
        } else {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (field_started || !record.empty() || !field.empty()) end_record();
    return records;
}

double to_number(const std::string& cell)
{
    std::size_t b = 0;
    std::size_t e = cell.size();
    while (b < e && (cell[b] == ' ' || cell[b] == '\t')) ++b;
    while (e > b && (cell[e - 1] == ' ' || cell[e - 1] == '\t')) --e;
    double v = std::numeric_limits<double>::quiet_NaN();
    if (b == e) return v;
    const char* first = cell.data() + b;
    const char* last = cell.data() + e;
    if (*first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) return std::numeric_limits<double>::quiet_NaN();
    return v;
}

}  // namespace

DataTable parse_csv(std::string_view text)
{
    auto records = split_records(text);
    if (records.empty()) throw Error(ErrorKind::EmptyFile, "no header row");
    DataTable table;
    table.names = std::move(records.front());
    std::set<std::string> seen;
    for (const auto& n : table.names)
        if (!seen.insert(n).second) throw Error(ErrorKind::DuplicateColumn, "column '" + n + "' appears twice");
    if (records.size() < 2) throw Error(ErrorKind::EmptyFile, "header without data rows");

    table.columns.assign(table.names.size(), {});
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != table.names.size())
            throw Error(ErrorKind::RaggedRows,
                        "row " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) + " fields, expected " +
                            std::to_string(table.names.size()),
                        r + 1);
        for (std::size_t c = 0; c < rec.size(); ++c) table.columns[c].push_back(to_number(rec[c]));
    }
    return table;
}

DataTable load_csv(const std::filesystem::path& path)
{
    if (!std::filesystem::exists(path)) throw Error(ErrorKind::FileNotFound, path.string());
    return parse_csv(read_file(path));
}

ExtractedSeries extract_series(const DataTable& table, std::string_view xcol, std::string_view ycol)
{
    auto column = [&](std::string_view name) -> const std::vector<double>& {
        for (std::size_t i = 0; i < table.names.size(); ++i)
            if (table.names[i] == name) return table.columns[i];
        throw Error(ErrorKind::NoSuchColumn, "no column '" + std::string(name) + "'");
    };
    const auto& xs = column(xcol);
    const auto& ys = column(ycol);
    ExtractedSeries out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::isfinite(xs[i]) && std::isfinite(ys[i]))
            out.points.push_back({xs[i], ys[i]});
        else
            ++out.dropped;
    }
    return out;
}

DataCache::DataCache(std::filesystem::path base_dir)
    : base_dir_(std::move(base_dir)), state_(std::make_shared<State>())
{
}

std::filesystem::path DataCache::resolve(const std::string& path) const
{
    std::filesystem::path p(path);
    if (p.is_relative()) p = base_dir_ / p;
    return p.lexically_normal();
}

std::vector<Point> DataCache::series(const DataSource& source)
{
    const auto path = resolve(source.path);
    std::shared_ptr<const DataTable> table;
    {
        std::lock_guard lock(state_->mutex);
        auto it = state_->tables.find(path);
        if (it != state_->tables.end()) table = it->second;
    }
    if (!table) {
        table = std::make_shared<const DataTable>(load_csv(path));
        std::lock_guard lock(state_->mutex);
        state_->tables.emplace(path, table);
    }
    auto extracted = extract_series(*table, source.xcol, source.ycol);
    if (extracted.dropped > 0) {
        std::lock_guard lock(state_->mutex);
        std::string w = source.path + ": dropped " + std::to_string(extracted.dropped) + " row(s) without numeric " +
                        source.xcol + "/" + source.ycol;
        if (std::find(state_->warnings.begin(), state_->warnings.end(), w) == state_->warnings.end())
            state_->warnings.push_back(std::move(w));
    }
    return std::move(extracted.points);
}

std::vector<std::string> DataCache::warnings() const
{
    std::lock_guard lock(state_->mutex);
    return state_->warnings;
}

}  // namespace figedit
