#pragma once

#include "figedit/figmodel.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace figedit {

/// A CSV table. Cells that are not numbers are stored as NaN and dropped
/// when a series is extracted.
struct DataTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
};

/// RFC 4180 subset: quoted fields, doubled quotes, LF or CRLF rows.
/// Throws EmptyFile, RaggedRows (1-based record number, header = 1) or
/// DuplicateColumn.
DataTable parse_csv(std::string_view text);

/// Throws FileNotFound plus everything parse_csv throws.
DataTable load_csv(const std::filesystem::path& path);

struct ExtractedSeries {
    std::vector<Point> points;
    std::size_t dropped = 0;  // rows with a missing or non-finite cell
};

/// Throws NoSuchColumn.
ExtractedSeries extract_series(const DataTable& table, std::string_view xcol, std::string_view ycol);

/// Loads tables relative to a base directory, each file at most once.
/// Copies share the cache. Dropped-row counts accumulate as warnings.
class DataCache {
public:
    explicit DataCache(std::filesystem::path base_dir);

    std::vector<Point> series(const DataSource& source);
    std::filesystem::path resolve(const std::string& path) const;
    std::vector<std::string> warnings() const;

private:
    struct State {
        std::mutex mutex;
        std::map<std::filesystem::path, std::shared_ptr<const DataTable>> tables;
        std::vector<std::string> warnings;
    };
    std::filesystem::path base_dir_;
    std::shared_ptr<State> state_;
};

}  // namespace figedit
