#pragma once

#include "figedit/change.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace figedit {

/// Records the final state of every (target object, target command) pair
/// edited in a session. A new change with the same pair replaces the old
/// one in place.
class Tracker {
public:
    /// Ordering key for emitted property lines: target path text, then
    /// method. Tick labels sort after tick locations on the same axes so
    /// that replaying the block never sees labels before their ticks.
    struct Key {
        std::string path;
        int phase = 0;
        std::string command;
        auto operator<=>(const Key&) const = default;
    };

    static Key key_of(const ObjectPath& target, std::string_view command);

    void record(ChangeRecord change);

    /// Seeds an empty tracker from a parsed block. Throws
    /// DuplicateKeyInBlock (with the offending line) if a pair repeats.
    void load(std::vector<ChangeRecord> block);

    /// Sentinel start, creations in first-creation order, remaining changes
    /// sorted by key, sentinel end.
    std::vector<std::string> emit_block() const;

    /// Records in emission order.
    std::vector<const ChangeRecord*> ordered() const;

    const ChangeRecord* find(const ObjectPath& target, std::string_view command) const;

    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

private:
    std::map<Key, ChangeRecord> records_;
    std::vector<Key> creation_order_;
    std::uint64_t next_seq_ = 0;
};

}  // namespace figedit
