#include "figedit/tracker.hpp"

#include "figedit/error.hpp"
#include "figedit/figscript.hpp"

namespace figedit {

Tracker::Key Tracker::key_of(const ObjectPath& target, std::string_view command)
{
    const bool labels = command == "set_xticklabels" || command == "set_yticklabels";
    return Key{target.to_text(), labels ? 1 : 0, std::string(command)};
}

void Tracker::record(ChangeRecord change)
{
    Key key = key_of(change.target_path, change.target_command);
    change.seq = next_seq_++;
    change.origin = Origin::Session;
    auto it = records_.find(key);
    if (it != records_.end()) {
        ChangeRecord& old = it->second;
        old.args = std::move(change.args);
        old.command_text = std::move(change.command_text);
        old.origin = Origin::Session;
        old.seq = change.seq;
        return;
    }
    if (change.creation) creation_order_.push_back(key);
    records_.emplace(std::move(key), std::move(change));
}

void Tracker::load(std::vector<ChangeRecord> block)
{
    if (!records_.empty()) throw Error(ErrorKind::InvariantViolation, "load requires an empty tracker");
    std::map<Key, ChangeRecord> records;
    std::vector<Key> creations;
    std::uint64_t seq = next_seq_;
    for (auto& change : block) {
        Key key = key_of(change.target_path, change.target_command);
        if (records.count(key)) {
            std::string what = change.target_command + " on " + change.target_path.to_text() + " appears twice";
            throw Error(ErrorKind::DuplicateKeyInBlock, what, change.line);
        }
        change.origin = Origin::Loaded;
        change.seq = seq++;
        if (change.creation) creations.push_back(key);
        records.emplace(std::move(key), std::move(change));
    }
    records_ = std::move(records);
    creation_order_ = std::move(creations);
    next_seq_ = seq;
}

std::vector<const ChangeRecord*> Tracker::ordered() const
{
    std::vector<const ChangeRecord*> out;
    out.reserve(records_.size());
    for (const auto& key : creation_order_) out.push_back(&records_.at(key));
    for (const auto& [key, rec] : records_)
        if (!rec.creation) out.push_back(&rec);
    return out;
}

std::vector<std::string> Tracker::emit_block() const
{
    std::vector<std::string> lines;
    lines.reserve(records_.size() + 2);
    lines.emplace_back(kSentinelStart);
    for (const ChangeRecord* rec : ordered()) lines.push_back(emit_statement(*rec));
    lines.emplace_back(kSentinelEnd);
    return lines;
}

const ChangeRecord* Tracker::find(const ObjectPath& target, std::string_view command) const
{
    auto it = records_.find(key_of(target, command));
    return it == records_.end() ? nullptr : &it->second;
}

}  // namespace figedit
