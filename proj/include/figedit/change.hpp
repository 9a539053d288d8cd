#pragma once

#include "figedit/path.hpp"
#include "figedit/statement.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace figedit {

enum class Origin { Loaded, Session };

/// One tracked edit, split into the object a method is called on, the call
/// itself, the object the call affects and the bare method name. Only
/// creation calls have a target that differs from the command object: the
/// target is then the new child.
struct ChangeRecord {
    ObjectPath command_path;
    std::string command_text;  // method(args), canonical
    ObjectPath target_path;
    std::string target_command;  // method name
    std::vector<Literal> args;
    std::uint64_t seq = 0;
    Origin origin = Origin::Session;
    bool creation = false;
    std::optional<std::size_t> line;  // 1-based line inside a parsed block

    Statement statement() const;
};

/// Builds a record for `stmt`; `created` is the child a creation produced.
ChangeRecord make_change(const Statement& stmt, const std::optional<ObjectPath>& created);

}  // namespace figedit
