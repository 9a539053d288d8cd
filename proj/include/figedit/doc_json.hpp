#pragma once

#include "figedit/figmodel.hpp"

#include <json.hpp>

namespace figedit {

/// JSON projection of the scene graph. Field names follow the model types.
nlohmann::json to_json(const FigureDoc& doc);
nlohmann::json to_json(const AxesNode& axes);
nlohmann::json to_json(const Rect& r);

}  // namespace figedit
