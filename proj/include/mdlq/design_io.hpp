#pragma once

#include <string>

#include <json.hpp>

#include "mdlq/labeling.hpp"

namespace mdlq {

inline constexpr int kSchemaVersion = 1;

// Versioned design file. Coordinates are exact integers; only
// cost_summary carries floats.
nlohmann::json design_to_json(const Labeling& lab);
Labeling design_from_json(const nlohmann::json& j);

std::string dump_json(const nlohmann::json& j);  // 2-space indent, trailing newline
Labeling load_design_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace mdlq
