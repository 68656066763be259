#pragma once

#include <string>

#include "json.hpp"

#include "prodnet/model.hpp"

namespace prodnet {

Economy economy_from_json(const nlohmann::json& doc);
nlohmann::json economy_to_json(const Economy& economy);

FlowState flow_state_from_json(const nlohmann::json& doc, const Economy& economy);
nlohmann::json flow_state_to_json(const FlowState& state);

Economy load_economy(const std::string& path);
FlowState load_flow_state(const std::string& path, const Economy& economy);

void save_economy(const Economy& economy, const std::string& path);
void save_flow_state(const FlowState& state, const std::string& path);

} // namespace prodnet
