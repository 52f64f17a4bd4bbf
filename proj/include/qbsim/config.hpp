// config.hpp — Scenario files: JSON mirroring ScenarioConfig field-for-field

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qbsim/dynamics.hpp"
#include "qbsim/scenario.hpp"

namespace qbsim {

struct ScenarioFile {
    ScenarioConfig scenario;
    Method method = Method::meanfield;
    std::string label;
};

/// Parses and validates a scenario document. Unknown keys are rejected
/// (catches typos in rate names); every violation throws SchemaError
/// naming the offending field. The published schema lives in
/// schema/scenario.schema.json.
ScenarioFile parse_scenario_json(const nlohmann::json& doc);

ScenarioFile load_scenario_file(const std::filesystem::path& path);

std::string method_name(Method method);
Method parse_method(const std::string& name);

} // namespace qbsim
