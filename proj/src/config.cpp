#include "qbsim/config.hpp"

#include <fstream>
#include <set>

#include "qbsim/errors.hpp"

namespace qbsim {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "label",       "method",        "n_charger", "battery_sizes",
        "gamma_down",  "gamma_up",      "nbar",      "initial_levels",
        "tau_max",     "rtol",          "atol",      "output_stride",
    };
    return keys;
}

double require_number(const nlohmann::json& doc, const std::string& key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number())
        throw SchemaError(key + ": expected a number");
    return doc[key].get<double>();
}

int require_integer(const nlohmann::json& doc, const std::string& key) {
    if (!doc.contains(key)) throw SchemaError(key + ": required field is missing");
    if (!doc[key].is_number_integer())
        throw SchemaError(key + ": expected an integer");
    return doc[key].get<int>();
}

Level parse_level(const nlohmann::json& value, const std::string& key) {
    if (!value.is_string())
        throw SchemaError(key + ": entries must be \"excited\" or \"ground\"");
    const std::string name = value.get<std::string>();
    if (name == "excited") return Level::excited;
    if (name == "ground") return Level::ground;
    throw SchemaError(key + ": unknown level \"" + name + "\"");
}

} // namespace

std::string method_name(Method method) {
    return method == Method::exact ? "exact" : "meanfield";
}

Method parse_method(const std::string& name) {
    if (name == "exact") return Method::exact;
    if (name == "meanfield") return Method::meanfield;
    throw SchemaError("method: must be \"exact\" or \"meanfield\", got \"" + name + "\"");
}

ScenarioFile parse_scenario_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw SchemaError("scenario file: top-level value must be an object");
    for (const auto& [key, value] : doc.items())
        if (!known_keys().count(key)) throw SchemaError(key + ": unknown key");

    ScenarioFile file;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw SchemaError("label: expected a string");
        file.label = doc["label"].get<std::string>();
    }
    if (doc.contains("method")) {
        if (!doc["method"].is_string()) throw SchemaError("method: expected a string");
        file.method = parse_method(doc["method"].get<std::string>());
    }

    ScenarioConfig& sc = file.scenario;
    sc.n_charger = require_integer(doc, "n_charger");
    if (!doc.contains("battery_sizes")) throw SchemaError("battery_sizes: required field is missing");
    if (!doc["battery_sizes"].is_array() || doc["battery_sizes"].empty())
        throw SchemaError("battery_sizes: expected a nonempty array of integers");
    for (const auto& entry : doc["battery_sizes"]) {
        if (!entry.is_number_integer())
            throw SchemaError("battery_sizes: expected a nonempty array of integers");
        sc.battery_sizes.push_back(entry.get<int>());
    }
    sc.gamma_down = require_number(doc, "gamma_down", sc.gamma_down);
    sc.gamma_up = require_number(doc, "gamma_up", sc.gamma_up);
    sc.nbar = require_number(doc, "nbar", sc.nbar);
    sc.tau_max = require_number(doc, "tau_max", sc.tau_max);
    sc.rtol = require_number(doc, "rtol", sc.rtol);
    sc.atol = require_number(doc, "atol", sc.atol);
    sc.output_stride = require_number(doc, "output_stride", sc.output_stride);

    if (doc.contains("initial_levels")) {
        if (!doc["initial_levels"].is_array())
            throw SchemaError("initial_levels: expected an array");
        for (const auto& entry : doc["initial_levels"])
            sc.initial_levels.push_back(parse_level(entry, "initial_levels"));
    }

    try {
        sc.validate();
    } catch (const std::invalid_argument& err) {
        throw SchemaError(err.what());
    }
    return file;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open config file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& err) {
        throw SchemaError(std::string("config is not valid JSON: ") + err.what());
    }
    return parse_scenario_json(doc);
}

} // namespace qbsim
