#include "facloc/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace facloc {

using nlohmann::json;

json to_json(const LineInstance& instance) {
    json agents = json::array();
    for (const auto& a : instance.agents()) {
        agents.push_back({{"pos", a.pos}, {"f1", a.prefs.f1}, {"f2", a.prefs.f2}});
    }
    return {{"m", instance.m()}, {"agents", std::move(agents)}};
}

json to_json(const Solution& solution) { return json::array({solution.z1, solution.z2}); }

namespace {

const json& require_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(where + ": missing field '" + key + "'");
    }
    return *it;
}

int require_int(const json& obj, const char* key, const std::string& where) {
    const json& v = require_field(obj, key, where);
    if (!v.is_number_integer()) {
        throw ParseError(where + ": field '" + key + "' must be an integer");
    }
    return v.get<int>();
}

bool require_bool(const json& obj, const char* key, const std::string& where) {
    const json& v = require_field(obj, key, where);
    if (!v.is_boolean()) {
        throw ParseError(where + ": field '" + key + "' must be a boolean");
    }
    return v.get<bool>();
}

}  // namespace

LineInstance instance_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw ParseError("instance: expected a JSON object");
    }
    const int m = require_int(doc, "m", "instance");
    const json& agents = require_field(doc, "agents", "instance");
    if (!agents.is_array()) {
        throw ParseError("instance: field 'agents' must be an array");
    }
    std::vector<Agent> parsed;
    parsed.reserve(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string where = "agents[" + std::to_string(i) + "]";
        if (!agents[i].is_object()) {
            throw ParseError(where + ": expected an object");
        }
        parsed.push_back({require_int(agents[i], "pos", where),
                          {require_bool(agents[i], "f1", where), require_bool(agents[i], "f2", where)}});
    }
    return LineInstance(m, std::move(parsed));
}

LineInstance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return instance_from_json(doc);
}

LineInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open instance file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string dump_instance(const LineInstance& instance) { return to_json(instance).dump(); }

}  // namespace facloc
