#include "mpsim/topology.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "mpsim/error.hpp"

namespace mpsim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (auto name : allowed) known = known || key == name;
        if (!known) throw ValidationError(fmt::format("{}: unknown field \"{}\"", where, key));
    }
}

const json& require(const json& object, const char* key, std::string_view where) {
    auto it = object.find(key);
    if (it == object.end()) throw ValidationError(fmt::format("{}: missing field \"{}\"", where, key));
    return *it;
}

double require_number(const json& object, const char* key, std::string_view where) {
    const json& v = require(object, key, where);
    if (!v.is_number()) throw ValidationError(fmt::format("{}.{} must be a number", where, key));
    return v.get<double>();
}

PathSpec parse_path(const json& node, std::size_t index) {
    const std::string where = fmt::format("paths[{}]", index);
    if (!node.is_object()) throw ValidationError(where + " must be an object");
    reject_unknown_keys(node, {"id", "capacity_mbps", "base_rtt_ms", "attributes"}, where);

    PathSpec path;
    const json& id = require(node, "id", where);
    if (!id.is_number_integer()) throw ValidationError(where + ".id must be an integer");
    const auto raw_id = id.get<std::int64_t>();
    if (raw_id < 1) throw ValidationError(where + ".id must be positive");
    path.id = PathId{static_cast<std::uint32_t>(raw_id)};
    path.capacity_mbps = require_number(node, "capacity_mbps", where);
    path.base_rtt_ms = require_number(node, "base_rtt_ms", where);

    if (auto it = node.find("attributes"); it != node.end()) {
        if (!it->is_array()) throw ValidationError(where + ".attributes must be an array of strings");
        for (const auto& tag : *it) {
            if (!tag.is_string()) throw ValidationError(where + ".attributes must be an array of strings");
            path.attributes.insert(tag.get<std::string>());
        }
    }
    return path;
}

}  // namespace

bool PathSpec::has_any(const TagSet& tags) const {
    for (const auto& tag : tags) {
        if (attributes.contains(tag)) return true;
    }
    return false;
}

double Topology::total_capacity() const {
    return std::accumulate(paths.begin(), paths.end(), 0.0,
                           [](double acc, const PathSpec& p) { return acc + p.capacity_mbps; });
}

void validate(const Topology& topology) {
    if (topology.paths.empty()) throw ValidationError("paths: at least one path is required");
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < topology.paths.size(); ++i) {
        const PathSpec& p = topology.paths[i];
        const auto id = static_cast<std::uint32_t>(p.id);
        if (!seen.insert(id).second) throw ValidationError(fmt::format("paths[{}].id: duplicate path id {}", i, id));
        if (p.id != path_at(i)) {
            throw ValidationError(fmt::format("paths[{}].id must be {} (ids are 1..P in file order)", i, i + 1));
        }
        if (!(p.capacity_mbps > 0.0) || !std::isfinite(p.capacity_mbps)) {
            throw ValidationError(fmt::format("paths[{}].capacity_mbps: capacity must be positive", i));
        }
        if (!(p.base_rtt_ms > 0.0) || !std::isfinite(p.base_rtt_ms)) {
            throw ValidationError(fmt::format("paths[{}].base_rtt_ms: base RTT must be positive", i));
        }
    }
}

Topology parse_topology(std::string_view config_text) {
    json root;
    try {
        root = json::parse(config_text.begin(), config_text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("topology: malformed JSON at byte {}: {}", e.byte, e.what()), e.byte);
    }
    if (!root.is_object()) throw ValidationError("topology: top level must be an object");
    reject_unknown_keys(root, {"name", "paths"}, "topology");

    Topology topology;
    const json& name = require(root, "name", "topology");
    if (!name.is_string()) throw ValidationError("topology.name must be a string");
    topology.name = name.get<std::string>();

    const json& paths = require(root, "paths", "topology");
    if (!paths.is_array()) throw ValidationError("topology.paths must be an array");
    for (std::size_t i = 0; i < paths.size(); ++i) topology.paths.push_back(parse_path(paths[i], i));

    validate(topology);
    return topology;
}

Topology load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open topology file '{}'", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_topology(buffer.str());
}

std::string serialize_topology(const Topology& topology) {
    json root;
    root["name"] = topology.name;
    root["paths"] = json::array();
    for (const auto& p : topology.paths) {
        json node;
        node["id"] = static_cast<std::uint32_t>(p.id);
        node["capacity_mbps"] = p.capacity_mbps;
        node["base_rtt_ms"] = p.base_rtt_ms;
        node["attributes"] = p.attributes;
        root["paths"].push_back(std::move(node));
    }
    return root.dump(2);
}

Topology default_topology() {
    Topology t;
    t.name = "default-3path";
    t.paths = {
        {PathId{1}, 50.0, 20.0, {}},
        {PathId{2}, 100.0, 50.0, {}},
        {PathId{3}, 80.0, 80.0, {std::string(kHighCostTag)}},
    };
    return t;
}

}  // namespace mpsim
