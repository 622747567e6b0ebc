#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mpsim {

// 1-based path identifier. Path i lives at index i-1 of Topology::paths.
enum class PathId : std::uint32_t {};

constexpr std::size_t to_index(PathId id) { return static_cast<std::size_t>(id) - 1; }
constexpr PathId path_at(std::size_t index) { return PathId{static_cast<std::uint32_t>(index + 1)}; }

inline std::ostream& operator<<(std::ostream& os, PathId id) {
    return os << static_cast<std::uint32_t>(id);
}

using TagSet = std::set<std::string>;

inline constexpr std::string_view kHighCostTag = "high-cost";

struct PathSpec {
    PathId id{};
    double capacity_mbps = 0.0;
    double base_rtt_ms = 0.0;
    TagSet attributes;

    bool has_any(const TagSet& tags) const;

    friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

// Immutable after construction; paths are ordered by id (1..P).
struct Topology {
    std::string name;
    std::vector<PathSpec> paths;

    std::size_t path_count() const { return paths.size(); }
    const PathSpec& path(PathId id) const { return paths.at(to_index(id)); }
    double total_capacity() const;

    friend bool operator==(const Topology&, const Topology&) = default;
};

// Throws ValidationError when an invariant of Topology does not hold.
void validate(const Topology& topology);

// Parses the JSON topology schema:
//   { "name": str, "paths": [ { "id": int, "capacity_mbps": num,
//                               "base_rtt_ms": num, "attributes": [str...] } ] }
// Throws ParseError on malformed JSON, ValidationError on schema violations.
Topology parse_topology(std::string_view config_text);

// Reads and parses a topology file.
Topology load_topology(const std::string& path);

std::string serialize_topology(const Topology& topology);

// Three parallel paths: 50 Mbps/20 ms, 100 Mbps/50 ms, 80 Mbps/80 ms (high-cost).
Topology default_topology();

}  // namespace mpsim
