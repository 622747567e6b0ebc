#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mpsim {

// SplitMix64 finalizer, used only to derive independent seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t child) {
    return mix64(parent ^ mix64(child));
}

// FNV-1a; stable across platforms, used to fold names into seeds.
constexpr std::uint64_t hash_name(std::string_view name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

// Per-agent random stream. mt19937_64 output is fully specified by the
// standard, and the conversions below avoid the implementation-defined
// std::*_distribution types, so draws are identical on every platform.
class AgentRng {
public:
    AgentRng() = default;
    AgentRng(std::uint64_t global_seed, std::uint64_t agent_id)
        : engine_(derive_seed(global_seed, agent_id)) {}

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer on [0, n), n > 0.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n));
    }

    friend bool operator==(const AgentRng&, const AgentRng&) = default;

private:
    std::mt19937_64 engine_{0};
};

}  // namespace mpsim
