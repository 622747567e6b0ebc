#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpsim/rng.hpp"
#include "mpsim/topology.hpp"

namespace mpsim {

// What an agent can observe about one path before deciding. Values describe
// the last completed step (base RTT and zero load before the first step).
struct PathView {
    PathId id{};
    double capacity_mbps = 0.0;
    double inst_rtt_ms = 0.0;
    double prev_load_mbps = 0.0;
    TagSet attributes;
};

enum class Policy {
    MinRtt,
    MinLoad,
    AttributeAware,
    RoundRobin,
    WeightedRoundRobin,
    EpsilonGreedy,
    Blest,
};

inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr double kDefaultBlestFactor = 1.5;

struct StrategyKind {
    Policy policy = Policy::MinRtt;
    double epsilon = kDefaultEpsilon;            // EpsilonGreedy only
    double filter_factor = kDefaultBlestFactor;  // Blest only

    friend bool operator==(const StrategyKind&, const StrategyKind&) = default;
};

// Report/CLI names, in table order.
std::span<const std::string_view> strategy_names();
std::string_view strategy_name(Policy policy);
std::optional<Policy> parse_policy(std::string_view name);
// "min_rtt, min_load, ..." for error messages.
std::string strategy_name_list();

// Throws ValidationError unless 0 <= epsilon <= 1 and filter_factor >= 1.
void validate(const StrategyKind& kind);

struct StrategyState {
    std::uint64_t rr_cursor = 0;
    AgentRng rng;

    friend bool operator==(const StrategyState&, const StrategyState&) = default;
};

// Lowest inst_rtt; ties go to the lowest id. Throws on an empty view.
PathId select_min_rtt(std::span<const PathView> view);

// Lowest prev_load; ties go to the lowest id.
PathId select_min_load(std::span<const PathView> view);

// Drops paths carrying any forbidden tag, then picks by min RTT.
// Throws ValidationError("no admissible path") when nothing survives.
PathId select_attribute_aware(std::span<const PathView> view, const TagSet& forbidden_tags);

PathId select_round_robin(StrategyState& state, std::size_t path_count);

// Smooth weighted round-robin over capacities rounded to integers and
// reduced by their GCD. One period of the cycle is returned.
std::vector<PathId> wrr_schedule(std::span<const double> capacities);

PathId select_wrr(StrategyState& state, std::span<const PathId> schedule);

// One uniform draw decides explore (u < epsilon) vs exploit. Exploration
// takes a second draw, uniform over all paths.
PathId select_epsilon_greedy(StrategyState& state, std::span<const PathView> view, double epsilon);

// Keeps paths with inst_rtt <= filter_factor * best RTT and returns the one
// with the earliest completion estimate. inst_rtt already carries queuing
// delay, so the estimate is inst_rtt itself.
PathId select_blest(std::span<const PathView> view, double filter_factor);

// Binds a StrategyKind to a topology and dispatches per decision.
class PathSelector {
public:
    PathSelector(StrategyKind kind, const Topology& topology, TagSet forbidden_tags);

    const StrategyKind& kind() const { return kind_; }
    std::span<const PathId> schedule() const { return schedule_; }

    // Round-robin agents start in lock-step at cursor 0. Weighted
    // round-robin agents start at their own offset into the schedule.
    std::uint64_t initial_cursor(std::uint64_t agent_id) const;

    PathId select(StrategyState& state, std::span<const PathView> view) const;

private:
    StrategyKind kind_;
    TagSet forbidden_;
    std::vector<PathId> schedule_;
};

}  // namespace mpsim
