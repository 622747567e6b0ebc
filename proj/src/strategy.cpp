#include "mpsim/strategy.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mpsim/error.hpp"

namespace mpsim {

namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "min_rtt", "min_load", "attribute_aware", "round_robin", "weighted_round_robin", "epsilon_greedy", "blest",
};

void require_nonempty(std::span<const PathView> view) {
    if (view.empty()) throw ValidationError("path view is empty");
}

// Argmin of key(view[i]) over the views accepted by keep; first minimum wins.
template <typename Key, typename Keep>
const PathView* argmin(std::span<const PathView> view, Key key, Keep keep) {
    const PathView* best = nullptr;
    for (const auto& p : view) {
        if (!keep(p)) continue;
        if (best == nullptr || key(p) < key(*best)) best = &p;
    }
    return best;
}

constexpr auto keep_all = [](const PathView&) { return true; };
constexpr auto by_rtt = [](const PathView& p) { return p.inst_rtt_ms; };

}  // namespace

std::span<const std::string_view> strategy_names() { return kNames; }

std::string_view strategy_name(Policy policy) { return kNames.at(static_cast<std::size_t>(policy)); }

std::optional<Policy> parse_policy(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<Policy>(i);
    }
    return std::nullopt;
}

std::string strategy_name_list() { return fmt::format("{}", fmt::join(kNames, ", ")); }

void validate(const StrategyKind& kind) {
    if (!(kind.epsilon >= 0.0 && kind.epsilon <= 1.0)) {
        throw ValidationError(fmt::format("epsilon must be in [0, 1], got {}", kind.epsilon));
    }
    if (!(kind.filter_factor >= 1.0) || !std::isfinite(kind.filter_factor)) {
        throw ValidationError(fmt::format("BLEST filter factor must be >= 1, got {}", kind.filter_factor));
    }
}

PathId select_min_rtt(std::span<const PathView> view) {
    require_nonempty(view);
    return argmin(view, by_rtt, keep_all)->id;
}

PathId select_min_load(std::span<const PathView> view) {
    require_nonempty(view);
    return argmin(view, [](const PathView& p) { return p.prev_load_mbps; }, keep_all)->id;
}

PathId select_attribute_aware(std::span<const PathView> view, const TagSet& forbidden_tags) {
    require_nonempty(view);
    const PathView* best = argmin(view, by_rtt, [&](const PathView& p) {
        for (const auto& tag : forbidden_tags) {
            if (p.attributes.contains(tag)) return false;
        }
        return true;
    });
    if (best == nullptr) throw ValidationError("no admissible path");
    return best->id;
}

PathId select_round_robin(StrategyState& state, std::size_t path_count) {
    if (path_count == 0) throw ValidationError("round-robin over zero paths");
    const PathId id = path_at(state.rr_cursor % path_count);
    ++state.rr_cursor;
    return id;
}

std::vector<PathId> wrr_schedule(std::span<const double> capacities) {
    std::vector<std::int64_t> weights;
    weights.reserve(capacities.size());
    std::int64_t divisor = 0;
    for (double c : capacities) {
        if (!(c > 0.0)) throw ValidationError("WRR capacities must be positive");
        weights.push_back(std::llround(c));
        divisor = std::gcd(divisor, weights.back());
    }
    if (divisor == 0) throw ValidationError("WRR weights are all zero after rounding");
    for (auto& w : weights) w /= divisor;
    const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});

    std::vector<std::int64_t> credit(weights.size(), 0);
    std::vector<PathId> schedule;
    schedule.reserve(static_cast<std::size_t>(total));
    for (std::int64_t slot = 0; slot < total; ++slot) {
        std::size_t pick = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            credit[i] += weights[i];
            if (credit[i] > credit[pick]) pick = i;
        }
        credit[pick] -= total;
        schedule.push_back(path_at(pick));
    }
    return schedule;
}

PathId select_wrr(StrategyState& state, std::span<const PathId> schedule) {
    if (schedule.empty()) throw ValidationError("WRR schedule is empty");
    const PathId id = schedule[state.rr_cursor % schedule.size()];
    ++state.rr_cursor;
    return id;
}

PathId select_epsilon_greedy(StrategyState& state, std::span<const PathView> view, double epsilon) {
    require_nonempty(view);
    if (state.rng.uniform() < epsilon) return view[state.rng.index(view.size())].id;
    return select_min_rtt(view);
}

PathId select_blest(std::span<const PathView> view, double filter_factor) {
    require_nonempty(view);
    const double best = argmin(view, by_rtt, keep_all)->inst_rtt_ms;
    const double threshold = filter_factor * best;
    return argmin(view, by_rtt, [&](const PathView& p) { return p.inst_rtt_ms <= threshold; })->id;
}

PathSelector::PathSelector(StrategyKind kind, const Topology& topology, TagSet forbidden_tags)
    : kind_(kind), forbidden_(std::move(forbidden_tags)) {
    validate(kind_);
    if (kind_.policy == Policy::WeightedRoundRobin) {
        std::vector<double> capacities;
        for (const auto& p : topology.paths) capacities.push_back(p.capacity_mbps);
        schedule_ = wrr_schedule(capacities);
    }
}

std::uint64_t PathSelector::initial_cursor(std::uint64_t agent_id) const {
    if (kind_.policy == Policy::WeightedRoundRobin) return agent_id % schedule_.size();
    return 0;
}

PathId PathSelector::select(StrategyState& state, std::span<const PathView> view) const {
    switch (kind_.policy) {
        case Policy::MinRtt: return select_min_rtt(view);
        case Policy::MinLoad: return select_min_load(view);
        case Policy::AttributeAware: return select_attribute_aware(view, forbidden_);
        case Policy::RoundRobin: return select_round_robin(state, view.size());
        case Policy::WeightedRoundRobin: return select_wrr(state, schedule_);
        case Policy::EpsilonGreedy: return select_epsilon_greedy(state, view, kind_.epsilon);
        case Policy::Blest: return select_blest(view, kind_.filter_factor);
    }
    throw ValidationError("unknown strategy");
}

}  // namespace mpsim
