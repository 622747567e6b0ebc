#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpsim/engine.hpp"
#include "mpsim/metrics.hpp"

namespace mpsim {

// Agent counts of the published summary grid.
std::vector<std::size_t> default_agent_counts();

// All seven strategies with default parameters, in table order.
std::vector<StrategyKind> all_strategies();

struct SweepSpec {
    Topology topology = default_topology();
    std::vector<StrategyKind> strategies = all_strategies();
    std::vector<std::size_t> agent_counts = default_agent_counts();
    AimdParams aimd;
    EngineParams engine;
    std::uint64_t seed = 0;
    std::optional<std::vector<double>> epsilon_values;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct SummaryRow {
    std::string strategy;
    std::size_t agents = 0;
    AxiomScores scores;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct EpsilonPoint {
    double epsilon = 0.0;
    double efficiency = 0.0;
    double loss = 0.0;

    friend bool operator==(const EpsilonPoint&, const EpsilonPoint&) = default;
};

// Seed for one grid cell; depends only on the sweep seed, the strategy name
// and the agent count, so cells are independent of evaluation order.
std::uint64_t cell_seed(std::uint64_t sweep_seed, Policy policy, std::size_t agents);

SimConfig cell_config(const SweepSpec& spec, const StrategyKind& kind, std::size_t agents);

// One row per (strategy, agents), strategy-major with agents ascending in
// the order given by the spec.
std::vector<SummaryRow> sweep_agents(const SweepSpec& spec);

// epsilon_greedy at `agents` for each epsilon, in the given order.
std::vector<EpsilonPoint> sweep_epsilon(const std::vector<double>& epsilons, std::size_t agents,
                                        const SweepSpec& spec);

enum class ReportFormat { Csv, Markdown };

ReportFormat parse_format(std::string_view name);

inline constexpr std::string_view kSummaryHeader =
    "strategy,agents,oscillation,loss,fairness,efficiency,stability,loss_avoidance";
inline constexpr std::string_view kEpsilonHeader = "epsilon,efficiency,loss";

// 2 decimal places unless `raw`, which keeps full round-trip precision.
std::string emit_summary(const std::vector<SummaryRow>& rows, ReportFormat format, bool raw = false);
std::string emit_epsilon(const std::vector<EpsilonPoint>& points, bool raw = false);

// Reads a summary CSV written by emit_summary (raw or rounded).
std::vector<SummaryRow> parse_summary_csv(std::string_view text);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn);

}  // namespace mpsim

#include "mpsim/detail/parallel.hpp"
