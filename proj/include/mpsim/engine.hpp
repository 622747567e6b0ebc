#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpsim/strategy.hpp"
#include "mpsim/topology.hpp"

namespace mpsim {

// 1 unit of cwnd is normalized to 1 Mbps of per-step load.
struct AimdParams {
    double initial_cwnd = 1.0;
    double alpha = 1.0;  // packets per loss-free RTT
    double beta = 0.5;   // multiplicative decrease on loss
    double cwnd_floor = 1.0;
    double mbps_per_cwnd = 1.0;

    void validate() const;
    friend bool operator==(const AimdParams&, const AimdParams&) = default;
};

struct EngineParams {
    int steps = 300;
    double step_ms = 10.0;
    double queue_scale_k = 10.0;  // ms of queuing delay per unit of overload ratio

    void validate() const;
    friend bool operator==(const EngineParams&, const EngineParams&) = default;
};

struct AgentState {
    std::uint32_t agent_id = 0;
    double cwnd = 1.0;
    double rtt_clock_ms = 0.0;  // time since the last increase or loss
    bool window_clean = true;   // no loss since the clock last reset
    StrategyState strategy_state;
    PathId chosen_path{};

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct SimConfig {
    Topology topology = default_topology();
    StrategyKind strategy;
    std::size_t num_agents = 1;
    AimdParams aimd;
    EngineParams engine;
    std::uint64_t seed = 0;
    TagSet forbidden_tags{std::string(kHighCostTag)};

    void validate() const;
    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Per-path quantities are indexed by path index (id - 1).
struct StepRecord {
    std::size_t step = 0;
    std::vector<double> load_mbps;
    std::vector<double> overflow_mbps;
    std::vector<double> inst_rtt_ms;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Telemetry {
    std::vector<StepRecord> records;
    std::vector<double> final_cwnds;
    // choices[t][a] is the path agent a used in step t.
    std::vector<std::vector<PathId>> choices;
    SimConfig config;

    friend bool operator==(const Telemetry&, const Telemetry&) = default;
};

double rtt_instantaneous(double base_rtt_ms, double load_mbps, double capacity_mbps, double k_ms);

struct LossShare {
    std::vector<double> per_agent;
    double overflow = 0.0;
};

// Splits max(0, sum - capacity) across senders in proportion to their load.
LossShare apportion_loss(std::span<const double> agent_loads, double capacity_mbps);

void aimd_update(AgentState& agent, bool lost, double path_rtt_ms, double step_ms, const AimdParams& params);

// Record describing "before the first step": zero load, base RTTs.
StepRecord initial_record(const Topology& topology);

std::vector<PathView> build_view(const Topology& topology, const StepRecord& prev);

std::vector<AgentState> make_agents(const SimConfig& config, const PathSelector& selector);

struct StepResult {
    StepRecord record;
    // Loss apportioned to each agent in this step (Mbps).
    std::vector<double> agent_loss;
};

// Advances every agent by one step. `step_index` labels the emitted record.
StepResult step(std::vector<AgentState>& agents, const Topology& topology, const StepRecord& prev,
                const PathSelector& selector, const SimConfig& config, std::size_t step_index);

// Runs config.engine.steps steps. Identical configs give identical telemetry.
Telemetry run(const SimConfig& config);

// CSV with columns step,path_id,load_mbps,overflow_mbps,inst_rtt_ms.
std::string timeseries_csv(const Telemetry& telemetry);

}  // namespace mpsim
