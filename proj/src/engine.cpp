#include "mpsim/engine.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mpsim/error.hpp"

namespace mpsim {

void AimdParams::validate() const {
    if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("aimd.beta must be in (0, 1)");
    if (!(alpha > 0.0)) throw ValidationError("aimd.alpha must be positive");
    if (!(cwnd_floor > 0.0)) throw ValidationError("aimd.cwnd_floor must be positive");
    if (!(initial_cwnd >= cwnd_floor)) throw ValidationError("aimd.initial_cwnd must be >= cwnd_floor");
    if (!(mbps_per_cwnd > 0.0)) throw ValidationError("aimd.mbps_per_cwnd must be positive");
}

void EngineParams::validate() const {
    if (steps < 1) throw ValidationError("engine.steps must be >= 1");
    if (!(step_ms > 0.0)) throw ValidationError("engine.step_ms must be positive");
    if (!(queue_scale_k >= 0.0)) throw ValidationError("engine.queue_scale_k must be >= 0");
}

void SimConfig::validate() const {
    mpsim::validate(topology);
    mpsim::validate(strategy);
    aimd.validate();
    engine.validate();
    if (num_agents < 1) throw ValidationError("num_agents must be >= 1");
}

double rtt_instantaneous(double base_rtt_ms, double load_mbps, double capacity_mbps, double k_ms) {
    return base_rtt_ms + std::max(0.0, k_ms * (load_mbps / capacity_mbps - 1.0));
}

LossShare apportion_loss(std::span<const double> agent_loads, double capacity_mbps) {
    LossShare share;
    share.per_agent.assign(agent_loads.size(), 0.0);
    double total = 0.0;
    for (double l : agent_loads) total += l;
    share.overflow = std::max(0.0, total - capacity_mbps);
    if (share.overflow > 0.0) {
        for (std::size_t i = 0; i < agent_loads.size(); ++i) {
            share.per_agent[i] = share.overflow * agent_loads[i] / total;
        }
    }
    return share;
}

void aimd_update(AgentState& agent, bool lost, double path_rtt_ms, double step_ms, const AimdParams& params) {
    if (lost) {
        agent.cwnd = std::max(params.cwnd_floor, params.beta * agent.cwnd);
        agent.window_clean = false;
        agent.rtt_clock_ms = 0.0;
        return;
    }
    agent.rtt_clock_ms += step_ms;
    if (agent.rtt_clock_ms >= path_rtt_ms) {
        // A full RTT has elapsed. It only earns an increase if no loss
        // interrupted it; either way the next window starts clean.
        if (agent.window_clean) agent.cwnd += params.alpha;
        agent.rtt_clock_ms = 0.0;
        agent.window_clean = true;
    }
}

StepRecord initial_record(const Topology& topology) {
    StepRecord r;
    r.load_mbps.assign(topology.path_count(), 0.0);
    r.overflow_mbps.assign(topology.path_count(), 0.0);
    for (const auto& p : topology.paths) r.inst_rtt_ms.push_back(p.base_rtt_ms);
    return r;
}

std::vector<PathView> build_view(const Topology& topology, const StepRecord& prev) {
    std::vector<PathView> view;
    view.reserve(topology.path_count());
    for (std::size_t i = 0; i < topology.path_count(); ++i) {
        const PathSpec& p = topology.paths[i];
        view.push_back({p.id, p.capacity_mbps, prev.inst_rtt_ms.at(i), prev.load_mbps.at(i), p.attributes});
    }
    return view;
}

std::vector<AgentState> make_agents(const SimConfig& config, const PathSelector& selector) {
    std::vector<AgentState> agents(config.num_agents);
    for (std::size_t a = 0; a < agents.size(); ++a) {
        AgentState& agent = agents[a];
        agent.agent_id = static_cast<std::uint32_t>(a);
        agent.cwnd = config.aimd.initial_cwnd;
        agent.strategy_state.rr_cursor = selector.initial_cursor(a);
        agent.strategy_state.rng = AgentRng(config.seed, a);
    }
    return agents;
}

StepResult step(std::vector<AgentState>& agents, const Topology& topology, const StepRecord& prev,
                const PathSelector& selector, const SimConfig& config, std::size_t step_index) {
    const std::size_t path_count = topology.path_count();
    const std::vector<PathView> view = build_view(topology, prev);

    for (auto& agent : agents) agent.chosen_path = selector.select(agent.strategy_state, view);

    // Group sender loads per path, in agent-id order.
    std::vector<std::vector<double>> sender_loads(path_count);
    std::vector<std::vector<std::size_t>> senders(path_count);
    for (std::size_t a = 0; a < agents.size(); ++a) {
        const std::size_t p = to_index(agents[a].chosen_path);
        sender_loads[p].push_back(agents[a].cwnd * config.aimd.mbps_per_cwnd);
        senders[p].push_back(a);
    }

    StepResult result;
    StepRecord& record = result.record;
    record.step = step_index;
    record.load_mbps.assign(path_count, 0.0);
    record.overflow_mbps.assign(path_count, 0.0);
    record.inst_rtt_ms.assign(path_count, 0.0);
    result.agent_loss.assign(agents.size(), 0.0);

    for (std::size_t p = 0; p < path_count; ++p) {
        const PathSpec& spec = topology.paths[p];
        for (double l : sender_loads[p]) record.load_mbps[p] += l;
        const LossShare share = apportion_loss(sender_loads[p], spec.capacity_mbps);
        record.overflow_mbps[p] = share.overflow;
        for (std::size_t i = 0; i < senders[p].size(); ++i) result.agent_loss[senders[p][i]] = share.per_agent[i];
        record.inst_rtt_ms[p] = rtt_instantaneous(spec.base_rtt_ms, record.load_mbps[p], spec.capacity_mbps,
                                                  config.engine.queue_scale_k);
    }

    for (std::size_t a = 0; a < agents.size(); ++a) {
        AgentState& agent = agents[a];
        const double rtt = record.inst_rtt_ms[to_index(agent.chosen_path)];
        aimd_update(agent, result.agent_loss[a] > 0.0, rtt, config.engine.step_ms, config.aimd);
    }
    return result;
}

Telemetry run(const SimConfig& config) {
    config.validate();
    const PathSelector selector(config.strategy, config.topology, config.forbidden_tags);
    std::vector<AgentState> agents = make_agents(config, selector);

    Telemetry telemetry;
    telemetry.config = config;
    telemetry.records.reserve(static_cast<std::size_t>(config.engine.steps));
    telemetry.choices.reserve(static_cast<std::size_t>(config.engine.steps));

    StepRecord prev = initial_record(config.topology);
    for (int t = 0; t < config.engine.steps; ++t) {
        StepResult result = step(agents, config.topology, prev, selector, config, static_cast<std::size_t>(t));
        std::vector<PathId> chosen;
        chosen.reserve(agents.size());
        for (const auto& agent : agents) chosen.push_back(agent.chosen_path);
        telemetry.choices.push_back(std::move(chosen));
        telemetry.records.push_back(result.record);
        prev = std::move(result.record);
    }
    for (const auto& agent : agents) telemetry.final_cwnds.push_back(agent.cwnd);
    return telemetry;
}

std::string timeseries_csv(const Telemetry& telemetry) {
    std::string out = "step,path_id,load_mbps,overflow_mbps,inst_rtt_ms\n";
    for (const auto& r : telemetry.records) {
        for (std::size_t p = 0; p < r.load_mbps.size(); ++p) {
            fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", r.step, p + 1, r.load_mbps[p],
                           r.overflow_mbps[p], r.inst_rtt_ms[p]);
        }
    }
    return out;
}

}  // namespace mpsim
