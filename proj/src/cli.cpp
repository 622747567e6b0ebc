#include "mpsim/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "mpsim/error.hpp"
#include "mpsim/experiment.hpp"

namespace mpsim::cli {

namespace {

// Writes to `path`, or to `out` when path is empty. False on any I/O error.
bool write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        out.flush();
        return static_cast<bool>(out);
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << text;
    file.close();
    return static_cast<bool>(file);
}

Topology resolve_topology(const CliInvocation& inv) {
    return inv.topology_path.empty() ? default_topology() : load_topology(inv.topology_path);
}

StrategyKind resolve_strategy(const std::string& name, const CliInvocation& inv) {
    const auto policy = parse_policy(name);
    if (!policy) {
        throw ValidationError(fmt::format("unknown strategy '{}'; valid strategies: {}", name, strategy_name_list()));
    }
    StrategyKind kind{*policy, inv.epsilon, inv.filter_factor};
    validate(kind);
    return kind;
}

SweepSpec base_spec(const CliInvocation& inv) {
    SweepSpec spec;
    spec.topology = resolve_topology(inv);
    spec.engine.steps = inv.steps;
    spec.seed = inv.seed;
    spec.threads = inv.threads;
    return spec;
}

template <typename Body>
int guarded(std::ostream& err, Body body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int write_or_fail(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
    if (write_output(path, text, out)) return kOk;
    err << "error: failed to write " << (path.empty() ? std::string("standard output") : path) << '\n';
    return kIoFailure;
}

}  // namespace

unsigned threads_from_env() {
    const char* value = std::getenv("MPSIM_THREADS");
    if (value == nullptr) return 0;
    unsigned n = 0;
    const std::string_view s(value);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    return (ec == std::errc{} && ptr == s.data() + s.size()) ? n : 0;
}

int cmd_run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ReportFormat format = parse_format(inv.format);
        SimConfig config;
        config.topology = resolve_topology(inv);
        config.strategy = resolve_strategy(inv.strategy, inv);
        config.num_agents = inv.agents;
        config.engine.steps = inv.steps;
        config.seed = inv.seed;

        const Telemetry telemetry = run(config);
        const SummaryRow row{inv.strategy, inv.agents, score(telemetry)};
        if (!inv.timeseries_path.empty()) {
            if (const int rc = write_or_fail(inv.timeseries_path, timeseries_csv(telemetry), out, err); rc != kOk) {
                return rc;
            }
        }
        return write_or_fail(inv.output_path, emit_summary({row}, format, inv.raw), out, err);
    });
}

int cmd_sweep(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ReportFormat format = parse_format(inv.format);
        SweepSpec spec = base_spec(inv);

        if (!inv.epsilon_grid.empty()) {
            for (double e : inv.epsilon_grid) validate(StrategyKind{Policy::EpsilonGreedy, e});
            const std::size_t agents = inv.epsilon_agents.value_or(500);
            const auto points = sweep_epsilon(inv.epsilon_grid, agents, spec);
            return write_or_fail(inv.output_path, emit_epsilon(points, inv.raw), out, err);
        }

        spec.strategies.clear();
        if (inv.all_strategies) {
            for (auto name : strategy_names()) spec.strategies.push_back(resolve_strategy(std::string(name), inv));
        } else {
            for (const auto& name : inv.strategies) spec.strategies.push_back(resolve_strategy(name, inv));
        }
        if (spec.strategies.empty()) {
            throw ValidationError("empty grid: pass --all-strategies, --strategies or --epsilon-grid");
        }
        if (!inv.agents_list.empty()) spec.agent_counts = inv.agents_list;

        const auto rows = sweep_agents(spec);
        return write_or_fail(inv.output_path, emit_summary(rows, format, inv.raw), out, err);
    });
}

int cmd_report(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ReportFormat format = parse_format(inv.format);
        if (inv.input_path.empty()) throw ValidationError("report: --in is required");
        std::ifstream in(inv.input_path, std::ios::binary);
        if (!in) throw ValidationError(fmt::format("report: cannot open '{}'", inv.input_path));
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const auto rows = parse_summary_csv(buffer.str());
        return write_or_fail(inv.output_path, emit_summary(rows, format, inv.raw), out, err);
    });
}

int dispatch(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    switch (inv.subcommand) {
        case Subcommand::Run: return cmd_run(inv, out, err);
        case Subcommand::Sweep: return cmd_sweep(inv, out, err);
        case Subcommand::Report: return cmd_report(inv, out, err);
    }
    return kUsage;
}

}  // namespace mpsim::cli
