// mpsim: multipath path-selection simulator.
//
//   mpsim run    --strategy min_rtt --agents 100 [--timeseries ts.csv]
//   mpsim sweep  --all-strategies [--raw] [--format markdown]
//   mpsim sweep  --epsilon-grid 0,0.1,0.2,0.3,0.4,0.5 --agents 500
//   mpsim report --in results.csv --format markdown

#include <iostream>

#include <CLI11.hpp>

#include "mpsim/cli.hpp"

using mpsim::cli::CliInvocation;
using mpsim::cli::Subcommand;

namespace {

void add_common(CLI::App* cmd, CliInvocation& inv) {
    cmd->add_option("--topology", inv.topology_path, "Topology JSON file (default: built-in 3-path topology)");
    cmd->add_option("--steps", inv.steps, "Simulation steps per run")->capture_default_str();
    cmd->add_option("--seed", inv.seed, "Global random seed")->capture_default_str();
    cmd->add_option("--epsilon", inv.epsilon, "Exploration probability for epsilon_greedy")->capture_default_str();
    cmd->add_option("--filter-factor", inv.filter_factor, "BLEST RTT filter factor")->capture_default_str();
}

void add_output(CLI::App* cmd, CliInvocation& inv) {
    cmd->add_option("--out,-o", inv.output_path, "Output file (default: stdout)");
    cmd->add_option("--format", inv.format, "csv or markdown")->capture_default_str();
    cmd->add_flag("--raw", inv.raw, "Full-precision numbers instead of 2 decimal places");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multipath path-selection simulator"};
    app.require_subcommand(1);
    CliInvocation inv;
    inv.threads = mpsim::cli::threads_from_env();

    auto* run = app.add_subcommand("run", "Run one simulation and print its axiom scores");
    add_common(run, inv);
    add_output(run, inv);
    run->add_option("--strategy", inv.strategy, "Path selection strategy")->capture_default_str();
    run->add_option("--agents", inv.agents, "Number of agents")->capture_default_str();
    run->add_option("--timeseries", inv.timeseries_path, "Also write per-step path loads to this CSV");

    std::size_t sweep_agents = 0;
    auto* sweep = app.add_subcommand("sweep", "Run an agent-count grid or an epsilon sensitivity grid");
    add_common(sweep, inv);
    add_output(sweep, inv);
    sweep->add_flag("--all-strategies", inv.all_strategies, "Sweep all seven strategies");
    sweep->add_option("--strategies", inv.strategies, "Comma-separated strategy names")->delimiter(',');
    sweep->add_option("--agents-list", inv.agents_list, "Comma-separated agent counts")->delimiter(',');
    auto* agents_opt = sweep->add_option("--agents", sweep_agents, "Agent count for --epsilon-grid (default 500)");
    sweep->add_option("--epsilon-grid", inv.epsilon_grid, "Comma-separated epsilon values")->delimiter(',');

    auto* report = app.add_subcommand("report", "Re-render a stored summary CSV");
    add_output(report, inv);
    report->add_option("--in", inv.input_path, "Summary CSV to render")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? mpsim::cli::kOk : mpsim::cli::kUsage;
    }

    if (run->parsed()) inv.subcommand = Subcommand::Run;
    if (sweep->parsed()) {
        inv.subcommand = Subcommand::Sweep;
        if (agents_opt->count() > 0) inv.epsilon_agents = sweep_agents;
    }
    if (report->parsed()) inv.subcommand = Subcommand::Report;
    return mpsim::cli::dispatch(inv, std::cout, std::cerr);
}
