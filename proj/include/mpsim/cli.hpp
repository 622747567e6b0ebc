#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mpsim::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kIoFailure = 1;
inline constexpr int kUsage = 2;

enum class Subcommand { Run, Sweep, Report };

struct CliInvocation {
    Subcommand subcommand = Subcommand::Run;
    std::string topology_path;  // empty = built-in default topology
    std::string strategy = "min_rtt";
    std::vector<std::string> strategies;
    bool all_strategies = false;
    std::size_t agents = 100;
    std::optional<std::size_t> epsilon_agents;  // epsilon sweep N, default 500
    std::vector<std::size_t> agents_list;       // empty = default grid
    int steps = 300;
    std::uint64_t seed = 0;
    double epsilon = 0.1;
    double filter_factor = 1.5;
    std::vector<double> epsilon_grid;
    std::string output_path;      // empty = stdout
    std::string timeseries_path;  // run only
    std::string input_path;       // report only
    bool raw = false;
    std::string format = "csv";
    unsigned threads = 0;
};

// MPSIM_THREADS, 0 (auto) when unset or unparsable.
unsigned threads_from_env();

int cmd_run(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cmd_report(const CliInvocation& inv, std::ostream& out, std::ostream& err);

int dispatch(const CliInvocation& inv, std::ostream& out, std::ostream& err);

}  // namespace mpsim::cli
