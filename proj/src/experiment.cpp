#include "mpsim/experiment.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "mpsim/error.hpp"

namespace mpsim {

namespace {

std::string number(double v, bool raw) { return raw ? fmt::format("{}", v) : fmt::format("{:.2f}", v); }

std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t end = line.find(sep, start);
        fields.push_back(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return fields;
}

template <typename T>
T parse_field(std::string_view field, std::string_view column, std::size_t offset) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(fmt::format("summary CSV: bad {} value '{}' at byte {}", column, field, offset), offset);
    }
    return value;
}

}  // namespace

std::vector<std::size_t> default_agent_counts() { return {10, 25, 50, 100, 150, 250, 500}; }

std::vector<StrategyKind> all_strategies() {
    std::vector<StrategyKind> kinds;
    for (auto name : strategy_names()) kinds.push_back({*parse_policy(name)});
    return kinds;
}

void SweepSpec::validate() const {
    if (strategies.empty()) throw ValidationError("sweep: no strategies");
    if (agent_counts.empty()) throw ValidationError("sweep: no agent counts");
    for (auto n : agent_counts) {
        if (n < 1) throw ValidationError("sweep: agent counts must be >= 1");
    }
    for (const auto& k : strategies) mpsim::validate(k);
    mpsim::validate(topology);
    aimd.validate();
    engine.validate();
}

std::uint64_t cell_seed(std::uint64_t sweep_seed, Policy policy, std::size_t agents) {
    return derive_seed(derive_seed(sweep_seed, hash_name(strategy_name(policy))), agents);
}

SimConfig cell_config(const SweepSpec& spec, const StrategyKind& kind, std::size_t agents) {
    SimConfig config;
    config.topology = spec.topology;
    config.strategy = kind;
    config.num_agents = agents;
    config.aimd = spec.aimd;
    config.engine = spec.engine;
    config.seed = cell_seed(spec.seed, kind.policy, agents);
    return config;
}

std::vector<SummaryRow> sweep_agents(const SweepSpec& spec) {
    spec.validate();
    const std::size_t counts = spec.agent_counts.size();
    std::vector<SummaryRow> rows(spec.strategies.size() * counts);
    parallel_for(rows.size(), spec.threads, [&](std::size_t cell) {
        const StrategyKind& kind = spec.strategies[cell / counts];
        const std::size_t agents = spec.agent_counts[cell % counts];
        rows[cell] = {std::string(strategy_name(kind.policy)), agents, score(run(cell_config(spec, kind, agents)))};
    });
    return rows;
}

std::vector<EpsilonPoint> sweep_epsilon(const std::vector<double>& epsilons, std::size_t agents,
                                        const SweepSpec& spec) {
    if (epsilons.empty()) throw ValidationError("epsilon sweep: empty grid");
    std::vector<EpsilonPoint> points(epsilons.size());
    parallel_for(points.size(), spec.threads, [&](std::size_t i) {
        const StrategyKind kind{Policy::EpsilonGreedy, epsilons[i]};
        const AxiomScores s = score(run(cell_config(spec, kind, agents)));
        points[i] = {epsilons[i], s.efficiency_eta, s.loss_lambda};
    });
    return points;
}

ReportFormat parse_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "markdown" || name == "md") return ReportFormat::Markdown;
    throw ValidationError(fmt::format("unknown format '{}' (expected csv or markdown)", name));
}

std::string emit_summary(const std::vector<SummaryRow>& rows, ReportFormat format, bool raw) {
    if (rows.empty()) throw ValidationError("no rows to emit");
    std::string out;
    auto it = std::back_inserter(out);
    if (format == ReportFormat::Csv) {
        fmt::format_to(it, "{}\n", kSummaryHeader);
    } else {
        fmt::format_to(it, "| Strategy | Agents | Oscillation | Loss | Fairness | Efficiency | Stability | Loss Avoidance |\n");
        fmt::format_to(it, "|---|---:|---:|---:|---:|---:|---:|---:|\n");
    }
    const char* pattern = format == ReportFormat::Csv ? "{},{},{},{},{},{},{},{}\n"
                                                      : "| {} | {} | {} | {} | {} | {} | {} | {} |\n";
    for (const auto& r : rows) {
        const AxiomScores& s = r.scores;
        fmt::format_to(it, fmt::runtime(pattern), r.strategy, r.agents, number(s.oscillation, raw),
                       number(s.loss_lambda, raw), number(s.fairness_phi, raw), number(s.efficiency_eta, raw),
                       number(s.stability_sigma, raw), number(s.loss_avoidance, raw));
    }
    return out;
}

std::string emit_epsilon(const std::vector<EpsilonPoint>& points, bool raw) {
    if (points.empty()) throw ValidationError("no epsilon points to emit");
    std::string out = fmt::format("{}\n", kEpsilonHeader);
    for (const auto& p : points) {
        fmt::format_to(std::back_inserter(out), "{},{},{}\n", number(p.epsilon, raw), number(p.efficiency, raw),
                       number(p.loss, raw));
    }
    return out;
}

std::vector<SummaryRow> parse_summary_csv(std::string_view text) {
    std::vector<SummaryRow> rows;
    bool header_seen = false;
    std::size_t offset = 0;
    while (offset < text.size()) {
        const std::size_t eol = std::min(text.find('\n', offset), text.size());
        const std::string_view line = trim_cr(text.substr(offset, eol - offset));
        const std::size_t line_offset = offset;
        offset = eol + 1;
        if (line.empty()) continue;

        if (!header_seen) {
            if (line != kSummaryHeader) {
                throw ParseError(fmt::format("summary CSV: expected header '{}'", kSummaryHeader), line_offset);
            }
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 8) {
            throw ParseError(fmt::format("summary CSV: expected 8 fields at byte {}, got {}", line_offset, f.size()),
                             line_offset);
        }
        if (!parse_policy(f[0])) {
            throw ParseError(fmt::format("summary CSV: unknown strategy '{}' at byte {}", f[0], line_offset),
                             line_offset);
        }
        SummaryRow row;
        row.strategy = std::string(f[0]);
        row.agents = parse_field<std::size_t>(f[1], "agents", line_offset);
        AxiomScores& s = row.scores;
        s.oscillation = parse_field<double>(f[2], "oscillation", line_offset);
        s.loss_lambda = parse_field<double>(f[3], "loss", line_offset);
        s.fairness_phi = parse_field<double>(f[4], "fairness", line_offset);
        s.efficiency_eta = parse_field<double>(f[5], "efficiency", line_offset);
        s.stability_sigma = parse_field<double>(f[6], "stability", line_offset);
        s.loss_avoidance = parse_field<double>(f[7], "loss_avoidance", line_offset);
        s.goodput = s.efficiency_eta - s.loss_lambda;
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError("summary CSV: empty input", 0);
    if (rows.empty()) throw ParseError("summary CSV: no data rows", text.size());
    return rows;
}

}  // namespace mpsim
