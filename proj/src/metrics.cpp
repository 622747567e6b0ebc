#include "mpsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mpsim/error.hpp"

namespace mpsim {

namespace {

void require_records(const Telemetry& telemetry) {
    if (telemetry.records.empty()) throw ValidationError("telemetry has no records");
}

double sum(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
}

double population_stddev(std::span<const double> xs) {
    const double mean = sum(xs) / static_cast<double>(xs.size());
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(xs.size()));
}

template <typename PerStep>
double mean_over_steps(const Telemetry& telemetry, PerStep per_step) {
    require_records(telemetry);
    double total = 0.0;
    for (const auto& r : telemetry.records) total += per_step(r);
    return total / static_cast<double>(telemetry.records.size());
}

}  // namespace

double efficiency(const Telemetry& telemetry) {
    return mean_over_steps(telemetry, [](const StepRecord& r) { return sum(r.load_mbps); });
}

double loss(const Telemetry& telemetry) {
    return mean_over_steps(telemetry, [](const StepRecord& r) { return sum(r.overflow_mbps); });
}

double oscillation(const Telemetry& telemetry) {
    return mean_over_steps(telemetry, [](const StepRecord& r) {
        if (r.load_mbps.empty()) throw ValidationError("step record has no paths");
        return population_stddev(r.load_mbps);
    });
}

double delivered_goodput(const Telemetry& telemetry) {
    const auto& paths = telemetry.config.topology.paths;
    return mean_over_steps(telemetry, [&](const StepRecord& r) {
        double delivered = 0.0;
        for (std::size_t p = 0; p < r.load_mbps.size(); ++p) {
            delivered += std::min(r.load_mbps[p], paths.at(p).capacity_mbps);
        }
        return delivered;
    });
}

double stability(double oscillation) { return 1.0 / (1.0 + oscillation); }

double loss_avoidance(double loss_lambda) { return 1.0 / (1.0 + loss_lambda); }

double jain_fairness(std::span<const double> values) {
    if (values.empty()) throw ValidationError("undefined fairness: no values");
    double s = 0.0;
    double sq = 0.0;
    for (double x : values) {
        s += x;
        sq += x * x;
    }
    if (sq == 0.0) throw ValidationError("undefined fairness: all values are zero");
    return (s * s) / (static_cast<double>(values.size()) * sq);
}

AxiomScores score(const Telemetry& telemetry) {
    AxiomScores s;
    s.oscillation = oscillation(telemetry);
    s.loss_lambda = loss(telemetry);
    s.efficiency_eta = efficiency(telemetry);
    s.goodput = s.efficiency_eta - s.loss_lambda;
    s.fairness_phi = jain_fairness(telemetry.final_cwnds);
    s.stability_sigma = stability(s.oscillation);
    s.loss_avoidance = loss_avoidance(s.loss_lambda);
    return s;
}

}  // namespace mpsim
