#pragma once

#include <span>

#include "mpsim/engine.hpp"

namespace mpsim {

struct AxiomScores {
    double oscillation = 0.0;     // Mbps
    double loss_lambda = 0.0;     // Mbps
    double fairness_phi = 1.0;    // [1/N, 1]
    double efficiency_eta = 0.0;  // Mbps of sent load
    double goodput = 0.0;         // efficiency_eta - loss_lambda
    double stability_sigma = 1.0;
    double loss_avoidance = 1.0;

    friend bool operator==(const AxiomScores&, const AxiomScores&) = default;
};

// Mean over steps of the aggregate sent load. This is the quantity the
// published efficiency column tracks; delivered throughput is `goodput`.
double efficiency(const Telemetry& telemetry);

// Mean over steps of the aggregate overflow.
double loss(const Telemetry& telemetry);

// Mean over steps of the population standard deviation of path loads.
double oscillation(const Telemetry& telemetry);

// Mean over steps of sum_p min(load_p, capacity_p). Independent of
// efficiency/loss; used to cross-check goodput.
double delivered_goodput(const Telemetry& telemetry);

double stability(double oscillation);
double loss_avoidance(double loss_lambda);

// Jain's index (sum x)^2 / (N sum x^2). Throws ValidationError for an
// empty or all-zero input.
double jain_fairness(std::span<const double> values);

AxiomScores score(const Telemetry& telemetry);

}  // namespace mpsim
