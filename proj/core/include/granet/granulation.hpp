#pragma once

#include <span>
#include <vector>

#include "granet/dataset.hpp"
#include "granet/errors.hpp"
#include "granet/interval.hpp"
#include "granet/mlp.hpp"

namespace granet {

// Per-attribute granule widths alpha_1..alpha_m under the fixed budget
// sum(alpha_i) = m * base_alpha.
class GranularityAllocation {
public:
    static constexpr double kBudgetTolerance = 1e-9;

    GranularityAllocation(std::vector<double> alphas, double base_alpha);

    // Every attribute gets the system granularity.
    static GranularityAllocation uniform(std::size_t m, double base_alpha);

    const std::vector<double>& alphas() const { return alphas_; }
    double base_alpha() const { return base_alpha_; }
    std::size_t size() const { return alphas_.size(); }
    double budget() const { return static_cast<double>(size()) * base_alpha_; }

private:
    std::vector<double> alphas_;
    double base_alpha_;
};

struct ObjectiveConfig {
    double target_balance = 1.0;  // b0, the balance degree we aim for

    void validate() const;
};

// i-th granule is the symmetric interval [x_i - alpha_i/2, x_i + alpha_i/2];
// never clamped to [0, 1].
std::vector<Interval> granulate(std::span<const double> x,
                                const GranularityAllocation& alloc);

// Layerwise exact propagation of an input box: affine range per neuron, then
// the monotone activation image. The output contains f(x) for every x in the
// box.
Interval interval_forward(const NetworkModel& model, std::span<const Interval> ivs);

// Fraction of records whose target falls inside the propagated output interval.
double coverage(const NetworkModel& model, const Dataset& dataset,
                const GranularityAllocation& alloc);

// Mean output-interval width per unit granularity: sum(widths) / (n * m * alpha).
double specificity(const NetworkModel& model, const Dataset& dataset,
                   const GranularityAllocation& alloc);

// Normalized product of granularities, prod(alpha_i) / alpha^m; 1 exactly on
// the uniform allocation, 0 when any attribute collapses.
double balance(const GranularityAllocation& alloc);

// Composite objective C * exp(-S) * (-(B - b0)^2 + X), where the vertex value
// X = (1-b0)^2 for b0 <= 1/2 and b0^2 for b0 >= 1/2 keeps the last factor
// nonnegative on B in [0, 1]. Higher is better.
double objective_q1(double coverage, double specificity, double balance,
                    const ObjectiveConfig& config);

struct ObjectiveScores {
    double coverage = 0.0;
    double specificity = 0.0;
    double balance = 0.0;
    double q1 = 0.0;
};

// Computes all four scores with a single pass over the dataset.
ObjectiveScores evaluate_objective(const NetworkModel& model, const Dataset& dataset,
                                   const GranularityAllocation& alloc,
                                   const ObjectiveConfig& config);

}  // namespace granet
