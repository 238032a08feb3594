#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "granet/granulation.hpp"

namespace granet {

// Global-best particle swarm with constriction-style defaults.
struct PsoConfig {
    std::size_t swarm_size = 30;
    std::size_t iterations = 200;
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    std::uint64_t seed = 0;
    // Stop early when the global best has not improved for this many
    // consecutive iterations.
    std::size_t stagnation_limit = 50;

    void validate() const;
};

struct AllocationResult {
    GranularityAllocation best_allocation;
    double best_q1 = 0.0;
    // Global best after the initial evaluation and after each iteration;
    // nondecreasing by construction.
    std::vector<double> q1_history;
    std::size_t iterations_run = 0;
    ObjectiveScores scores;  // C, S, B, Q1 at the optimum
};

// Maps an unconstrained vector onto the budget: negatives clip to zero, the
// rest rescales so components sum to m * base_alpha. An all-zero vector falls
// back to the uniform allocation.
GranularityAllocation project_to_budget(std::span<const double> raw, double base_alpha);

// Called once per fitness evaluation; useful for instrumentation.
using EvaluationObserver =
    std::function<void(const GranularityAllocation&, double q1)>;

// Searches the budget simplex for the Q1-maximizing allocation. The uniform
// allocation is seeded as one initial particle, so the result is never worse
// than it. Deterministic given the seed.
AllocationResult optimize(const NetworkModel& model, const Dataset& dataset,
                          double base_alpha, const ObjectiveConfig& objective,
                          const PsoConfig& pso,
                          const EvaluationObserver& observer = nullptr);

struct AlphaSweepRow {
    double base_alpha = 0.0;
    ObjectiveScores scores;  // at that alpha's optimized allocation
};

// Runs the optimizer once per candidate system granularity; the resulting
// table locates the best alpha for a dataset.
std::vector<AlphaSweepRow> sweep_alpha(const NetworkModel& model, const Dataset& dataset,
                                       const std::vector<double>& alphas,
                                       const ObjectiveConfig& objective,
                                       const PsoConfig& pso);

}  // namespace granet
