#include "granet/allocator.hpp"

#include <algorithm>
#include <cmath>

#include "granet/rng.hpp"

namespace granet {

void PsoConfig::validate() const {
    if (swarm_size < 2) throw InvalidInputError("swarm_size must be at least 2");
    if (iterations < 1) throw InvalidInputError("iterations must be at least 1");
    if (!std::isfinite(inertia) || !std::isfinite(cognitive) || !std::isfinite(social)) {
        throw InvalidInputError("PSO coefficients must be finite");
    }
}

GranularityAllocation project_to_budget(std::span<const double> raw, double base_alpha) {
    if (raw.empty()) {
        throw InvalidInputError("project_to_budget: empty vector");
    }
    if (!(base_alpha > 0.0) || !std::isfinite(base_alpha)) {
        throw InvalidInputError("project_to_budget: base granularity must be positive");
    }
    std::vector<double> alphas(raw.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i])) {
            throw InvalidInputError("project_to_budget: component " + std::to_string(i) +
                                    " is not finite");
        }
        alphas[i] = std::max(raw[i], 0.0);
        sum += alphas[i];
    }
    const double budget = static_cast<double>(raw.size()) * base_alpha;
    if (sum == 0.0) {
        return GranularityAllocation::uniform(raw.size(), base_alpha);
    }
    const double factor = budget / sum;
    for (double& a : alphas) a *= factor;

    // Absorb the rescaling's rounding residue into the largest component so
    // the budget holds exactly at any magnitude.
    double rescaled_sum = 0.0;
    for (double a : alphas) rescaled_sum += a;
    auto largest = std::max_element(alphas.begin(), alphas.end());
    *largest = std::max(0.0, *largest + (budget - rescaled_sum));

    return GranularityAllocation(std::move(alphas), base_alpha);
}

namespace {

double evaluate_particle(const NetworkModel& model, const Dataset& dataset,
                         const GranularityAllocation& alloc,
                         const ObjectiveConfig& objective,
                         const EvaluationObserver& observer,
                         std::size_t particle, std::size_t iteration) {
    double q1 = 0.0;
    try {
        q1 = evaluate_objective(model, dataset, alloc, objective).q1;
    } catch (const Error& e) {
        throw OptimizerError("fitness evaluation failed for particle " +
                             std::to_string(particle) + " at iteration " +
                             std::to_string(iteration) + ": " + e.what());
    }
    if (!std::isfinite(q1)) {
        throw OptimizerError("non-finite fitness for particle " + std::to_string(particle) +
                             " at iteration " + std::to_string(iteration));
    }
    if (observer) observer(alloc, q1);
    return q1;
}

}  // namespace

AllocationResult optimize(const NetworkModel& model, const Dataset& dataset,
                          double base_alpha, const ObjectiveConfig& objective,
                          const PsoConfig& pso, const EvaluationObserver& observer) {
    pso.validate();
    objective.validate();
    if (dataset.size() == 0) {
        throw InvalidInputError("optimize: dataset is empty");
    }
    const std::size_t m = model.input_size();
    if (dataset.num_attributes() != m) {
        throw DimensionError("optimize: dataset attribute count does not match the model");
    }
    const double budget = static_cast<double>(m) * base_alpha;

    Rng rng(pso.seed);
    std::vector<std::vector<double>> position(pso.swarm_size, std::vector<double>(m));
    std::vector<std::vector<double>> velocity(pso.swarm_size, std::vector<double>(m, 0.0));

    // Particle 0 starts at the uniform allocation; the rest are random.
    position[0].assign(m, base_alpha);
    for (std::size_t p = 1; p < pso.swarm_size; ++p) {
        for (std::size_t d = 0; d < m; ++d) {
            position[p][d] = rng.uniform(0.0, budget);
        }
    }

    std::vector<std::vector<double>> best_position = position;
    std::vector<double> best_fitness(pso.swarm_size);
    std::size_t global_best = 0;
    for (std::size_t p = 0; p < pso.swarm_size; ++p) {
        best_fitness[p] = evaluate_particle(model, dataset,
                                            project_to_budget(position[p], base_alpha),
                                            objective, observer, p, 0);
        if (best_fitness[p] > best_fitness[global_best]) global_best = p;
    }
    std::vector<double> global_best_position = best_position[global_best];
    double global_best_fitness = best_fitness[global_best];

    AllocationResult result{GranularityAllocation::uniform(m, base_alpha), 0.0, {}, 0, {}};
    result.q1_history.push_back(global_best_fitness);

    std::size_t stagnant = 0;
    for (std::size_t iter = 1; iter <= pso.iterations; ++iter) {
        bool improved = false;
        for (std::size_t p = 0; p < pso.swarm_size; ++p) {
            for (std::size_t d = 0; d < m; ++d) {
                double r1 = rng.uniform();
                double r2 = rng.uniform();
                double v = pso.inertia * velocity[p][d] +
                           pso.cognitive * r1 * (best_position[p][d] - position[p][d]) +
                           pso.social * r2 * (global_best_position[d] - position[p][d]);
                velocity[p][d] = std::clamp(v, -budget, budget);
                // keep particles inside the search box, where the projection
                // still distinguishes neighbouring positions
                position[p][d] = std::clamp(position[p][d] + velocity[p][d], 0.0, budget);
            }
            double fitness = evaluate_particle(model, dataset,
                                               project_to_budget(position[p], base_alpha),
                                               objective, observer, p, iter);
            if (fitness > best_fitness[p]) {
                best_fitness[p] = fitness;
                best_position[p] = position[p];
            }
        }
        for (std::size_t p = 0; p < pso.swarm_size; ++p) {
            if (best_fitness[p] > global_best_fitness) {
                global_best_fitness = best_fitness[p];
                global_best_position = best_position[p];
                improved = true;
            }
        }
        result.q1_history.push_back(global_best_fitness);
        result.iterations_run = iter;
        stagnant = improved ? 0 : stagnant + 1;
        if (stagnant >= pso.stagnation_limit) break;
    }

    result.best_allocation = project_to_budget(global_best_position, base_alpha);
    result.best_q1 = global_best_fitness;
    result.scores = evaluate_objective(model, dataset, result.best_allocation, objective);
    return result;
}

std::vector<AlphaSweepRow> sweep_alpha(const NetworkModel& model, const Dataset& dataset,
                                       const std::vector<double>& alphas,
                                       const ObjectiveConfig& objective,
                                       const PsoConfig& pso) {
    if (alphas.empty()) {
        throw InvalidInputError("sweep_alpha: no granularity values given");
    }
    std::vector<AlphaSweepRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        AllocationResult result = optimize(model, dataset, alpha, objective, pso);
        rows.push_back({alpha, result.scores});
    }
    return rows;
}

}  // namespace granet
