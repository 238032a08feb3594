#include "granet/granulation.hpp"

#include <cmath>

namespace granet {

GranularityAllocation::GranularityAllocation(std::vector<double> alphas, double base_alpha)
    : alphas_(std::move(alphas)), base_alpha_(base_alpha) {
    if (alphas_.empty()) {
        throw InvalidInputError("allocation needs at least one attribute");
    }
    if (!(base_alpha_ > 0.0) || !std::isfinite(base_alpha_)) {
        throw InvalidInputError("base granularity must be positive and finite");
    }
    double sum = 0.0;
    for (double a : alphas_) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw InvalidInputError("per-attribute granularities must be nonnegative and finite");
        }
        sum += a;
    }
    if (std::abs(sum - budget()) > kBudgetTolerance) {
        throw InvalidInputError("granularity budget violated: sum " + std::to_string(sum) +
                                " vs required " + std::to_string(budget()));
    }
}

GranularityAllocation GranularityAllocation::uniform(std::size_t m, double base_alpha) {
    return GranularityAllocation(std::vector<double>(m, base_alpha), base_alpha);
}

void ObjectiveConfig::validate() const {
    if (!(target_balance >= 0.0 && target_balance <= 1.0)) {
        throw InvalidInputError("target balance b0 must lie in [0, 1]");
    }
}

std::vector<Interval> granulate(std::span<const double> x,
                                const GranularityAllocation& alloc) {
    if (x.size() != alloc.size()) {
        throw DimensionError("granulate: " + std::to_string(x.size()) + " features vs " +
                             std::to_string(alloc.size()) + " granularities");
    }
    std::vector<Interval> granules;
    granules.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double half = 0.5 * alloc.alphas()[i];
        granules.emplace_back(x[i] - half, x[i] + half);
    }
    return granules;
}

Interval interval_forward(const NetworkModel& model, std::span<const Interval> ivs) {
    if (ivs.size() != model.input_size()) {
        throw DimensionError("interval_forward: input has " + std::to_string(ivs.size()) +
                             " intervals, model expects " +
                             std::to_string(model.input_size()));
    }
    std::vector<Interval> current(ivs.begin(), ivs.end());
    for (std::size_t l = 0; l < model.num_weight_layers(); ++l) {
        const Matrix& w = model.weights[l];
        Activation act = model.activation_at(l);
        std::vector<Interval> next;
        next.reserve(w.rows);
        for (std::size_t j = 0; j < w.rows; ++j) {
            Interval pre = affine_image(w.row(j), model.biases[l][j], current);
            next.push_back(apply_monotone(act, pre));
        }
        current = std::move(next);
    }
    return current[0];
}

namespace {

struct PassTotals {
    std::size_t covered = 0;
    double width_sum = 0.0;
};

PassTotals propagate_all(const NetworkModel& model, const Dataset& dataset,
                         const GranularityAllocation& alloc) {
    if (dataset.size() == 0) {
        throw InvalidInputError("objective evaluation needs a nonempty dataset");
    }
    PassTotals totals;
    for (std::size_t r = 0; r < dataset.size(); ++r) {
        Interval out = interval_forward(model, granulate(dataset.features[r], alloc));
        if (contains(out, dataset.targets[r])) ++totals.covered;
        totals.width_sum += out.width();
    }
    return totals;
}

double specificity_from_widths(double width_sum, std::size_t n,
                               const GranularityAllocation& alloc) {
    return width_sum /
           (static_cast<double>(n) * static_cast<double>(alloc.size()) * alloc.base_alpha());
}

}  // namespace

double coverage(const NetworkModel& model, const Dataset& dataset,
                const GranularityAllocation& alloc) {
    PassTotals totals = propagate_all(model, dataset, alloc);
    return static_cast<double>(totals.covered) / static_cast<double>(dataset.size());
}

double specificity(const NetworkModel& model, const Dataset& dataset,
                   const GranularityAllocation& alloc) {
    PassTotals totals = propagate_all(model, dataset, alloc);
    return specificity_from_widths(totals.width_sum, dataset.size(), alloc);
}

double balance(const GranularityAllocation& alloc) {
    // Same-order products so the uniform allocation yields exactly 1.
    double numerator = 1.0;
    double denominator = 1.0;
    for (double a : alloc.alphas()) {
        numerator *= a;
        denominator *= alloc.base_alpha();
    }
    double b = numerator / denominator;
    // The budget constraint bounds B by the mean inequality; rounding may
    // drift a hair past the ends.
    if (b < 0.0) return 0.0;
    if (b > 1.0) return 1.0;
    return b;
}

double objective_q1(double coverage, double specificity, double balance,
                    const ObjectiveConfig& config) {
    config.validate();
    if (!(coverage >= 0.0 && coverage <= 1.0)) {
        throw InvalidInputError("coverage must lie in [0, 1]");
    }
    if (!(specificity >= 0.0) || !std::isfinite(specificity)) {
        throw InvalidInputError("specificity must be nonnegative and finite");
    }
    if (!(balance >= 0.0 && balance <= 1.0)) {
        throw InvalidInputError("balance must lie in [0, 1]");
    }
    double b0 = config.target_balance;
    double vertex = b0 <= 0.5 ? (1.0 - b0) * (1.0 - b0) : b0 * b0;
    double diff = balance - b0;
    double factor = vertex - diff * diff;
    if (factor < 0.0) factor = 0.0;  // nonnegative by construction; guard rounding
    return coverage * std::exp(-specificity) * factor;
}

ObjectiveScores evaluate_objective(const NetworkModel& model, const Dataset& dataset,
                                   const GranularityAllocation& alloc,
                                   const ObjectiveConfig& config) {
    PassTotals totals = propagate_all(model, dataset, alloc);
    ObjectiveScores scores;
    scores.coverage = static_cast<double>(totals.covered) / static_cast<double>(dataset.size());
    scores.specificity = specificity_from_widths(totals.width_sum, dataset.size(), alloc);
    scores.balance = balance(alloc);
    scores.q1 = objective_q1(scores.coverage, scores.specificity, scores.balance, config);
    return scores;
}

}  // namespace granet
