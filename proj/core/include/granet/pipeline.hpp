#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "granet/allocator.hpp"
#include "granet/baseline_cf.hpp"
#include "granet/channels.hpp"
#include "granet/dataset.hpp"
#include "granet/granulation.hpp"
#include "granet/mlp.hpp"

namespace granet {

// End-to-end run configuration. Every stochastic stage (split shuffle,
// weight init, swarm) draws its seed from the single global `seed`; the seed
// fields inside `training` and `pso` are overridden.
struct PipelineConfig {
    std::string dataset_path;
    std::string catalog_path;  // empty: use the builtin catalog
    std::string ratings_path;  // empty: skip the collaborative-filtering baseline
    std::vector<std::size_t> hidden_layers = {8};
    TrainingConfig training;
    double base_alpha = 0.5;
    ObjectiveConfig objective;
    PsoConfig pso;
    double train_fraction = 0.7;
    std::size_t top_k = 3;
    std::size_t cf_neighbors = 5;
    std::uint64_t seed = 42;
};

struct RecordReport {
    std::size_t index = 0;            // position within the test split
    double target = 0.0;              // raw scale
    Interval output{0.0, 0.0};        // denormalized prediction interval
    long display_lo = 0;              // outward-rounded for the summary table
    long display_hi = 0;
    std::vector<Recommendation> channels;
};

struct Report {
    PipelineConfig config;
    std::vector<std::string> feature_names;
    std::vector<std::size_t> layer_sizes;
    double final_mse = 0.0;             // training split, normalized scale
    AllocationResult allocation;        // optimized on the training split
    std::vector<std::size_t> importance_order;  // attribute indices, most important first
    ObjectiveScores test_scores;
    double mae_midpoint = 0.0;          // interval midpoints vs raw targets, test split
    std::optional<CfEvaluation> cf;
    std::vector<RecordReport> records;
};

// Split, normalize, train, optimize the granularity allocation, score the
// test split, recommend channels per test record, and evaluate the baseline
// when ratings are supplied. Deterministic given the config.
Report run_pipeline(const PipelineConfig& config);

// Structured document; byte-identical across runs with equal config.
std::string report_to_json(const Report& report);

// Human-readable summary tables.
std::string report_to_text(const Report& report);

}  // namespace granet
