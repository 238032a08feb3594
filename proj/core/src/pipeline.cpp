#include "granet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include <json.hpp>

#include "granet/rng.hpp"

namespace granet {

namespace {

// Stage seeds derived from the global seed; adding a stage never disturbs
// the streams of the others.
enum SeedStream : std::uint64_t { kSplit = 1, kTrain = 2, kPso = 3, kCf = 4 };

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw PipelineError(std::string(name) + ": " + e.what());
    }
}

std::vector<std::size_t> importance_order_of(const std::vector<double>& alphas) {
    std::vector<std::size_t> order(alphas.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Smaller granularity means the attribute matters more.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (alphas[a] != alphas[b]) return alphas[a] < alphas[b];
        return a < b;
    });
    return order;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

}  // namespace

Report run_pipeline(const PipelineConfig& config) {
    Dataset raw = stage("load-dataset", [&] { return load_dataset(config.dataset_path); });
    ChannelCatalog catalog = stage("load-catalog", [&] {
        return config.catalog_path.empty() ? ChannelCatalog::builtin()
                                           : load_catalog(config.catalog_path);
    });

    auto split_parts = stage("split", [&] {
        auto parts = split_train_test(raw, config.train_fraction, mix_seed(config.seed, kSplit));
        if (parts.first.size() == 0 || parts.second.size() == 0) {
            throw InvalidInputError("split produced an empty partition (n = " +
                                    std::to_string(raw.size()) + ", fraction = " +
                                    std::to_string(config.train_fraction) + ")");
        }
        return parts;
    });
    Dataset& train_raw = split_parts.first;
    Dataset& test_raw = split_parts.second;

    Dataset train_norm = stage("normalize", [&] { return normalize(train_raw); });
    const Scaler& scaler = *train_norm.scaler;
    Dataset test_norm = stage("normalize", [&] { return apply_scaler(test_raw, scaler); });

    TrainingConfig training = config.training;
    training.seed = mix_seed(config.seed, kTrain);
    TrainResult trained = stage("train", [&] {
        std::vector<std::size_t> layers;
        layers.push_back(train_norm.num_attributes());
        layers.insert(layers.end(), config.hidden_layers.begin(), config.hidden_layers.end());
        layers.push_back(1);
        return train(train_norm, layers, training);
    });

    PsoConfig pso = config.pso;
    pso.seed = mix_seed(config.seed, kPso);
    AllocationResult allocation = stage("optimize", [&] {
        return optimize(trained.model, train_norm, config.base_alpha, config.objective, pso);
    });

    ObjectiveScores test_scores = stage("evaluate", [&] {
        return evaluate_objective(trained.model, test_norm, allocation.best_allocation,
                                  config.objective);
    });

    std::vector<RecordReport> records;
    std::vector<double> midpoints;
    stage("recommend", [&] {
        records.reserve(test_norm.size());
        midpoints.reserve(test_norm.size());
        for (std::size_t r = 0; r < test_norm.size(); ++r) {
            Interval out_norm = interval_forward(
                trained.model, granulate(test_norm.features[r], allocation.best_allocation));
            Interval out = scaler.denormalize_target(out_norm);
            RecordReport rec;
            rec.index = r;
            rec.target = test_raw.targets[r];
            rec.output = out;
            rec.display_lo = static_cast<long>(std::floor(out.lo()));
            rec.display_hi = static_cast<long>(std::ceil(out.hi()));
            rec.channels = recommend(out, catalog, config.top_k);
            midpoints.push_back(out.midpoint());
            records.push_back(std::move(rec));
        }
        return 0;
    });
    double mae_midpoint = stage("evaluate", [&] { return mae(midpoints, test_raw.targets); });

    std::optional<CfEvaluation> cf;
    if (!config.ratings_path.empty()) {
        cf = stage("cf-baseline", [&] {
            RatingMatrix ratings = load_ratings(config.ratings_path);
            return evaluate_cf(ratings, config.cf_neighbors, 1.0 - config.train_fraction,
                               mix_seed(config.seed, kCf));
        });
    }

    std::vector<std::size_t> importance = importance_order_of(allocation.best_allocation.alphas());
    return Report{config,
                  raw.feature_names,
                  trained.model.layer_sizes,
                  trained.final_mse,
                  std::move(allocation),
                  std::move(importance),
                  test_scores,
                  mae_midpoint,
                  cf,
                  std::move(records)};
}

std::string report_to_json(const Report& report) {
    nlohmann::ordered_json doc;

    nlohmann::ordered_json cfg;
    cfg["dataset"] = report.config.dataset_path;
    cfg["catalog"] = report.config.catalog_path.empty() ? "(builtin)" : report.config.catalog_path;
    cfg["ratings"] = report.config.ratings_path;
    cfg["hidden_layers"] = report.config.hidden_layers;
    cfg["learning_rate"] = report.config.training.learning_rate;
    cfg["epochs"] = report.config.training.epochs;
    cfg["regularizer"] = to_string(report.config.training.regularizer);
    cfg["reg_strength"] = report.config.training.reg_strength;
    cfg["init_scale"] = report.config.training.init_scale;
    cfg["base_alpha"] = report.config.base_alpha;
    cfg["target_balance"] = report.config.objective.target_balance;
    cfg["swarm_size"] = report.config.pso.swarm_size;
    cfg["iterations"] = report.config.pso.iterations;
    cfg["inertia"] = report.config.pso.inertia;
    cfg["cognitive"] = report.config.pso.cognitive;
    cfg["social"] = report.config.pso.social;
    cfg["stagnation_limit"] = report.config.pso.stagnation_limit;
    cfg["train_fraction"] = report.config.train_fraction;
    cfg["top_k"] = report.config.top_k;
    cfg["cf_neighbors"] = report.config.cf_neighbors;
    cfg["seed"] = report.config.seed;
    cfg["derived_seeds"] = {
        {"split", mix_seed(report.config.seed, 1)},
        {"train", mix_seed(report.config.seed, 2)},
        {"pso", mix_seed(report.config.seed, 3)},
        {"cf", mix_seed(report.config.seed, 4)},
    };
    doc["config"] = std::move(cfg);

    doc["model"] = {
        {"layer_sizes", report.layer_sizes},
        {"final_mse", report.final_mse},
    };

    nlohmann::ordered_json alloc;
    alloc["base_alpha"] = report.allocation.best_allocation.base_alpha();
    alloc["alphas"] = report.allocation.best_allocation.alphas();
    alloc["q1"] = report.allocation.best_q1;
    alloc["coverage"] = report.allocation.scores.coverage;
    alloc["specificity"] = report.allocation.scores.specificity;
    alloc["balance"] = report.allocation.scores.balance;
    alloc["iterations_run"] = report.allocation.iterations_run;
    alloc["q1_history"] = report.allocation.q1_history;
    doc["allocation"] = std::move(alloc);

    auto& attrs = doc["attributes"] = nlohmann::ordered_json::array();
    const auto& alphas = report.allocation.best_allocation.alphas();
    std::vector<std::size_t> rank(alphas.size());
    for (std::size_t pos = 0; pos < report.importance_order.size(); ++pos) {
        rank[report.importance_order[pos]] = pos + 1;
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        attrs.push_back({
            {"name", report.feature_names[i]},
            {"alpha", alphas[i]},
            {"importance_rank", rank[i]},
        });
    }

    doc["test_evaluation"] = {
        {"coverage", report.test_scores.coverage},
        {"specificity", report.test_scores.specificity},
        {"balance", report.test_scores.balance},
        {"q1", report.test_scores.q1},
        {"mae_midpoint", report.mae_midpoint},
    };

    if (report.cf) {
        doc["cf_baseline"] = {
            {"k", report.cf->k},
            {"test_count", report.cf->test_count},
            {"mae", report.cf->mae},
        };
    } else {
        doc["cf_baseline"] = nullptr;
    }

    auto& recs = doc["records"] = nlohmann::ordered_json::array();
    for (const auto& rec : report.records) {
        nlohmann::ordered_json entry;
        entry["index"] = rec.index;
        entry["target"] = rec.target;
        entry["interval"] = {rec.output.lo(), rec.output.hi()};
        entry["interval_display"] = {rec.display_lo, rec.display_hi};
        auto& chans = entry["channels"] = nlohmann::ordered_json::array();
        for (const auto& c : rec.channels) {
            chans.push_back({{"name", c.channel}, {"degree", c.degree}});
        }
        recs.push_back(std::move(entry));
    }

    return doc.dump(2) + "\n";
}

std::string report_to_text(const Report& report) {
    std::string out;
    char buf[256];

    out += "== model ==\n";
    out += "layers:";
    for (std::size_t s : report.layer_sizes) {
        out += " " + std::to_string(s);
    }
    out += "\nfinal training MSE (normalized): " + fmt("%.6f", report.final_mse) + "\n\n";

    const auto& alphas = report.allocation.best_allocation.alphas();
    std::snprintf(buf, sizeof(buf), "== granularity allocation (alpha = %g, budget = %g) ==\n",
                  report.allocation.best_allocation.base_alpha(),
                  report.allocation.best_allocation.budget());
    out += buf;
    std::vector<std::size_t> rank(alphas.size());
    for (std::size_t pos = 0; pos < report.importance_order.size(); ++pos) {
        rank[report.importance_order[pos]] = pos + 1;
    }
    out += "rank  alpha     attribute\n";
    for (std::size_t pos = 0; pos < report.importance_order.size(); ++pos) {
        std::size_t i = report.importance_order[pos];
        std::snprintf(buf, sizeof(buf), "%-5zu %-9.4f %s%s\n", pos + 1, alphas[i],
                      report.feature_names[i].c_str(), pos == 0 ? "  (most important)" : "");
        out += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "train: C=%.4f S=%.4f B=%.4f Q1=%.6f (%zu PSO iterations)\n",
                  report.allocation.scores.coverage, report.allocation.scores.specificity,
                  report.allocation.scores.balance, report.allocation.best_q1,
                  report.allocation.iterations_run);
    out += buf;
    std::snprintf(buf, sizeof(buf), "test:  C=%.4f S=%.4f B=%.4f Q1=%.6f\n",
                  report.test_scores.coverage, report.test_scores.specificity,
                  report.test_scores.balance, report.test_scores.q1);
    out += buf;
    out += "MAE (interval midpoint vs target): " + fmt("%.4f", report.mae_midpoint) + "\n\n";

    out += "== test records ==\n";
    out += "idx   target   interval              rounded    top channel (degree)\n";
    for (const auto& rec : report.records) {
        std::string top = rec.channels.empty()
                              ? std::string("-")
                              : rec.channels.front().channel + " (" +
                                    fmt("%.3f", rec.channels.front().degree) + ")";
        char rounded[32];
        std::snprintf(rounded, sizeof(rounded), "[%ld, %ld]", rec.display_lo, rec.display_hi);
        std::snprintf(buf, sizeof(buf), "%-5zu %-8.3f [%8.3f, %8.3f]  %-10s %s\n", rec.index,
                      rec.target, rec.output.lo(), rec.output.hi(), rounded, top.c_str());
        out += buf;
    }
    out += "\n";

    if (report.cf) {
        std::snprintf(buf, sizeof(buf),
                      "== collaborative filtering baseline ==\nk=%zu  held-out ratings=%zu  "
                      "MAE=%.4f\n",
                      report.cf->k, report.cf->test_count, report.cf->mae);
        out += buf;
    }
    return out;
}

}  // namespace granet
