#include <doctest.h>

#include <cmath>
#include <string>

#include "granet/pipeline.hpp"

#ifndef GRANET_DATA_DIR
#define GRANET_DATA_DIR "data"
#endif

using namespace granet;

namespace {

PipelineConfig quick_config() {
    PipelineConfig cfg;
    cfg.dataset_path = std::string(GRANET_DATA_DIR) + "/synthetic.csv";
    cfg.hidden_layers = {4};
    cfg.training.epochs = 150;
    cfg.training.learning_rate = 0.5;
    cfg.pso.swarm_size = 10;
    cfg.pso.iterations = 20;
    cfg.seed = 424242;
    return cfg;
}

}  // namespace

TEST_CASE("pipeline reports are byte-identical across runs") {
    PipelineConfig cfg = quick_config();
    Report a = run_pipeline(cfg);
    Report b = run_pipeline(cfg);
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(report_to_text(a) == report_to_text(b));

    PipelineConfig other = cfg;
    other.seed = 55;
    Report c = run_pipeline(other);
    CHECK(report_to_json(a) != report_to_json(c));
}

TEST_CASE("pipeline splits, ranks attributes, and keeps intervals ordered") {
    PipelineConfig cfg = quick_config();
    Report report = run_pipeline(cfg);

    // ceil(0.3 * 200) = 60 test records
    CHECK(report.records.size() == 60);
    CHECK(report.feature_names.size() == 5);
    CHECK(report.layer_sizes == std::vector<std::size_t>{5, 4, 1});
    CHECK(std::isfinite(report.final_mse));

    // importance order sorts granularities ascending
    const auto& alphas = report.allocation.best_allocation.alphas();
    REQUIRE(report.importance_order.size() == alphas.size());
    for (std::size_t i = 1; i < report.importance_order.size(); ++i) {
        CHECK(alphas[report.importance_order[i - 1]] <= alphas[report.importance_order[i]]);
    }

    for (const auto& rec : report.records) {
        CHECK(rec.output.lo() <= rec.output.hi());
        CHECK(rec.display_lo <= rec.display_hi);
        CHECK(static_cast<double>(rec.display_lo) <= rec.output.lo());
        CHECK(rec.output.hi() <= static_cast<double>(rec.display_hi));
        CHECK(rec.channels.size() <= cfg.top_k);
        CHECK_FALSE(rec.channels.empty());
    }
    CHECK(std::isfinite(report.mae_midpoint));
    CHECK(report.mae_midpoint >= 0.0);
    CHECK_FALSE(report.cf.has_value());
}

TEST_CASE("pipeline evaluates the baseline when ratings are supplied") {
    PipelineConfig cfg = quick_config();
    cfg.ratings_path = std::string(GRANET_DATA_DIR) + "/ratings.csv";
    cfg.cf_neighbors = 4;
    Report report = run_pipeline(cfg);
    REQUIRE(report.cf.has_value());
    CHECK(report.cf->k == 4);
    CHECK(report.cf->test_count > 0);
    CHECK(std::isfinite(report.cf->mae));

    std::string json = report_to_json(report);
    CHECK(json.find("cf_baseline") != std::string::npos);
}

TEST_CASE("pipeline failures carry stage labels") {
    PipelineConfig missing = quick_config();
    missing.dataset_path = "/nonexistent/file.csv";
    try {
        run_pipeline(missing);
        FAIL("expected a pipeline error");
    } catch (const PipelineError& e) {
        CHECK(std::string(e.what()).find("load-dataset") != std::string::npos);
    }

    PipelineConfig bad_catalog = quick_config();
    bad_catalog.catalog_path = "/nonexistent/catalog.csv";
    try {
        run_pipeline(bad_catalog);
        FAIL("expected a pipeline error");
    } catch (const PipelineError& e) {
        CHECK(std::string(e.what()).find("load-catalog") != std::string::npos);
    }
}

TEST_CASE("report json echoes the configuration") {
    PipelineConfig cfg = quick_config();
    Report report = run_pipeline(cfg);
    std::string json = report_to_json(report);
    CHECK(json.find("\"seed\": 424242") != std::string::npos);
    CHECK(json.find("synthetic.csv") != std::string::npos);
    CHECK(json.find("\"q1_history\"") != std::string::npos);
    CHECK(json.find("\"importance_rank\"") != std::string::npos);
}
