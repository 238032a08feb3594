// granet command line: train, optimize, recommend, evaluate, pipeline.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "granet/pipeline.hpp"

namespace {

using namespace granet;

struct CommonOptions {
    std::string dataset;
    std::string catalog;
    std::string ratings;
    std::vector<std::size_t> hidden{8};
    double learning_rate = 0.1;
    std::size_t epochs = 2000;
    std::string regularizer = "none";
    double reg_strength = 0.0;
    double init_scale = 0.5;
    double base_alpha = 0.5;
    double target_balance = 1.0;
    std::size_t swarm = 30;
    std::size_t iterations = 200;
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    std::size_t stagnation = 50;
    double train_fraction = 0.7;
    std::size_t top_k = 3;
    std::size_t cf_k = 5;
    std::uint64_t seed = 42;
};

void add_training_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--hidden", opt.hidden, "hidden layer sizes")->capture_default_str();
    cmd->add_option("--lr", opt.learning_rate, "learning rate")->capture_default_str();
    cmd->add_option("--epochs", opt.epochs, "training epochs")->capture_default_str();
    cmd->add_option("--regularizer", opt.regularizer, "none, l1 or l0.5")->capture_default_str();
    cmd->add_option("--lambda", opt.reg_strength, "regularization strength")
        ->capture_default_str();
    cmd->add_option("--init-scale", opt.init_scale, "uniform weight init range")
        ->capture_default_str();
}

void add_pso_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--alpha", opt.base_alpha, "system granularity")->capture_default_str();
    cmd->add_option("--b0", opt.target_balance, "target balance degree in [0,1]")
        ->capture_default_str();
    cmd->add_option("--swarm", opt.swarm, "particle count")->capture_default_str();
    cmd->add_option("--iterations", opt.iterations, "PSO iterations")->capture_default_str();
    cmd->add_option("--inertia", opt.inertia, "inertia weight")->capture_default_str();
    cmd->add_option("--cognitive", opt.cognitive, "cognitive coefficient")
        ->capture_default_str();
    cmd->add_option("--social", opt.social, "social coefficient")->capture_default_str();
    cmd->add_option("--stagnation", opt.stagnation, "early-stop patience")
        ->capture_default_str();
}

PipelineConfig to_pipeline_config(const CommonOptions& opt) {
    PipelineConfig cfg;
    cfg.dataset_path = opt.dataset;
    cfg.catalog_path = opt.catalog;
    cfg.ratings_path = opt.ratings;
    cfg.hidden_layers = opt.hidden;
    cfg.training.learning_rate = opt.learning_rate;
    cfg.training.epochs = opt.epochs;
    cfg.training.regularizer = regularizer_from_string(opt.regularizer);
    cfg.training.reg_strength = opt.reg_strength;
    cfg.training.init_scale = opt.init_scale;
    cfg.base_alpha = opt.base_alpha;
    cfg.objective.target_balance = opt.target_balance;
    cfg.pso.swarm_size = opt.swarm;
    cfg.pso.iterations = opt.iterations;
    cfg.pso.inertia = opt.inertia;
    cfg.pso.cognitive = opt.cognitive;
    cfg.pso.social = opt.social;
    cfg.pso.stagnation_limit = opt.stagnation;
    cfg.train_fraction = opt.train_fraction;
    cfg.top_k = opt.top_k;
    cfg.cf_neighbors = opt.cf_k;
    cfg.seed = opt.seed;
    return cfg;
}

// train on the full (normalized) dataset and save the model
int run_train(const CommonOptions& opt, const std::string& out_path) {
    Dataset norm = normalize(load_dataset(opt.dataset));
    TrainingConfig training;
    training.learning_rate = opt.learning_rate;
    training.epochs = opt.epochs;
    training.regularizer = regularizer_from_string(opt.regularizer);
    training.reg_strength = opt.reg_strength;
    training.init_scale = opt.init_scale;
    training.seed = opt.seed;

    std::vector<std::size_t> layers;
    layers.push_back(norm.num_attributes());
    layers.insert(layers.end(), opt.hidden.begin(), opt.hidden.end());
    layers.push_back(1);

    TrainResult result = train(norm, layers, training);
    save_model(result.model, out_path);
    std::printf("trained %zu-record dataset, layers", norm.size());
    for (std::size_t s : result.model.layer_sizes) std::printf(" %zu", s);
    std::printf("\nfinal training MSE (normalized): %.6f\nmodel written to %s\n",
                result.final_mse, out_path.c_str());
    return 0;
}

void print_allocation(const Dataset& data, const AllocationResult& result) {
    std::printf("best Q1 = %.6f after %zu iterations\n", result.best_q1,
                result.iterations_run);
    std::printf("C = %.4f, S = %.4f, B = %.4f\n", result.scores.coverage,
                result.scores.specificity, result.scores.balance);
    std::printf("%-18s %s\n", "attribute", "alpha");
    const auto& alphas = result.best_allocation.alphas();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        std::printf("%-18s %.6f\n", data.feature_names[i].c_str(), alphas[i]);
    }
}

int run_optimize(const CommonOptions& opt, const std::string& model_path,
                 const std::string& sweep_spec) {
    Dataset norm = normalize(load_dataset(opt.dataset));
    NetworkModel model = load_model(model_path);

    ObjectiveConfig objective{opt.target_balance};
    PsoConfig pso;
    pso.swarm_size = opt.swarm;
    pso.iterations = opt.iterations;
    pso.inertia = opt.inertia;
    pso.cognitive = opt.cognitive;
    pso.social = opt.social;
    pso.stagnation_limit = opt.stagnation;
    pso.seed = opt.seed;

    if (!sweep_spec.empty()) {
        double lo = 0.0;
        double hi = 0.0;
        double step = 0.0;
        if (std::sscanf(sweep_spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
            step <= 0.0 || lo <= 0.0 || hi < lo) {
            throw InvalidInputError("--alpha-sweep expects lo:hi:step with 0 < lo <= hi");
        }
        std::vector<double> alphas;
        auto steps = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
        for (std::size_t i = 0; i <= steps; ++i) alphas.push_back(lo + step * static_cast<double>(i));
        auto rows = sweep_alpha(model, norm, alphas, objective, pso);
        std::printf("%-8s %-10s %-10s %-10s %-10s\n", "alpha", "Q1", "C", "S", "B");
        for (const auto& row : rows) {
            std::printf("%-8.3f %-10.6f %-10.4f %-10.4f %-10.4f\n", row.base_alpha,
                        row.scores.q1, row.scores.coverage, row.scores.specificity,
                        row.scores.balance);
        }
        return 0;
    }

    AllocationResult result = optimize(model, norm, opt.base_alpha, objective, pso);
    print_allocation(norm, result);
    return 0;
}

int run_recommend(const std::vector<double>& interval, const std::string& catalog_path,
                  std::size_t top_k) {
    ChannelCatalog catalog =
        catalog_path.empty() ? ChannelCatalog::builtin() : load_catalog(catalog_path);
    Interval news(interval[0], interval[1]);
    auto ranked = recommend(news, catalog, top_k);
    std::printf("news interval [%g, %g]\n", news.lo(), news.hi());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        std::printf("%zu. %-45s degree %.4f\n", i + 1, ranked[i].channel.c_str(),
                    ranked[i].degree);
    }
    return 0;
}

int run_evaluate(const CommonOptions& opt) {
    RatingMatrix matrix = load_ratings(opt.ratings);
    CfEvaluation eval =
        evaluate_cf(matrix, opt.cf_k, 1.0 - opt.train_fraction, opt.seed);
    std::printf("users=%zu items=%zu held-out=%zu k=%zu\nMAE = %.6f\n", matrix.num_users(),
                matrix.num_items(), eval.test_count, eval.k, eval.mae);
    return 0;
}

int run_full_pipeline(const CommonOptions& opt, const std::string& report_path) {
    Report report = run_pipeline(to_pipeline_config(opt));
    std::fputs(report_to_text(report).c_str(), stdout);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out.is_open()) {
            throw IoError("cannot write report file '" + report_path + "'");
        }
        out << report_to_json(report);
        std::printf("report written to %s\n", report_path.c_str());
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"granular neural network channel recommender"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");

    CommonOptions opt;
    std::string model_path = "model.json";
    std::string report_path;
    std::string sweep_spec;
    std::vector<double> interval_args;

    CLI::App* train_cmd = app.add_subcommand("train", "fit the regressor and save it");
    train_cmd->add_option("--dataset", opt.dataset, "dataset file")->required();
    add_training_flags(train_cmd, opt);
    train_cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    train_cmd->add_option("--out", model_path, "model output path")->capture_default_str();

    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "search the granularity allocation for a trained model");
    optimize_cmd->add_option("--dataset", opt.dataset, "dataset file")->required();
    optimize_cmd->add_option("--model", model_path, "model file")->required();
    add_pso_flags(optimize_cmd, opt);
    optimize_cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    optimize_cmd->add_option("--alpha-sweep", sweep_spec,
                             "emit a Q1 table over lo:hi:step instead of one run");

    CLI::App* recommend_cmd =
        app.add_subcommand("recommend", "rank channels for a prediction interval");
    recommend_cmd
        ->add_option("--interval", interval_args, "interval endpoints: lo hi")
        ->expected(2)
        ->required();
    recommend_cmd->add_option("--catalog", opt.catalog, "catalog file (default: builtin)");
    recommend_cmd->add_option("--top-k", opt.top_k, "results to print")->capture_default_str();

    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "hold-out MAE of the collaborative filtering baseline");
    evaluate_cmd->add_option("--ratings", opt.ratings, "ratings file")->required();
    evaluate_cmd->add_option("--k", opt.cf_k, "neighbour count")->capture_default_str();
    evaluate_cmd->add_option("--split", opt.train_fraction, "training fraction")
        ->capture_default_str();
    evaluate_cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();

    CLI::App* pipeline_cmd =
        app.add_subcommand("pipeline", "end-to-end: split, train, optimize, recommend");
    pipeline_cmd->add_option("--dataset", opt.dataset, "dataset file")->required();
    pipeline_cmd->add_option("--catalog", opt.catalog, "catalog file (default: builtin)");
    pipeline_cmd->add_option("--ratings", opt.ratings, "optional ratings for the baseline");
    add_training_flags(pipeline_cmd, opt);
    add_pso_flags(pipeline_cmd, opt);
    pipeline_cmd->add_option("--split", opt.train_fraction, "training fraction")
        ->capture_default_str();
    pipeline_cmd->add_option("--top-k", opt.top_k, "channels per record")
        ->capture_default_str();
    pipeline_cmd->add_option("--cf-k", opt.cf_k, "baseline neighbour count")
        ->capture_default_str();
    pipeline_cmd->add_option("--seed", opt.seed, "global seed")->capture_default_str();
    pipeline_cmd->add_option("--report", report_path, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed()) return run_train(opt, model_path);
        if (optimize_cmd->parsed()) return run_optimize(opt, model_path, sweep_spec);
        if (recommend_cmd->parsed()) return run_recommend(interval_args, opt.catalog, opt.top_k);
        if (evaluate_cmd->parsed()) return run_evaluate(opt);
        if (pipeline_cmd->parsed()) return run_full_pipeline(opt, report_path);
    } catch (const granet::Error& e) {
        std::cerr << "granet: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "granet: unexpected error: " << e.what() << "\n";
        return 2;
    }
}
