#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "granet/dataset.hpp"
#include "granet/errors.hpp"
#include "granet/interval.hpp"
#include "granet/rng.hpp"

namespace granet {

// Dense row-major matrix, just big enough for small feedforward nets.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }

    bool operator==(const Matrix&) const = default;
};

// Feedforward regression network: layer_sizes = {inputs, hidden..., 1}.
// weights[l] maps layer l (cols) to layer l+1 (rows).
struct NetworkModel {
    std::vector<std::size_t> layer_sizes;
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
    Activation hidden_activation = Activation::sigmoid;
    Activation output_activation = Activation::identity;

    std::size_t input_size() const { return layer_sizes.empty() ? 0 : layer_sizes.front(); }
    std::size_t num_weight_layers() const { return weights.size(); }
    Activation activation_at(std::size_t layer) const {
        return layer + 1 == num_weight_layers() ? output_activation : hidden_activation;
    }

    // Checks the shape chain against layer_sizes and that every parameter is
    // finite. Throws InvalidInputError / DimensionError.
    void validate() const;

    bool operator==(const NetworkModel&) const = default;
};

enum class Regularizer { none, l1, l_half };

Regularizer regularizer_from_string(const std::string& name);
std::string to_string(Regularizer reg);

struct TrainingConfig {
    double learning_rate = 0.1;
    std::size_t epochs = 2000;
    Regularizer regularizer = Regularizer::none;
    double reg_strength = 0.0;  // lambda
    std::uint64_t seed = 0;
    double init_scale = 0.5;  // weights start uniform in [-init_scale, init_scale]

    void validate() const;
};

struct ParameterGradient {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
};

// Deterministic scalar prediction for one feature vector.
double forward(const NetworkModel& model, std::span<const double> x);

// Mean over the batch of squared error, without the regularization penalty.
double mean_squared_error(const NetworkModel& model, const Dataset& batch);

// Full training objective: MSE plus the configured weight penalty. This is
// what `gradient` differentiates.
double loss(const NetworkModel& model, const Dataset& batch, const TrainingConfig& config);

// Gradient of `loss` with respect to every weight and bias. The penalty term
// applies to weights only.
ParameterGradient gradient(const NetworkModel& model, const Dataset& batch,
                           const TrainingConfig& config);

struct TrainResult {
    NetworkModel model;
    double final_mse = 0.0;
};

// Seeded initialization followed by full-batch gradient descent.
TrainResult train(const Dataset& dataset, const std::vector<std::size_t>& layer_sizes,
                  const TrainingConfig& config);

// Fresh model with weights and biases drawn uniform in [-init_scale, init_scale].
NetworkModel random_model(const std::vector<std::size_t>& layer_sizes,
                          double init_scale, Rng& rng,
                          Activation hidden = Activation::sigmoid,
                          Activation output = Activation::identity);

// JSON text with layer sizes, activation names, and row-major parameter
// arrays at full precision; loading reproduces forward outputs bit-exactly.
std::string serialize_model(const NetworkModel& model);
NetworkModel deserialize_model(const std::string& text);
void save_model(const NetworkModel& model, const std::string& path);
NetworkModel load_model(const std::string& path);

}  // namespace granet
