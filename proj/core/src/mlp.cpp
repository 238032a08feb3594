#include "granet/mlp.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace granet {

namespace {

constexpr double kLHalfEpsilon = 1e-8;  // smoothing for the L1/2 derivative at w = 0

double sign(double w) {
    if (w > 0.0) return 1.0;
    if (w < 0.0) return -1.0;
    return 0.0;
}

// Derivative of the penalty with respect to one weight.
double penalty_derivative(Regularizer reg, double lambda, double w) {
    switch (reg) {
        case Regularizer::none: return 0.0;
        case Regularizer::l1: return lambda * sign(w);
        case Regularizer::l_half:
            return lambda * sign(w) / (2.0 * std::sqrt(std::abs(w) + kLHalfEpsilon));
    }
    return 0.0;
}

double penalty_value(Regularizer reg, double lambda, const std::vector<Matrix>& weights) {
    if (reg == Regularizer::none || lambda == 0.0) return 0.0;
    double total = 0.0;
    for (const auto& layer : weights) {
        for (double w : layer.data) {
            total += reg == Regularizer::l1 ? std::abs(w) : std::sqrt(std::abs(w));
        }
    }
    return lambda * total;
}

// Forward pass keeping each layer's activations; activations[0] is the input.
std::vector<std::vector<double>> forward_trace(const NetworkModel& model,
                                               std::span<const double> x) {
    std::vector<std::vector<double>> activations;
    activations.reserve(model.num_weight_layers() + 1);
    activations.emplace_back(x.begin(), x.end());
    for (std::size_t l = 0; l < model.num_weight_layers(); ++l) {
        const Matrix& w = model.weights[l];
        const auto& prev = activations.back();
        std::vector<double> next(w.rows);
        Activation act = model.activation_at(l);
        for (std::size_t j = 0; j < w.rows; ++j) {
            double acc = model.biases[l][j];
            for (std::size_t i = 0; i < w.cols; ++i) {
                acc += w.at(j, i) * prev[i];
            }
            next[j] = apply_activation(act, acc);
        }
        activations.push_back(std::move(next));
    }
    return activations;
}

void check_batch(const NetworkModel& model, const Dataset& batch) {
    if (batch.size() == 0) {
        throw InvalidInputError("gradient: batch is empty");
    }
    if (batch.num_attributes() != model.input_size()) {
        throw DimensionError("batch has " + std::to_string(batch.num_attributes()) +
                             " attributes, model expects " +
                             std::to_string(model.input_size()));
    }
}

}  // namespace

void NetworkModel::validate() const {
    if (layer_sizes.size() < 2) {
        throw DimensionError("model needs at least an input and an output layer");
    }
    for (std::size_t s : layer_sizes) {
        if (s == 0) throw DimensionError("layer sizes must be positive");
    }
    if (layer_sizes.back() != 1) {
        throw DimensionError("output layer must have exactly one neuron");
    }
    if (weights.size() != layer_sizes.size() - 1 || biases.size() != weights.size()) {
        throw DimensionError("parameter layer count does not match layer_sizes");
    }
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (weights[l].rows != layer_sizes[l + 1] || weights[l].cols != layer_sizes[l] ||
            biases[l].size() != layer_sizes[l + 1]) {
            throw DimensionError("parameter shapes do not chain at layer " + std::to_string(l));
        }
        for (double w : weights[l].data) {
            if (!std::isfinite(w)) throw InvalidInputError("non-finite weight in layer " + std::to_string(l));
        }
        for (double b : biases[l]) {
            if (!std::isfinite(b)) throw InvalidInputError("non-finite bias in layer " + std::to_string(l));
        }
    }
}

Regularizer regularizer_from_string(const std::string& name) {
    if (name == "none") return Regularizer::none;
    if (name == "l1") return Regularizer::l1;
    if (name == "l0.5" || name == "l1/2" || name == "l_half") return Regularizer::l_half;
    throw ConfigError("unknown regularizer '" + name + "' (expected 'none', 'l1' or 'l0.5')");
}

std::string to_string(Regularizer reg) {
    switch (reg) {
        case Regularizer::none: return "none";
        case Regularizer::l1: return "l1";
        case Regularizer::l_half: return "l0.5";
    }
    return "none";
}

void TrainingConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw InvalidInputError("learning_rate must be positive and finite");
    }
    if (epochs == 0) throw InvalidInputError("epochs must be at least 1");
    if (reg_strength < 0.0 || !std::isfinite(reg_strength)) {
        throw InvalidInputError("reg_strength must be nonnegative and finite");
    }
    if (!(init_scale > 0.0) || !std::isfinite(init_scale)) {
        throw InvalidInputError("init_scale must be positive and finite");
    }
}

double forward(const NetworkModel& model, std::span<const double> x) {
    if (x.size() != model.input_size()) {
        throw DimensionError("forward: input has " + std::to_string(x.size()) +
                             " values, model expects " + std::to_string(model.input_size()));
    }
    std::vector<double> current(x.begin(), x.end());
    for (std::size_t l = 0; l < model.num_weight_layers(); ++l) {
        const Matrix& w = model.weights[l];
        std::vector<double> next(w.rows);
        Activation act = model.activation_at(l);
        for (std::size_t j = 0; j < w.rows; ++j) {
            double acc = model.biases[l][j];
            for (std::size_t i = 0; i < w.cols; ++i) {
                acc += w.at(j, i) * current[i];
            }
            next[j] = apply_activation(act, acc);
        }
        current = std::move(next);
    }
    return current[0];
}

double mean_squared_error(const NetworkModel& model, const Dataset& batch) {
    check_batch(model, batch);
    double total = 0.0;
    for (std::size_t r = 0; r < batch.size(); ++r) {
        double err = forward(model, batch.features[r]) - batch.targets[r];
        total += err * err;
    }
    return total / static_cast<double>(batch.size());
}

double loss(const NetworkModel& model, const Dataset& batch, const TrainingConfig& config) {
    return mean_squared_error(model, batch) +
           penalty_value(config.regularizer, config.reg_strength, model.weights);
}

ParameterGradient gradient(const NetworkModel& model, const Dataset& batch,
                           const TrainingConfig& config) {
    check_batch(model, batch);

    ParameterGradient grad;
    grad.weights.reserve(model.num_weight_layers());
    grad.biases.reserve(model.num_weight_layers());
    for (std::size_t l = 0; l < model.num_weight_layers(); ++l) {
        grad.weights.emplace_back(model.weights[l].rows, model.weights[l].cols);
        grad.biases.emplace_back(model.biases[l].size(), 0.0);
    }

    const double inv_n = 1.0 / static_cast<double>(batch.size());
    for (std::size_t r = 0; r < batch.size(); ++r) {
        auto activations = forward_trace(model, batch.features[r]);
        // MSE without the 1/2 factor: dL/dy = 2 (y - t) / n.
        std::vector<double> delta{2.0 * (activations.back()[0] - batch.targets[r]) * inv_n};

        for (std::size_t l = model.num_weight_layers(); l-- > 0;) {
            const Matrix& w = model.weights[l];
            const auto& in = activations[l];
            const auto& out = activations[l + 1];
            // delta currently holds dL/d(activation); convert through the activation.
            for (std::size_t j = 0; j < w.rows; ++j) {
                if (model.activation_at(l) == Activation::sigmoid) {
                    delta[j] *= out[j] * (1.0 - out[j]);
                }
                grad.biases[l][j] += delta[j];
                for (std::size_t i = 0; i < w.cols; ++i) {
                    grad.weights[l].at(j, i) += delta[j] * in[i];
                }
            }
            if (l > 0) {
                std::vector<double> prev_delta(w.cols, 0.0);
                for (std::size_t j = 0; j < w.rows; ++j) {
                    for (std::size_t i = 0; i < w.cols; ++i) {
                        prev_delta[i] += delta[j] * w.at(j, i);
                    }
                }
                delta = std::move(prev_delta);
            }
        }
    }

    if (config.regularizer != Regularizer::none && config.reg_strength > 0.0) {
        for (std::size_t l = 0; l < model.num_weight_layers(); ++l) {
            for (std::size_t k = 0; k < model.weights[l].data.size(); ++k) {
                grad.weights[l].data[k] += penalty_derivative(
                    config.regularizer, config.reg_strength, model.weights[l].data[k]);
            }
        }
    }
    return grad;
}

NetworkModel random_model(const std::vector<std::size_t>& layer_sizes,
                          double init_scale, Rng& rng,
                          Activation hidden, Activation output) {
    NetworkModel model;
    model.layer_sizes = layer_sizes;
    model.hidden_activation = hidden;
    model.output_activation = output;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        Matrix w(layer_sizes[l + 1], layer_sizes[l]);
        for (double& v : w.data) v = rng.uniform(-init_scale, init_scale);
        std::vector<double> b(layer_sizes[l + 1]);
        for (double& v : b) v = rng.uniform(-init_scale, init_scale);
        model.weights.push_back(std::move(w));
        model.biases.push_back(std::move(b));
    }
    model.validate();
    return model;
}

TrainResult train(const Dataset& dataset, const std::vector<std::size_t>& layer_sizes,
                  const TrainingConfig& config) {
    config.validate();
    if (dataset.size() == 0) {
        throw InvalidInputError("train: dataset is empty");
    }
    if (layer_sizes.empty() || layer_sizes.front() != dataset.num_attributes()) {
        throw DimensionError("train: first layer size must equal the dataset's attribute count");
    }

    Rng rng(config.seed);
    NetworkModel model = random_model(layer_sizes, config.init_scale, rng);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        ParameterGradient grad = gradient(model, dataset, config);
        for (std::size_t l = 0; l < model.num_weight_layers(); ++l) {
            for (std::size_t k = 0; k < model.weights[l].data.size(); ++k) {
                model.weights[l].data[k] -= config.learning_rate * grad.weights[l].data[k];
            }
            for (std::size_t j = 0; j < model.biases[l].size(); ++j) {
                model.biases[l][j] -= config.learning_rate * grad.biases[l][j];
            }
        }
        double mse = mean_squared_error(model, dataset);
        if (!std::isfinite(mse)) {
            throw DivergenceError("training diverged at epoch " + std::to_string(epoch + 1) +
                                  ": loss is not finite");
        }
    }
    double final_mse = mean_squared_error(model, dataset);
    return {std::move(model), final_mse};
}

}  // namespace granet
