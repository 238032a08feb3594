#include <fstream>
#include <sstream>

#include <json.hpp>

#include "granet/mlp.hpp"

namespace granet {

std::string serialize_model(const NetworkModel& model) {
    model.validate();
    nlohmann::ordered_json doc;
    doc["layer_sizes"] = model.layer_sizes;
    doc["hidden_activation"] = to_string(model.hidden_activation);
    doc["output_activation"] = to_string(model.output_activation);
    auto& layers = doc["layers"] = nlohmann::ordered_json::array();
    for (std::size_t l = 0; l < model.num_weight_layers(); ++l) {
        nlohmann::ordered_json layer;
        layer["rows"] = model.weights[l].rows;
        layer["cols"] = model.weights[l].cols;
        layer["weights"] = model.weights[l].data;  // row-major
        layer["bias"] = model.biases[l];
        layers.push_back(std::move(layer));
    }
    return doc.dump(2) + "\n";
}

NetworkModel deserialize_model(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model document is not valid JSON: ") + e.what());
    }
    NetworkModel model;
    try {
        model.layer_sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
        model.hidden_activation =
            activation_from_string(doc.at("hidden_activation").get<std::string>());
        model.output_activation =
            activation_from_string(doc.at("output_activation").get<std::string>());
        for (const auto& layer : doc.at("layers")) {
            Matrix w;
            w.rows = layer.at("rows").get<std::size_t>();
            w.cols = layer.at("cols").get<std::size_t>();
            w.data = layer.at("weights").get<std::vector<double>>();
            if (w.data.size() != w.rows * w.cols) {
                throw ParseError("weight array length does not match rows*cols");
            }
            model.weights.push_back(std::move(w));
            model.biases.push_back(layer.at("bias").get<std::vector<double>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model document is missing fields: ") + e.what());
    }
    model.validate();
    return model;
}

void save_model(const NetworkModel& model, const std::string& path) {
    std::ofstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot write model file '" + path + "'");
    }
    file << serialize_model(model);
}

NetworkModel load_model(const std::string& path) {
    std::ifstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot open model file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    return deserialize_model(buffer.str());
}

}  // namespace granet
