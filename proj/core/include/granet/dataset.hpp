#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "granet/errors.hpp"
#include "granet/interval.hpp"

namespace granet {

// Min-max range of one column. max == min marks a constant column, which
// normalizes to 0.
struct ColumnScale {
    double min = 0.0;
    double max = 0.0;

    double normalize(double x) const {
        if (max == min) return 0.0;
        return (x - min) / (max - min);
    }
    double denormalize(double x) const { return min + x * (max - min); }
};

struct Scaler {
    std::vector<ColumnScale> features;
    ColumnScale target;

    Interval denormalize_target(const Interval& iv) const {
        return Interval(target.denormalize(iv.lo()), target.denormalize(iv.hi()));
    }
};

// n records of m features plus one scalar target.
struct Dataset {
    std::vector<std::string> feature_names;
    std::string target_name;
    std::vector<std::vector<double>> features;  // n rows of m values
    std::vector<double> targets;                // n values
    std::optional<Scaler> scaler;               // set once normalized

    std::size_t size() const { return targets.size(); }
    std::size_t num_attributes() const { return feature_names.size(); }
};

// Parses a delimited text file: header row naming m feature columns plus one
// target column (last), then one numeric row per record.
Dataset load_dataset(const std::string& path);

// Min-max normalizes every feature column and the target to [0, 1], fitting
// and storing the scaler. Constant columns map to 0.
Dataset normalize(const Dataset& raw);

// Scales a dataset with an existing fit (e.g. the training split's scaler).
// Values may fall outside [0, 1] when the data exceeds the fitted ranges.
Dataset apply_scaler(const Dataset& raw, const Scaler& scaler);

// Seeded shuffle followed by a prefix split; the first floor(train_fraction*n)
// shuffled records form the training set.
std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset,
                                             double train_fraction,
                                             std::uint64_t seed);

}  // namespace granet
