#include "granet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "granet/rng.hpp"

namespace granet {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line, char delim = ',') {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, delim)) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == delim) fields.push_back("");
    return fields;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col,
                  const std::string& col_name) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line_no) + ", column " +
                         std::to_string(col + 1) + " (" + col_name + "): '" + cell +
                         "' is not a finite number");
    }
    return value;
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    std::ifstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot open dataset file '" + path + "'");
    }

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(file, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        header = split_fields(line);
        break;
    }
    if (header.size() < 2) {
        throw ParseError("dataset header must name at least one feature column "
                         "and one target column");
    }

    Dataset ds;
    ds.feature_names.assign(header.begin(), header.end() - 1);
    ds.target_name = header.back();
    const std::size_t width = header.size();

    while (std::getline(file, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != width) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(width) + " fields, found " +
                             std::to_string(fields.size()));
        }
        std::vector<double> row(width - 1);
        for (std::size_t c = 0; c + 1 < width; ++c) {
            row[c] = parse_cell(fields[c], line_no, c, ds.feature_names[c]);
        }
        ds.targets.push_back(parse_cell(fields[width - 1], line_no, width - 1, ds.target_name));
        ds.features.push_back(std::move(row));
    }

    if (ds.targets.empty()) {
        throw InvalidInputError("dataset '" + path + "' has a header but no data rows");
    }
    return ds;
}

Dataset normalize(const Dataset& raw) {
    if (raw.size() == 0) {
        throw InvalidInputError("normalize: dataset is empty");
    }
    const std::size_t m = raw.num_attributes();

    Scaler scaler;
    scaler.features.resize(m);
    for (std::size_t c = 0; c < m; ++c) {
        double mn = raw.features[0][c];
        double mx = mn;
        for (const auto& row : raw.features) {
            mn = std::min(mn, row[c]);
            mx = std::max(mx, row[c]);
        }
        scaler.features[c] = {mn, mx};
    }
    auto [tmin, tmax] = std::minmax_element(raw.targets.begin(), raw.targets.end());
    scaler.target = {*tmin, *tmax};

    Dataset out = apply_scaler(raw, scaler);
    out.scaler = scaler;
    return out;
}

Dataset apply_scaler(const Dataset& raw, const Scaler& scaler) {
    if (scaler.features.size() != raw.num_attributes()) {
        throw DimensionError("apply_scaler: scaler has " +
                             std::to_string(scaler.features.size()) +
                             " feature columns, dataset has " +
                             std::to_string(raw.num_attributes()));
    }
    Dataset out;
    out.feature_names = raw.feature_names;
    out.target_name = raw.target_name;
    out.features.reserve(raw.size());
    out.targets.reserve(raw.size());
    for (std::size_t r = 0; r < raw.size(); ++r) {
        std::vector<double> row(raw.num_attributes());
        for (std::size_t c = 0; c < raw.num_attributes(); ++c) {
            row[c] = scaler.features[c].normalize(raw.features[r][c]);
        }
        out.features.push_back(std::move(row));
        out.targets.push_back(scaler.target.normalize(raw.targets[r]));
    }
    out.scaler = scaler;
    return out;
}

std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset,
                                             double train_fraction,
                                             std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw InvalidInputError("split fraction must lie strictly between 0 and 1");
    }
    const std::size_t n = dataset.size();
    // The epsilon keeps floor() at the mathematical value when
    // train_fraction * n is an integer up to rounding.
    const auto train_count =
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 1e-9));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);

    auto take = [&](std::size_t begin, std::size_t end) {
        Dataset part;
        part.feature_names = dataset.feature_names;
        part.target_name = dataset.target_name;
        part.scaler = dataset.scaler;
        for (std::size_t i = begin; i < end; ++i) {
            part.features.push_back(dataset.features[order[i]]);
            part.targets.push_back(dataset.targets[order[i]]);
        }
        return part;
    };
    return {take(0, train_count), take(train_count, n)};
}

}  // namespace granet
