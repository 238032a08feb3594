#include "granet/interval.hpp"

#include <algorithm>
#include <cmath>

namespace granet {

Activation activation_from_string(const std::string& name) {
    if (name == "identity") return Activation::identity;
    if (name == "sigmoid") return Activation::sigmoid;
    throw ConfigError("unknown activation '" + name + "' (expected 'identity' or 'sigmoid')");
}

std::string to_string(Activation activation) {
    switch (activation) {
        case Activation::identity: return "identity";
        case Activation::sigmoid: return "sigmoid";
    }
    throw ConfigError("unknown activation id " +
                      std::to_string(static_cast<int>(activation)));
}

double apply_activation(Activation activation, double x) {
    switch (activation) {
        case Activation::identity:
            return x;
        case Activation::sigmoid:
            // Split at 0 to avoid overflow in exp for large |x|.
            if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
            {
                double e = std::exp(x);
                return e / (1.0 + e);
            }
    }
    throw ConfigError("unknown activation id " +
                      std::to_string(static_cast<int>(activation)));
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidInputError("interval endpoints must be finite");
    }
    if (lo > hi) {
        throw InvalidInputError("interval lower endpoint " + std::to_string(lo) +
                                " exceeds upper endpoint " + std::to_string(hi));
    }
}

Interval scale(double w, const Interval& iv) {
    if (!std::isfinite(w)) {
        throw InvalidInputError("scale: weight must be finite");
    }
    double a = w * iv.lo();
    double b = w * iv.hi();
    return Interval(std::min(a, b), std::max(a, b));
}

Interval add(const Interval& a, const Interval& b) {
    return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval affine_image(std::span<const double> weights, double bias,
                      std::span<const Interval> ivs) {
    if (weights.size() != ivs.size() || weights.empty()) {
        throw DimensionError("affine_image: " + std::to_string(weights.size()) +
                             " weights vs " + std::to_string(ivs.size()) +
                             " intervals (need equal, nonzero lengths)");
    }
    if (!std::isfinite(bias)) {
        throw InvalidInputError("affine_image: bias must be finite");
    }
    // Same accumulation order as the point forward pass, so degenerate boxes
    // reproduce it bit for bit.
    double lo = bias;
    double hi = bias;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double w = weights[i];
        if (!std::isfinite(w)) {
            throw InvalidInputError("affine_image: weight " + std::to_string(i) +
                                    " is not finite");
        }
        if (w >= 0.0) {
            lo += w * ivs[i].lo();
            hi += w * ivs[i].hi();
        } else {
            lo += w * ivs[i].hi();
            hi += w * ivs[i].lo();
        }
    }
    return Interval(lo, hi);
}

Interval apply_monotone(Activation activation, const Interval& iv) {
    return Interval(apply_activation(activation, iv.lo()),
                    apply_activation(activation, iv.hi()));
}

bool contains(const Interval& iv, double y) {
    return iv.lo() <= y && y <= iv.hi();
}

}  // namespace granet
