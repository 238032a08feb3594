#pragma once

#include <span>
#include <string>

#include "granet/errors.hpp"

namespace granet {

// Activations are restricted to nondecreasing functions so that the image of
// an interval is exactly [f(lo), f(hi)].
enum class Activation { identity, sigmoid };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation activation);
double apply_activation(Activation activation, double x);

// Closed interval [lo, hi] with finite endpoints. Construction with lo > hi
// is rejected rather than silently swapped.
class Interval {
public:
    Interval(double lo, double hi);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }
    double midpoint() const { return 0.5 * (lo_ + hi_); }

    bool operator==(const Interval&) const = default;

private:
    double lo_;
    double hi_;
};

// Exact image of iv under multiplication by w.
Interval scale(double w, const Interval& iv);

// Minkowski sum [a.lo + b.lo, a.hi + b.hi].
Interval add(const Interval& a, const Interval& b);

// Exact range of w.x + bias over the input box.
Interval affine_image(std::span<const double> weights, double bias,
                      std::span<const Interval> ivs);

// Exact image [f(lo), f(hi)] of a nondecreasing activation.
Interval apply_monotone(Activation activation, const Interval& iv);

// Closed-endpoint membership test; false for NaN.
bool contains(const Interval& iv, double y);

}  // namespace granet
