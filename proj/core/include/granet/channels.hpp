#pragma once

#include <string>
#include <vector>

#include "granet/errors.hpp"
#include "granet/interval.hpp"

namespace granet {

// A delivery channel with its preset attention interval.
struct Channel {
    std::string name;
    Interval target;
};

class ChannelCatalog {
public:
    explicit ChannelCatalog(std::vector<Channel> channels);

    const std::vector<Channel>& channels() const { return channels_; }
    std::size_t size() const { return channels_.size(); }

    // The bundled default catalog of news delivery channels.
    static ChannelCatalog builtin();

private:
    std::vector<Channel> channels_;
};

// One channel record per line: "name,lo,hi". The name may itself contain
// commas; the two numeric fields are anchored at the end of the line. '#'
// lines and blank lines are skipped.
ChannelCatalog load_catalog(const std::string& path);

// Interval Jaccard: overlap length over union length, in [0, 1]. Two
// identical points match at 1. A point contained in a wider interval scores
// 1 / (width + 1) instead of the Jaccard zero, so point predictions still
// rank channels.
double match_degree(const Interval& a, const Interval& b);

struct Recommendation {
    std::string channel;
    double degree = 0.0;
};

// Channels sorted by degree descending; ties broken by narrower channel
// interval, then by name. Truncated to top_k.
std::vector<Recommendation> recommend(const Interval& news, const ChannelCatalog& catalog,
                                      std::size_t top_k);

}  // namespace granet
