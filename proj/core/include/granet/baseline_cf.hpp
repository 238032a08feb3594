#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "granet/errors.hpp"

namespace granet {

// Sparse user-by-item ratings; missing entries are NaN internally.
class RatingMatrix {
public:
    RatingMatrix(std::vector<std::string> users, std::vector<std::string> items);

    static RatingMatrix from_triples(
        const std::vector<std::tuple<std::string, std::string, double>>& triples);

    std::size_t num_users() const { return users_.size(); }
    std::size_t num_items() const { return items_.size(); }
    const std::vector<std::string>& users() const { return users_; }
    const std::vector<std::string>& items() const { return items_; }

    std::size_t user_index(const std::string& user) const;  // LookupError if unknown
    std::size_t item_index(const std::string& item) const;

    bool has(std::size_t user, std::size_t item) const;
    double at(std::size_t user, std::size_t item) const;
    void set(std::size_t user, std::size_t item, double rating);
    void clear(std::size_t user, std::size_t item);

    // Mean of the user's present ratings; InvalidInputError when they have none.
    double user_mean(std::size_t user) const;

private:
    std::vector<std::string> users_;
    std::vector<std::string> items_;
    std::vector<double> ratings_;  // num_users x num_items, NaN = missing
};

// Delimited text with header "user,item,rating".
RatingMatrix load_ratings(const std::string& path);

struct CosineResult {
    double value = 0.0;
    // True when either vector had zero norm (or there was nothing to compare);
    // the value is defined as 0 in that case.
    bool zero_norm = false;
};

// Cosine of two aligned rating vectors (already reduced to co-rated items).
CosineResult cosine_similarity(std::span<const double> u, std::span<const double> v);

// Cosine over the two users' co-rated items; 0 when they share none.
double similarity_between_users(const RatingMatrix& matrix, std::size_t u, std::size_t v);

// Similarity-weighted average of the item's ratings among the k most similar
// users who rated it. Negative-similarity neighbors are excluded; with no
// usable neighbor the query user's mean rating is returned.
double predict_knn(const RatingMatrix& matrix, std::size_t user, std::size_t item,
                   std::size_t k);
double predict_knn(const RatingMatrix& matrix, const std::string& user,
                   const std::string& item, std::size_t k);

// Mean absolute error between predictions and truths.
double mae(std::span<const double> predictions, std::span<const double> truths);

struct CfEvaluation {
    std::size_t k = 0;
    std::size_t test_count = 0;
    double mae = 0.0;
};

// Masked-holdout evaluation: a seeded selection of roughly test_fraction of
// the ratings is removed from the matrix (never a user's last remaining
// rating), each removed rating is predicted from the rest, and the MAE is
// reported.
CfEvaluation evaluate_cf(const RatingMatrix& matrix, std::size_t k,
                         double test_fraction, std::uint64_t seed);

}  // namespace granet
