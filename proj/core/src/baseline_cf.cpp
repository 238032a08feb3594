#include "granet/baseline_cf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "granet/rng.hpp"

namespace granet {

namespace {
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
}

RatingMatrix::RatingMatrix(std::vector<std::string> users, std::vector<std::string> items)
    : users_(std::move(users)),
      items_(std::move(items)),
      ratings_(users_.size() * items_.size(), kMissing) {}

RatingMatrix RatingMatrix::from_triples(
    const std::vector<std::tuple<std::string, std::string, double>>& triples) {
    std::vector<std::string> users;
    std::vector<std::string> items;
    std::unordered_map<std::string, std::size_t> user_ix;
    std::unordered_map<std::string, std::size_t> item_ix;
    for (const auto& [user, item, rating] : triples) {
        if (user_ix.emplace(user, users.size()).second) users.push_back(user);
        if (item_ix.emplace(item, items.size()).second) items.push_back(item);
        if (!std::isfinite(rating)) {
            throw InvalidInputError("rating for (" + user + ", " + item + ") is not finite");
        }
    }
    RatingMatrix matrix(std::move(users), std::move(items));
    for (const auto& [user, item, rating] : triples) {
        std::size_t u = user_ix.at(user);
        std::size_t i = item_ix.at(item);
        if (matrix.has(u, i)) {
            throw InvalidInputError("duplicate rating for (" + user + ", " + item + ")");
        }
        matrix.set(u, i, rating);
    }
    return matrix;
}

std::size_t RatingMatrix::user_index(const std::string& user) const {
    auto it = std::find(users_.begin(), users_.end(), user);
    if (it == users_.end()) throw LookupError("unknown user '" + user + "'");
    return static_cast<std::size_t>(it - users_.begin());
}

std::size_t RatingMatrix::item_index(const std::string& item) const {
    auto it = std::find(items_.begin(), items_.end(), item);
    if (it == items_.end()) throw LookupError("unknown item '" + item + "'");
    return static_cast<std::size_t>(it - items_.begin());
}

bool RatingMatrix::has(std::size_t user, std::size_t item) const {
    return !std::isnan(ratings_[user * items_.size() + item]);
}

double RatingMatrix::at(std::size_t user, std::size_t item) const {
    return ratings_[user * items_.size() + item];
}

void RatingMatrix::set(std::size_t user, std::size_t item, double rating) {
    ratings_[user * items_.size() + item] = rating;
}

void RatingMatrix::clear(std::size_t user, std::size_t item) {
    ratings_[user * items_.size() + item] = kMissing;
}

double RatingMatrix::user_mean(std::size_t user) const {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (has(user, i)) {
            sum += at(user, i);
            ++count;
        }
    }
    if (count == 0) {
        throw InvalidInputError("user '" + users_[user] + "' has no ratings");
    }
    return sum / static_cast<double>(count);
}

RatingMatrix load_ratings(const std::string& path) {
    std::ifstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot open ratings file '" + path + "'");
    }
    std::vector<std::tuple<std::string, std::string, double>> triples;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(file, line)) {
        ++line_no;
        // trim trailing CR and surrounding whitespace
        std::size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r\n");
        std::string body = line.substr(b, e - b + 1);

        std::stringstream ss(body);
        std::string user, item, rating_text;
        if (!std::getline(ss, user, ',') || !std::getline(ss, item, ',') ||
            !std::getline(ss, rating_text)) {
            throw ParseError("ratings line " + std::to_string(line_no) +
                             ": expected 'user,item,rating'");
        }
        if (!saw_header) {
            saw_header = true;
            continue;  // header row
        }
        double rating = 0.0;
        auto [ptr, ec] =
            std::from_chars(rating_text.data(), rating_text.data() + rating_text.size(), rating);
        if (ec != std::errc{} || ptr != rating_text.data() + rating_text.size() ||
            !std::isfinite(rating)) {
            throw ParseError("ratings line " + std::to_string(line_no) + ": '" + rating_text +
                             "' is not a finite number");
        }
        triples.emplace_back(user, item, rating);
    }
    if (triples.empty()) {
        throw InvalidInputError("ratings file '" + path + "' has no data rows");
    }
    return RatingMatrix::from_triples(triples);
}

CosineResult cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw DimensionError("cosine_similarity: vector lengths differ");
    }
    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (u.empty() || nu == 0.0 || nv == 0.0) {
        return {0.0, true};
    }
    return {dot / (std::sqrt(nu) * std::sqrt(nv)), false};
}

double similarity_between_users(const RatingMatrix& matrix, std::size_t u, std::size_t v) {
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < matrix.num_items(); ++i) {
        if (matrix.has(u, i) && matrix.has(v, i)) {
            a.push_back(matrix.at(u, i));
            b.push_back(matrix.at(v, i));
        }
    }
    return cosine_similarity(a, b).value;
}

double predict_knn(const RatingMatrix& matrix, std::size_t user, std::size_t item,
                   std::size_t k) {
    if (k == 0) throw InvalidInputError("predict_knn: k must be at least 1");
    if (user >= matrix.num_users()) throw LookupError("user index out of range");
    if (item >= matrix.num_items()) throw LookupError("item index out of range");

    struct Neighbor {
        std::size_t index;
        double similarity;
    };
    std::vector<Neighbor> raters;
    for (std::size_t v = 0; v < matrix.num_users(); ++v) {
        if (v == user || !matrix.has(v, item)) continue;
        raters.push_back({v, similarity_between_users(matrix, user, v)});
    }
    std::sort(raters.begin(), raters.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.index < b.index;
    });
    if (raters.size() > k) raters.resize(k);

    double weight_sum = 0.0;
    double weighted = 0.0;
    for (const auto& n : raters) {
        if (n.similarity <= 0.0) continue;  // nonnegative weights only
        weight_sum += n.similarity;
        weighted += n.similarity * matrix.at(n.index, item);
    }
    if (weight_sum == 0.0) {
        return matrix.user_mean(user);
    }
    return weighted / weight_sum;
}

double predict_knn(const RatingMatrix& matrix, const std::string& user,
                   const std::string& item, std::size_t k) {
    return predict_knn(matrix, matrix.user_index(user), matrix.item_index(item), k);
}

double mae(std::span<const double> predictions, std::span<const double> truths) {
    if (predictions.size() != truths.size()) {
        throw InvalidInputError("mae: prediction and truth lengths differ");
    }
    if (predictions.empty()) {
        throw InvalidInputError("mae: empty input");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        total += std::abs(predictions[i] - truths[i]);
    }
    return total / static_cast<double>(predictions.size());
}

CfEvaluation evaluate_cf(const RatingMatrix& matrix, std::size_t k,
                         double test_fraction, std::uint64_t seed) {
    if (k == 0) throw InvalidInputError("evaluate_cf: k must be at least 1");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw InvalidInputError("evaluate_cf: test fraction must lie strictly between 0 and 1");
    }

    std::vector<std::pair<std::size_t, std::size_t>> rated;
    std::vector<std::size_t> per_user(matrix.num_users(), 0);
    for (std::size_t u = 0; u < matrix.num_users(); ++u) {
        for (std::size_t i = 0; i < matrix.num_items(); ++i) {
            if (matrix.has(u, i)) {
                rated.emplace_back(u, i);
                ++per_user[u];
            }
        }
    }
    if (rated.size() < 2) {
        throw InvalidInputError("evaluate_cf: need at least two ratings");
    }

    Rng rng(seed);
    rng.shuffle(rated);
    const auto target_count = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(rated.size()) + 1e-9));

    RatingMatrix train = matrix;
    std::vector<std::pair<std::size_t, std::size_t>> held_out;
    for (const auto& [u, i] : rated) {
        if (held_out.size() == target_count) break;
        if (per_user[u] <= 1) continue;  // keep every user's last rating
        train.clear(u, i);
        --per_user[u];
        held_out.emplace_back(u, i);
    }
    if (held_out.empty()) {
        throw InvalidInputError("evaluate_cf: could not hold out any rating");
    }

    std::vector<double> predictions;
    std::vector<double> truths;
    predictions.reserve(held_out.size());
    truths.reserve(held_out.size());
    for (const auto& [u, i] : held_out) {
        predictions.push_back(predict_knn(train, u, i, k));
        truths.push_back(matrix.at(u, i));
    }
    return {k, held_out.size(), mae(predictions, truths)};
}

}  // namespace granet
