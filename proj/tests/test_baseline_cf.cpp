#include <doctest.h>

#include <cmath>
#include <fstream>

#include "granet/baseline_cf.hpp"
#include "granet/rng.hpp"
#include "oracles.hpp"

using namespace granet;

namespace {

RatingMatrix from(const std::vector<std::tuple<std::string, std::string, double>>& triples) {
    return RatingMatrix::from_triples(triples);
}

// Random sparse matrix with ratings in [1, 5]; every user keeps >= 1 rating.
RatingMatrix random_matrix(Rng& rng, std::size_t users, std::size_t items) {
    std::vector<std::tuple<std::string, std::string, double>> triples;
    for (std::size_t u = 0; u < users; ++u) {
        bool any = false;
        for (std::size_t i = 0; i < items; ++i) {
            bool last_chance = !any && i + 1 == items;
            if (last_chance || rng.uniform() < 0.65) {
                triples.emplace_back("u" + std::to_string(u), "i" + std::to_string(i),
                                     1.0 + std::floor(rng.uniform() * 5.0));
                any = true;
            }
        }
    }
    return from(triples);
}

}  // namespace

TEST_CASE("cosine similarity on aligned vectors") {
    std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(cosine_similarity(a, a).value == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> x{1.0, 0.0};
    std::vector<double> y{0.0, 1.0};
    CHECK(cosine_similarity(x, y).value == 0.0);

    std::vector<double> u{1.0, 0.0, 1.0};
    std::vector<double> v{1.0, 1.0, 0.0};
    CHECK(cosine_similarity(u, v).value == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<double> zero{0.0, 0.0};
    CosineResult degenerate = cosine_similarity(zero, x);
    CHECK(degenerate.value == 0.0);
    CHECK(degenerate.zero_norm);
    CHECK_FALSE(cosine_similarity(u, v).zero_norm);
    CHECK(cosine_similarity({}, {}).zero_norm);

    std::vector<double> longer{1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(cosine_similarity(a, longer), DimensionError);
}

TEST_CASE("cosine similarity is symmetric and bounded") {
    Rng rng(27);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next_below(6);
        std::vector<double> u(n);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = rng.uniform(-3.0, 3.0);
            v[i] = rng.uniform(-3.0, 3.0);
        }
        double uv = cosine_similarity(u, v).value;
        CHECK(uv == cosine_similarity(v, u).value);
        CHECK(uv >= -1.0 - 1e-12);
        CHECK(uv <= 1.0 + 1e-12);
    }
}

TEST_CASE("predict_knn on pinned cases") {
    // k=1 with a single neighbour who rated the item: prediction equals that rating
    RatingMatrix single = from({
        {"query", "a", 4.0},
        {"query", "b", 2.0},
        {"other", "a", 4.0},
        {"other", "target", 3.5},
    });
    CHECK(predict_knn(single, "query", "target", 1) == 3.5);

    // nobody with positive similarity rated the item: fall back to the query mean
    RatingMatrix isolated = from({
        {"query", "a", 4.0},
        {"query", "b", 2.0},
        {"loner", "c", 5.0},
        {"loner", "target", 1.0},
    });
    CHECK(predict_knn(isolated, "query", "target", 3) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(predict_knn(single, "ghost", "a", 1), LookupError);
    CHECK_THROWS_AS(predict_knn(single, "query", "ghost", 1), LookupError);
    CHECK_THROWS_AS(predict_knn(single, "query", "a", 0), InvalidInputError);
}

TEST_CASE("predict_knn equals a hand-computed weighted average on a 4x4 matrix") {
    // users rate items 1..4; v1 and v2 rated the target item
    RatingMatrix matrix = from({
        {"q", "i1", 5.0},  {"q", "i2", 3.0},  {"q", "i3", 4.0},
        {"v1", "i1", 4.0}, {"v1", "i2", 3.0}, {"v1", "i4", 4.0},
        {"v2", "i1", 1.0}, {"v2", "i2", 5.0}, {"v2", "i4", 2.0},
        {"v3", "i3", 4.0},
    });
    // cosine(q, v1) over {i1, i2} = (5*4 + 3*3) / (sqrt(34) * 5)
    double s1 = 29.0 / (std::sqrt(34.0) * 5.0);
    // cosine(q, v2) over {i1, i2} = (5*1 + 3*5) / (sqrt(34) * sqrt(26))
    double s2 = 20.0 / (std::sqrt(34.0) * std::sqrt(26.0));
    double expected = (s1 * 4.0 + s2 * 2.0) / (s1 + s2);
    CHECK(predict_knn(matrix, "q", "i4", 2) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(predict_knn(matrix, "q", "i4", 2) ==
          oracle::knn_prediction(matrix, matrix.user_index("q"), matrix.item_index("i4"), 2));
}

TEST_CASE("negative-similarity neighbours are excluded") {
    RatingMatrix matrix = from({
        {"q", "i1", 2.0},  {"q", "i2", -2.0},
        {"anti", "i1", -3.0}, {"anti", "i2", 3.0}, {"anti", "target", 5.0},
        {"ally", "i1", 2.0},  {"ally", "i2", -1.0}, {"ally", "target", 1.0},
    });
    // "anti" has similarity -1; only "ally" contributes
    CHECK(predict_knn(matrix, "q", "target", 2) == 1.0);
}

TEST_CASE("large k reproduces the all-neighbours weighted average") {
    Rng rng(314159);
    RatingMatrix matrix = random_matrix(rng, 5, 5);
    for (std::size_t u = 0; u < matrix.num_users(); ++u) {
        for (std::size_t i = 0; i < matrix.num_items(); ++i) {
            CHECK(predict_knn(matrix, u, i, 4) == predict_knn(matrix, u, i, 50));
        }
    }
}

TEST_CASE("predict_knn equals the brute-force oracle on small random matrices") {
    Rng rng(90210);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t users = 2 + rng.next_below(4);   // up to 5
        std::size_t items = 2 + rng.next_below(4);
        RatingMatrix matrix = random_matrix(rng, users, items);
        for (std::size_t k : {1u, 2u, 3u}) {
            for (std::size_t u = 0; u < matrix.num_users(); ++u) {
                for (std::size_t i = 0; i < matrix.num_items(); ++i) {
                    CHECK(predict_knn(matrix, u, i, k) == oracle::knn_prediction(matrix, u, i, k));
                }
            }
        }
    }
}

TEST_CASE("mae on pinned and propertied cases") {
    std::vector<double> p{1.0, 2.0};
    std::vector<double> r{2.0, 4.0};
    CHECK(mae(p, r) == doctest::Approx(1.5).epsilon(1e-12));

    CHECK(mae(r, r) == 0.0);
    std::vector<double> single_p{3.25};
    std::vector<double> single_r{1.0};
    CHECK(mae(single_p, single_r) == 2.25);

    CHECK_THROWS_AS(mae(p, single_r), InvalidInputError);
    CHECK_THROWS_AS(mae(std::vector<double>{}, std::vector<double>{}), InvalidInputError);

    // translation invariance
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng.next_below(8);
        std::vector<double> a(n);
        std::vector<double> b(n);
        double c = rng.uniform(-10.0, 10.0);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform(-5.0, 5.0);
            b[i] = rng.uniform(-5.0, 5.0);
        }
        std::vector<double> ac(a);
        std::vector<double> bc(b);
        for (std::size_t i = 0; i < n; ++i) {
            ac[i] += c;
            bc[i] += c;
        }
        CHECK(mae(ac, bc) == doctest::Approx(mae(a, b)).epsilon(1e-9));
        CHECK(mae(a, b) >= 0.0);
    }
}

TEST_CASE("ratings files parse with a header and strict cells") {
    auto write_and_load = [](const std::string& text) {
        std::string path = "/tmp/granet_test_ratings.csv";
        {
            std::ofstream out(path);
            out << text;
        }
        return load_ratings(path);
    };

    RatingMatrix matrix = write_and_load("user,item,rating\nu1,i1,4.5\nu1,i2,3\nu2,i1,2\n");
    CHECK(matrix.num_users() == 2);
    CHECK(matrix.num_items() == 2);
    CHECK(matrix.at(matrix.user_index("u1"), matrix.item_index("i2")) == 3.0);
    CHECK_FALSE(matrix.has(matrix.user_index("u2"), matrix.item_index("i2")));
    CHECK(matrix.user_mean(matrix.user_index("u1")) == doctest::Approx(3.75).epsilon(1e-12));

    CHECK_THROWS_AS(write_and_load("user,item,rating\n"), InvalidInputError);
    CHECK_THROWS_AS(write_and_load("user,item,rating\nu1,i1,abc\n"), ParseError);
    CHECK_THROWS_AS(write_and_load("user,item,rating\nu1,i1,1\nu1,i1,2\n"), InvalidInputError);
    CHECK_THROWS_AS(write_and_load("user,item,rating\nu1,i1\n"), ParseError);
    CHECK_THROWS_AS(load_ratings("/nonexistent/ratings.csv"), IoError);
}

TEST_CASE("masked holdout evaluation is deterministic and keeps users alive") {
    Rng rng(777);
    RatingMatrix matrix = random_matrix(rng, 8, 8);
    CfEvaluation a = evaluate_cf(matrix, 3, 0.3, 99);
    CfEvaluation b = evaluate_cf(matrix, 3, 0.3, 99);
    CHECK(a.mae == b.mae);
    CHECK(a.test_count == b.test_count);
    CHECK(a.test_count > 0);
    CHECK(a.k == 3);
    CHECK(std::isfinite(a.mae));
    CHECK(a.mae >= 0.0);

    CHECK_THROWS_AS(evaluate_cf(matrix, 0, 0.3, 1), InvalidInputError);
    CHECK_THROWS_AS(evaluate_cf(matrix, 3, 0.0, 1), InvalidInputError);
}
