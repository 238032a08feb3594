#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "granet/channels.hpp"
#include "granet/rng.hpp"

#ifndef GRANET_DATA_DIR
#define GRANET_DATA_DIR "data"
#endif

using namespace granet;

TEST_CASE("catalog construction validates names") {
    CHECK_THROWS_AS(ChannelCatalog({}), ConfigError);
    CHECK_THROWS_AS(ChannelCatalog({{"a", Interval(0, 1)}, {"a", Interval(1, 2)}}), ConfigError);
    CHECK_THROWS_AS(ChannelCatalog({{"", Interval(0, 1)}}), ConfigError);
    CHECK(ChannelCatalog::builtin().size() == 10);
}

TEST_CASE("match_degree is interval Jaccard with point conventions") {
    CHECK(match_degree(Interval(2, 5), Interval(2, 5)) == 1.0);
    CHECK(match_degree(Interval(0, 1), Interval(2, 3)) == 0.0);
    CHECK(match_degree(Interval(7, 8), Interval(7, 9)) == doctest::Approx(0.5).epsilon(1e-12));

    // touching wide intervals share no length
    CHECK(match_degree(Interval(1, 2), Interval(2, 3)) == 0.0);

    // identical points match fully; distinct points do not
    CHECK(match_degree(Interval(4, 4), Interval(4, 4)) == 1.0);
    CHECK(match_degree(Interval(4, 4), Interval(5, 5)) == 0.0);

    // a point inside a wider interval scores 1 / (width + 1)
    CHECK(match_degree(Interval(4, 4), Interval(3, 6)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(match_degree(Interval(3, 6), Interval(4, 4)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(match_degree(Interval(3, 3), Interval(3, 6)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(match_degree(Interval(7, 7), Interval(3, 6)) == 0.0);
}

TEST_CASE("match_degree is symmetric") {
    Rng rng(1618);
    for (int trial = 0; trial < 200; ++trial) {
        double a1 = rng.uniform(0.0, 10.0);
        double a2 = a1 + rng.uniform(0.0, 5.0);
        double b1 = rng.uniform(0.0, 10.0);
        double b2 = b1 + rng.uniform(0.0, 5.0);
        Interval a(a1, a2);
        Interval b(b1, b2);
        CHECK(match_degree(a, b) == match_degree(b, a));
        double d = match_degree(a, b);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        CHECK(match_degree(a, a) == 1.0);
    }
}

TEST_CASE("recommend ranks the builtin catalog for known attribute intervals") {
    ChannelCatalog catalog = ChannelCatalog::builtin();

    auto current_affairs = recommend(Interval(9, 10), catalog, 3);
    CHECK(current_affairs.front().channel == "People's Daily Online, Xinhua News Agency");
    CHECK(current_affairs.front().degree == 1.0);

    auto military = recommend(Interval(1, 2), catalog, 1);
    REQUIRE(military.size() == 1);
    CHECK(military.front().channel == "www.81.cn");
    CHECK(military.front().degree == 1.0);

    // entertainment [3,9]: weibo 6/7 ahead of JYB 6/9 and Tencent/Toutiao 4/7
    auto entertainment = recommend(Interval(3, 9), catalog, 10);
    CHECK(entertainment[0].channel == "weibo.com");
    CHECK(entertainment[0].degree == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    auto degree_of = [&](const std::string& name) {
        auto it = std::find_if(entertainment.begin(), entertainment.end(),
                               [&](const Recommendation& r) { return r.channel == name; });
        REQUIRE(it != entertainment.end());
        return it->degree;
    };
    CHECK(degree_of("www.JYB.cn") == doctest::Approx(6.0 / 9.0).epsilon(1e-12));
    CHECK(degree_of("Tencent News, Toutiao") == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    CHECK(degree_of("weibo.com") > degree_of("www.JYB.cn"));
    CHECK(degree_of("www.JYB.cn") > degree_of("Tencent News, Toutiao"));
}

TEST_CASE("recommend breaks ties by narrower interval then name") {
    ChannelCatalog catalog({
        {"wide", Interval(0, 8)},
        {"narrow", Interval(2, 4)},
        {"bbb", Interval(10, 12)},
        {"aaa", Interval(10, 12)},
    });
    // [2,4] matches "narrow" at 1.0 and "wide" at 2/8
    auto top = recommend(Interval(2, 4), catalog, 2);
    CHECK(top[0].channel == "narrow");

    // equal-degree, equal-width channels order by name
    auto tied = recommend(Interval(10, 12), catalog, 2);
    CHECK(tied[0].channel == "aaa");
    CHECK(tied[1].channel == "bbb");
}

TEST_CASE("recommend output is independent of catalog order") {
    std::vector<Channel> channels = ChannelCatalog::builtin().channels();
    auto reference = recommend(Interval(2, 6), ChannelCatalog(channels), 10);

    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        rng.shuffle(channels);
        auto permuted = recommend(Interval(2, 6), ChannelCatalog(channels), 10);
        REQUIRE(permuted.size() == reference.size());
        for (std::size_t i = 0; i < permuted.size(); ++i) {
            CHECK(permuted[i].channel == reference[i].channel);
            CHECK(permuted[i].degree == reference[i].degree);
        }
    }
}

TEST_CASE("recommend validates arguments and truncates") {
    ChannelCatalog catalog = ChannelCatalog::builtin();
    CHECK_THROWS_AS(recommend(Interval(0, 1), catalog, 0), InvalidInputError);
    CHECK(recommend(Interval(3, 9), catalog, 2).size() == 2);
    CHECK(recommend(Interval(3, 9), catalog, 99).size() == catalog.size());
}

TEST_CASE("catalog file round-trips the builtin table") {
    ChannelCatalog from_file = load_catalog(std::string(GRANET_DATA_DIR) + "/channels.csv");
    ChannelCatalog builtin = ChannelCatalog::builtin();
    REQUIRE(from_file.size() == builtin.size());
    for (std::size_t i = 0; i < builtin.size(); ++i) {
        CHECK(from_file.channels()[i].name == builtin.channels()[i].name);
        CHECK(from_file.channels()[i].target == builtin.channels()[i].target);
    }
}

TEST_CASE("catalog parser reports bad lines") {
    CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.csv"), IoError);

    auto write_and_load = [](const std::string& text) {
        std::string path = "/tmp/granet_test_catalog.csv";
        {
            std::ofstream out(path);
            out << text;
        }
        return load_catalog(path);
    };
    CHECK_THROWS_AS(write_and_load("just-one-field\n"), ParseError);
    CHECK_THROWS_AS(write_and_load("name,1,abc\n"), ParseError);
    CHECK_THROWS_AS(write_and_load("name,5,2\n"), ParseError);  // lo > hi
    CHECK_THROWS_AS(write_and_load("a,1,2\na,3,4\n"), ConfigError);

    // names may contain commas; numbers anchor at the end of the line
    ChannelCatalog commas = write_and_load("# comment\nAlpha, Beta and Gamma,1,6\n");
    CHECK(commas.channels()[0].name == "Alpha, Beta and Gamma");
    CHECK(commas.channels()[0].target == Interval(1, 6));
}
