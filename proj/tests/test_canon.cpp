#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "treepoly/canon.hpp"
#include "treepoly/error.hpp"

using namespace treepoly;

TEST_CASE("code_compare orders codes as binary integers") {
    CHECK(code_compare("1100", "10") > 0);
    CHECK(code_compare("110100", "110100") == 0);
    CHECK(code_compare("1100", "1010") > 0);
    CHECK(code_compare("10", "1100") < 0);
    CHECK(CanonicalCode::parse("111000") > CanonicalCode::parse("110100"));
    CHECK(CanonicalCode::parse("1100") > CanonicalCode::parse("10"));
}

TEST_CASE("rooted_code examples") {
    CHECK(rooted_code(Tree::from_edges(1, {}, Vertex{0})).bits() == "10");
    CHECK(rooted_code(oracle::star(3).with_root(0)).bits() == "11010100");
    CHECK(rooted_code(oracle::path(4).with_root(1)).bits() == "11100100");
    CHECK_THROWS_AS(rooted_code(oracle::path(3)), Error);
    CHECK_THROWS_AS(rooted_code(Tree{}), Error);
}

TEST_CASE("free_code examples") {
    CHECK(free_code(oracle::path(3)).bits() == "110100");
    CHECK(free_code(oracle::path(4)).bits() == "11100100");
    CHECK(free_code(oracle::star(3)).bits() == "11010100");
    CHECK(free_code(oracle::path(2)).bits() == "1100");
    CHECK(free_code(Tree{}).bits().empty());
}

TEST_CASE("decode examples") {
    const Tree single = decode(CanonicalCode::parse("10"));
    CHECK(single.size() == 1);
    CHECK(single.root() == Vertex{0});

    const Tree p2 = decode(CanonicalCode::parse("1100"));
    CHECK(p2.size() == 2);
    CHECK(p2.degree(0) == 1);

    const Tree hub = decode(CanonicalCode::parse("11010100"));
    CHECK(hub.degree(0) == 3);
    CHECK(rooted_code(hub).bits() == "11010100");
}

TEST_CASE("malformed codes are rejected") {
    for (const char* bad : {"1", "01", "1010", "110", "1120", "100", "11001100"}) {
        CAPTURE(bad);
        CHECK_FALSE(is_well_formed_code(bad));
        CHECK_THROWS_AS(CanonicalCode::parse(bad), Error);
    }
    CHECK(is_well_formed_code(""));
}

TEST_CASE("free_code is label independent and round-trips through decode") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 18;
        const Tree t = oracle::random_tree(n, rng);
        const auto code = free_code(t);
        CHECK(code.bits().size() == 2 * n);
        CHECK(is_well_formed_code(code.bits()));
        CHECK(free_code(t.relabeled(oracle::random_permutation(n, rng))) == code);
        CHECK(rooted_code(decode(code)) == code);
        CHECK(free_code(decode(code)) == code);
    }
}

TEST_CASE("free_code equality matches permutation isomorphism for n <= 7") {
    std::mt19937_64 rng(99);
    for (std::size_t n = 2; n <= 7; ++n) {
        std::vector<Tree> sample;
        for (int i = 0; i < 12; ++i) sample.push_back(oracle::random_tree(n, rng));
        for (std::size_t i = 0; i < sample.size(); ++i) {
            for (std::size_t j = i + 1; j < sample.size(); ++j) {
                CHECK((free_code(sample[i]) == free_code(sample[j])) ==
                      oracle::isomorphic(sample[i], sample[j]));
            }
        }
    }
}
