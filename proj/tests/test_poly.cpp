#include <doctest.h>

#include <limits>
#include <random>

#include "treepoly/error.hpp"
#include "treepoly/poly.hpp"

using namespace treepoly;

namespace {

Polynomial random_poly(std::mt19937_64& rng) {
    std::vector<Coefficient> c{1};
    const std::size_t extra = rng() % 6;
    for (std::size_t i = 0; i < extra; ++i) c.push_back(1 + rng() % 1000);
    return Polynomial(c);
}

}  // namespace

TEST_CASE("Polynomial invariants") {
    CHECK(Polynomial().coeffs().size() == 1);
    CHECK_THROWS_AS(Polynomial(std::vector<Coefficient>{}), Error);
    CHECK_THROWS_AS((Polynomial{2, 1}), Error);
    CHECK_THROWS_AS((Polynomial{1, 3, 0}), Error);
    CHECK((Polynomial{1, 7, 15, 10, 1}).evaluate_at_one() == 34);
}

TEST_CASE("mul") {
    CHECK(mul(Polynomial{1, 3, 1}, Polynomial{1, 3, 1}) == Polynomial{1, 6, 11, 6, 1});
    CHECK(mul(Polynomial{1, 2}, Polynomial{1, 2}) == Polynomial{1, 4, 4});
    CHECK(mul(Polynomial{1, 5, 6, 1}, Polynomial::one()) == Polynomial{1, 5, 6, 1});
}

TEST_CASE("mul is commutative, associative, and has identity 1") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, Polynomial::one()) == a);
        CHECK(mul(a, b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("combine") {
    CHECK(combine(Polynomial{1, 6, 11, 6, 1}, Polynomial{1, 4, 4}) == Polynomial{1, 7, 15, 10, 1});
    CHECK(combine(Polynomial::one(), Polynomial::one()) == Polynomial{1, 1});
}

TEST_CASE("overflow is detected, not wrapped") {
    const Coefficient big = std::numeric_limits<Coefficient>::max() / 2 + 1;
    const Polynomial p{1, big};
    CHECK_THROWS_AS(mul(p, p), Error);
    try {
        combine(Polynomial{1, 1, big}, Polynomial{1, big});
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::overflow);
    }
    CHECK_THROWS_AS((Polynomial{1, std::numeric_limits<Coefficient>::max()}).evaluate_at_one(), Error);
}

TEST_CASE("is_unimodal") {
    CHECK_FALSE(is_unimodal(Polynomial{1, 33, 24, 32, 16}));
    CHECK(is_unimodal(Polynomial{1, 9, 28, 40, 28, 9, 1}));
    CHECK(is_unimodal(Polynomial{1}));
    CHECK(is_unimodal(Polynomial{1, 4, 4, 2}));
    CHECK_FALSE(is_unimodal(Polynomial{1, 3, 2, 3}));
}

TEST_CASE("is_log_concave") {
    CHECK_FALSE(is_log_concave(Polynomial{1, 33, 24, 32, 16}));
    CHECK(is_log_concave(Polynomial{1, 4, 3, 1}));
    CHECK(is_log_concave(Polynomial{1, 1}));
    CHECK(is_log_concave(Polynomial{1, 9, 28, 40, 28, 9, 1}));
    // Products near 2^64 must be compared exactly.
    const Coefficient big = Coefficient{1} << 40;
    CHECK(is_log_concave(Polynomial{1, big, big}));
    CHECK_FALSE(is_log_concave(Polynomial{1, big, big, big + 1}));
}

TEST_CASE("log-concave with positive coefficients implies unimodal") {
    std::mt19937_64 rng(17);
    int log_concave_seen = 0;
    for (int i = 0; i < 5000; ++i) {
        const auto p = random_poly(rng);
        if (is_log_concave(p)) {
            ++log_concave_seen;
            CHECK(is_unimodal(p));
        }
    }
    CHECK(log_concave_seen > 0);
}

TEST_CASE("is_symmetric") {
    CHECK(is_symmetric(Polynomial{1, 6, 10, 6, 1}));
    CHECK_FALSE(is_symmetric(Polynomial{1, 2}));
    CHECK(is_symmetric(Polynomial{1}));
    CHECK(is_symmetric(Polynomial{1, 8, 21, 21, 8, 1}));
}

TEST_CASE("is_fibonacci") {
    CHECK(is_fibonacci(Polynomial{1, 8, 21, 21, 8, 1}));
    CHECK(is_fibonacci(Polynomial{1, 2}));
    CHECK_FALSE(is_fibonacci(Polynomial{1, 4, 3, 1}));
    CHECK(is_fibonacci_number(12200160415121876738ull));  // largest 64-bit Fibonacci number
    CHECK_FALSE(is_fibonacci_number(0));
    CHECK_FALSE(is_fibonacci_number(4));
}

TEST_CASE("monotonicity") {
    CHECK(monotonicity(Polynomial{1}) == Monotonicity::ascending);
    CHECK(monotonicity(Polynomial{1, 1}) == Monotonicity::ascending);
    CHECK(monotonicity(Polynomial{1, 3, 1}) == Monotonicity::neither);
    CHECK(monotonicity(Polynomial{1, 2}) == Monotonicity::ascending);
    CHECK(std::string(monotonicity_name(Monotonicity::neither)) == "neither");
}

TEST_CASE("argmax_lowest") {
    CHECK(argmax_lowest(Polynomial{1, 1}) == 0);
    CHECK(argmax_lowest(Polynomial{1, 9, 28, 37, 21, 4}) == 3);
    CHECK(argmax_lowest(Polynomial{1, 7, 15, 10, 1}) == 2);
    CHECK(argmax_lowest(Polynomial{1, 4, 4}) == 1);
}

TEST_CASE("coefficient text") {
    CHECK(format_coeffs(Polynomial{1, 7, 15, 10, 1}) == "1,7,15,10,1");
    CHECK(parse_coeffs("1,7,15,10,1") == Polynomial{1, 7, 15, 10, 1});
    CHECK_THROWS_AS(parse_coeffs("1,,2"), Error);
    CHECK_THROWS_AS(parse_coeffs("1,-2"), Error);
    CHECK_THROWS_AS(parse_coeffs(""), Error);
}
