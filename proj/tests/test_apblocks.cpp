#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "edsp/apblocks.hpp"
#include "edsp/errors.hpp"
#include "support.hpp"

using namespace edsp;
using edsp::testing::naive_is_prime;
using edsp::testing::naive_pi_d;

namespace {

const PrimeTable& table() {
    static const PrimeTable t(100'000);
    return t;
}

std::vector<std::size_t> as_vec(std::initializer_list<std::size_t> v) { return v; }

// Largest prime factor by trial division.
std::uint64_t largest_prime_factor(std::uint64_t n) {
    std::uint64_t best = 1;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        while (n % q == 0) {
            best = q;
            n /= q;
        }
    return n > 1 ? n : best;
}

}  // namespace

TEST_CASE("split_term") {
    auto s = split_term(table(), 2, 5, 3, 2);
    CHECK(s.a == 12);
    CHECK(s.x == 1);
    s = split_term(table(), 1, 11, 2, 1);
    CHECK(s.a == 4);
    CHECK(s.x == 3);
    s = split_term(table(), 100, 1, 5, 2);
    CHECK(s.a == 6);
    CHECK(s.x == 17);
    CHECK_THROWS_AS(split_term(table(), 1, 1, 3, 3), PreconditionError);
}

TEST_CASE("analyze") {
    auto blk = analyze(table(), 1, 1, 10);
    CHECK(blk.w1.empty());

    blk = analyze(table(), 100, 1, 5);
    CHECK(blk.w1 == as_vec({1, 2, 3, 4}));
    CHECK(blk.w2.empty());
    CHECK(blk.w0 == as_vec({1, 2, 3, 4}));

    blk = analyze(table(), 2, 5, 3);
    CHECK(blk.w1 == as_vec({1}));
    CHECK(blk.w2 == as_vec({1}));
    CHECK(blk.w0.empty());
    CHECK(blk.k_prime() == doctest::Approx(3 + 1 + 2 * std::sqrt(3.0)));

    CHECK_THROWS_AS(analyze(table(), 2, 4, 3), InvalidBlockError);
    CHECK_THROWS_AS(analyze(table(), 1, 1, 1), InvalidBlockError);
    CHECK_THROWS_AS(analyze(table(), 0, 1, 3), InvalidBlockError);
}

TEST_CASE("k prime boundary") {
    // k = n^2: k' = (n + 1)^2 exactly.
    for (std::uint64_t n = 1; n <= 300; ++n) {
        const std::uint64_t k = n * n;
        CHECK(k_prime_floor(k) == (n + 1) * (n + 1));
        CHECK(within_k_prime((n + 1) * (n + 1), k));
        CHECK_FALSE(within_k_prime((n + 1) * (n + 1) + 1, k));
    }
    for (std::uint64_t k = 2; k <= 5000; ++k) {
        const std::uint64_t f = k_prime_floor(k);
        const long double exact = k + 1 + 2 * std::sqrt(static_cast<long double>(k));
        CHECK(static_cast<long double>(f) <= exact);
        CHECK(static_cast<long double>(f + 1) > exact);
    }
}

TEST_CASE("pillai_index") {
    CHECK(pillai_index(1, 2, 3, 1) == std::optional<std::size_t>(1));
    const auto i = pillai_index(1, 1, 16, 1);
    REQUIRE(i);
    CHECK(*i == 10);
    CHECK(pillai_index(1, 1, 20, 2).has_value());
    // 2..7: every term shares a factor with another one except 5 and 7.
    CHECK(pillai_index(2, 1, 6, 1) == std::optional<std::size_t>(3));
    CHECK_THROWS_AS(pillai_index(2, 2, 3, 1), InvalidBlockError);
}

TEST_CASE("coprime isolated indices") {
    CHECK(coprime_isolated_indices(1, 6, 2) == as_vec({0, 1}));
    CHECK(coprime_isolated_indices(2, 1, 3) == as_vec({1}));
    CHECK(coprime_isolated_indices(5, 1, 3) == as_vec({0, 1, 2}));
}

TEST_CASE("count_large_factor_terms") {
    CHECK(count_large_factor_terms(table(), 1, 1, 10) == 0);
    CHECK(count_large_factor_terms(table(), 100, 1, 5) == 4);
    CHECK(count_large_factor_terms(table(), 1, 2, 4) == 2);
}

TEST_CASE("block invariants on random blocks") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> md(1, 5000), kd(2, 90);
    int tested = 0;
    while (tested < 400) {
        const std::uint64_t m = md(rng), d = md(rng), k = kd(rng);
        if (std::gcd(m, d) != 1)
            continue;
        ++tested;
        const BlockAnalysis blk = analyze(table(), m, d, k);
        REQUIRE(blk.splits.size() == k);
        std::size_t large = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const std::uint64_t v = m + i * d;
            const TermSplit& s = blk.splits[i];
            CHECK(s.a * s.x == v);
            CHECK(largest_prime_factor(s.a) <= k);
            for (std::uint64_t q = 2; q <= k; ++q)
                if (naive_is_prime(q))
                    CHECK(s.x % q != 0);
            large += largest_prime_factor(v) > k;
        }
        CHECK(blk.w1.size() == large);
        for (std::size_t i : blk.w2)
            CHECK(std::find(blk.w1.begin(), blk.w1.end(), i) != blk.w1.end());
        CHECK(blk.w0.size() + blk.w2.size() == blk.w1.size());
        for (std::size_t i : blk.w0)
            CHECK(std::find(blk.w2.begin(), blk.w2.end(), i) == blk.w2.end());
        const std::uint64_t kp = k_prime_floor(k);
        CHECK(blk.w2.size() <= naive_pi_d(kp, d) - naive_pi_d(k, d));
        for (std::size_t i : blk.w2) {
            bool witness = false;
            const std::uint64_t v = m + i * d;
            for (std::uint64_t q = k + 1; q <= kp; ++q)
                witness = witness || (naive_is_prime(q) && v % q == 0);
            CHECK(witness);
        }
    }
}
