#include <doctest.h>

#include <algorithm>
#include <vector>

#include "diagsq/decompose3.hpp"
#include "diagsq/errors.hpp"
#include "diagsq/numth.hpp"
#include "diagsq/rng.hpp"

using namespace diagsq;

namespace {

std::vector<BigInt> big(const std::vector<long>& v) {
    return std::vector<BigInt>(v.begin(), v.end());
}

IntMat random_target(SplitMix64& g, std::int64_t bound) {
    IntMat m(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = g.range(-bound, bound);
    return m;
}

bool pairwise_coprime(const std::vector<BigInt>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (gcd(a[i], a[j]) != 1) return false;
    return true;
}

std::vector<BigInt> random_coeffs(SplitMix64& g) {
    for (;;) {
        std::vector<BigInt> a(6);
        for (BigInt& v : a) {
            std::int64_t x = 0;
            while (x == 0) x = g.range(-50, 50);
            v = x;
        }
        if (pairwise_coprime(a)) return a;
    }
}

}  // namespace

TEST_CASE("quartic root building block") {
    const IntMat x0 = build_quartic_root(0, 0, 0);
    CHECK(x0 == IntMat(3, {0, 0, 0, 0, 0, 1, 0, -1, -1}));
    CHECK(mat_pow(x0, 4) == x0);

    const IntMat x1 = build_quartic_root(1, 2, 1);
    CHECK(mat_pow(x1, 4) == x1);

    SplitMix64 g(64);
    for (int i = 0; i < 200; ++i) {
        const IntMat x = build_quartic_root(g.range(-50, 50), g.range(-50, 50),
                                            g.range(-50, 50));
        CHECK(mat_pow(x, 4) == x);
        CHECK(x.trace() == -1);
    }
}

TEST_CASE("quartic counters advance and never record violations") {
    reset_quartic_counters();
    const QuarticCounters before = quartic_counters();
    CHECK(before.checks == 0);
    CHECK(before.violations == 0);

    build_quartic_root(3, -7, 2);
    decompose_3x3(big({1, 1, 1, 1, 1, 1}), IntMat(3, {1, 2, 3, 4, 5, 6, 7, 8, 9}));

    const QuarticCounters after = quartic_counters();
    CHECK(after.checks >= 3);  // one direct call + two engine roots
    CHECK(after.violations == 0);
}

TEST_CASE("pinned engine examples") {
    SplitMix64 g(65);
    for (int i = 0; i < 20; ++i) {
        const IntMat target = random_target(g, 100);
        const Decomposition d = decompose_3x3(big({1, 1, 1, 1, 1, 1}), target);
        REQUIRE(d.squares.size() == 6);
        CHECK(verify_decomposition(d).ok);
    }

    const Decomposition zero =
        decompose_3x3(big({2, 3, 5, 7, 11, 13}), IntMat(3));
    CHECK(verify_decomposition(zero).ok);

    try {
        decompose_3x3(big({2, 4, 5, 7, 11, 13}), IntMat(3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::not_pairwise_coprime);
    }
    try {
        decompose_3x3(big({2, 0, 5, 7, 11, 13}), IntMat(3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::zero_coefficient);
    }
    try {
        decompose_3x3(big({1, 1, 1, 1, 1}), IntMat(3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::bad_input);
    }
    try {
        decompose_3x3(big({1, 1, 1, 1, 1, 1}), IntMat(2));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::dimension_mismatch);
    }
}

TEST_CASE("round-trip sweep: 500 targets x 20 tuples") {
    SplitMix64 g(66);
    std::vector<std::vector<BigInt>> tuples;
    for (int i = 0; i < 20; ++i) tuples.push_back(random_coeffs(g));
    for (int i = 0; i < 500; ++i) {
        const IntMat target = random_target(g, 100);
        for (const auto& a : tuples) {
            const Decomposition d = decompose_3x3(a, target);
            CHECK(verify_decomposition(d).ok);
        }
    }
}

TEST_CASE("explain records the construction workspace") {
    ExplainSink sink;
    const std::vector<BigInt> a = big({3, 5, 2, 7, 11, 13});
    decompose_3x3(a, IntMat(3, {4, -1, 0, 2, 9, -3, 5, 0, 1}), &sink);
    CHECK(sink["engine"] == "decompose_3x3");
    REQUIRE(sink["role_to_input"].is_array());
    REQUIRE(sink["role_to_input"].size() == 6);
    // The lone even coefficient (input 3) takes the first role.
    CHECK(sink["role_to_input"][0] == 3);
    for (const char* key : {"m", "u", "pattern", "h", "p", "q", "transform"})
        CHECK(sink.contains(key));
    for (const char* key : {"a", "b", "c", "d", "e"})
        CHECK(sink["pattern"].contains(key));
}

TEST_CASE("permutation of coefficients permutes the terms") {
    SplitMix64 g(67);
    const std::vector<BigInt> base = big({3, 5, 2, 7, 11, 13});
    std::vector<std::size_t> perm = {0, 1, 2, 3, 4, 5};
    for (int round = 0; round < 10; ++round) {
        const IntMat target = random_target(g, 60);
        const Decomposition d0 = decompose_3x3(base, target);

        // A seeded shuffle of the coefficient order.
        for (std::size_t k = 5; k > 0; --k)
            std::swap(perm[k], perm[g.below(k + 1)]);
        std::vector<BigInt> shuffled(6);
        for (std::size_t k = 0; k < 6; ++k) shuffled[k] = base[perm[k]];

        const Decomposition d1 = decompose_3x3(shuffled, target);
        CHECK(verify_decomposition(d1).ok);
        // Terms correspond under the permutation: the square attached to a
        // given coefficient value is independent of its input position.
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(d1.squares[k].matrix == d0.squares[perm[k]].matrix);
            CHECK(d1.coeffs[k] == d0.coeffs[perm[k]]);
        }
    }
}

TEST_CASE("even coefficient may sit anywhere in the input") {
    SplitMix64 g(68);
    for (std::size_t pos = 0; pos < 6; ++pos) {
        std::vector<BigInt> a = big({3, 5, 7, 11, 13, 17});
        a[pos] = 2;
        REQUIRE(pairwise_coprime(a));
        const IntMat target = random_target(g, 100);
        const Decomposition d = decompose_3x3(a, target);
        CHECK(verify_decomposition(d).ok);
    }
}

TEST_CASE("all-odd and negative-heavy tuples") {
    SplitMix64 g(69);
    const std::vector<std::vector<long>> tuples = {
        {1, 1, 1, 1, 1, 1},      {-1, -1, -1, -1, -1, -1},
        {1, -1, 3, -5, 7, -11},  {-2, 3, 5, -7, 11, 13},
        {25, 49, 9, 121, 2, 13}, {17, -19, 23, -29, 31, 37},
    };
    for (const auto& t : tuples) {
        for (int i = 0; i < 10; ++i) {
            const Decomposition d = decompose_3x3(big(t), random_target(g, 100));
            CHECK(verify_decomposition(d).ok);
        }
    }
}
