#include <doctest.h>

#include <vector>

#include "diagsq/decomposition.hpp"
#include "diagsq/intmat.hpp"
#include "diagsq/rng.hpp"

using namespace diagsq;

namespace {

IntMat random_mat(SplitMix64& g, std::size_t n, std::int64_t bound) {
    IntMat m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = g.range(-bound, bound);
    return m;
}

// Random unimodular matrix: a product of elementary row additions and
// sign flips applied to the identity.
IntMat random_unimodular(SplitMix64& g, std::size_t n, unsigned steps) {
    IntMat u = IntMat::identity(n);
    for (unsigned s = 0; s < steps; ++s) {
        const std::size_t i = g.below(n);
        std::size_t j = g.below(n);
        if (i == j) {
            for (std::size_t k = 0; k < n; ++k) u.at(i, k) = -u.at(i, k);
            continue;
        }
        const BigInt c = g.range(-3, 3);
        for (std::size_t k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
    }
    return u;
}

}  // namespace

TEST_CASE("basic arithmetic and views") {
    const IntMat a(2, {1, 2, 3, 4});
    const IntMat b(2, {0, 1, 1, 0});
    CHECK((a * b) == IntMat(2, {2, 1, 4, 3}));
    CHECK((a + b) == IntMat(2, {1, 3, 4, 4}));
    CHECK((a - a).is_zero());
    CHECK((BigInt(3) * a) == IntMat(2, {3, 6, 9, 12}));
    CHECK(a.trace() == 5);
    CHECK((-a) == IntMat(2, {-1, -2, -3, -4}));
    CHECK(IntMat::identity(3).trace() == 3);
    CHECK(a.content() == 1);
    CHECK(IntMat(2, {4, -6, 2, 8}).content() == 2);
    CHECK(IntMat(2).content() == 0);
    CHECK(mat_pow(b, 2) == IntMat::identity(2));
    CHECK(mat_pow(a, 0) == IntMat::identity(2));
}

TEST_CASE("determinant and unimodular inverse") {
    CHECK(determinant(IntMat(2, {1, 2, 3, 4})) == -2);
    CHECK(determinant(IntMat::identity(4)) == 1);
    CHECK(determinant(IntMat(3, {2, 0, 0, 0, 3, 0, 0, 0, 5})) == 30);

    SplitMix64 g(42);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + g.below(4);
        const IntMat u = random_unimodular(g, n, 12);
        const BigInt d = determinant(u);
        CHECK((d == 1 || d == -1));
        const IntMat inv = unimodular_inverse(u);
        CHECK(u * inv == IntMat::identity(n));
        CHECK(inv * u == IntMat::identity(n));
    }
    CHECK_THROWS_AS(unimodular_inverse(IntMat(2, {2, 0, 0, 1})), Error);
}

TEST_CASE("conjugation pinned examples") {
    const IntMat a(3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(conjugate_unimodular(IntMat::identity(3), a) == a);

    // Upper unitriangular T has the closed-form inverse with the sign of
    // the off-diagonal entry flipped.
    const IntMat t(3, {1, -5, 0, 0, 1, 0, 0, 0, 1});
    const IntMat tinv(3, {1, 5, 0, 0, 1, 0, 0, 0, 1});
    CHECK(t * tinv == IntMat::identity(3));
    CHECK(conjugate_unimodular(t, a) == tinv * a * t);

    CHECK_THROWS_AS(conjugate_unimodular(IntMat(2, {2, 0, 0, 1}),
                                         IntMat::identity(2)),
                    Error);
}

TEST_CASE("conjugation preserves trace, determinant, char poly") {
    SplitMix64 g(7);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + g.below(3);
        const IntMat a = random_mat(g, n, 20);
        const IntMat t = random_unimodular(g, n, 10);
        const IntMat c = conjugate_unimodular(t, a);
        CHECK(c.trace() == a.trace());
        CHECK(determinant(c) == determinant(a));
        CHECK(char_poly(c) == char_poly(a));
    }
}

TEST_CASE("char_poly basics") {
    // det(xI - [[1,2],[3,4]]) = x^2 - 5x - 2.
    const std::vector<BigInt> cp = char_poly(IntMat(2, {1, 2, 3, 4}));
    REQUIRE(cp.size() == 3);
    CHECK(cp[0] == -2);
    CHECK(cp[1] == -5);
    CHECK(cp[2] == 1);
    // Cayley-Hamilton on random matrices.
    SplitMix64 g(8);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 2 + g.below(3);
        const IntMat a = random_mat(g, n, 10);
        const std::vector<BigInt> c = char_poly(a);
        IntMat acc(n);
        for (std::size_t k = 0; k < c.size(); ++k)
            acc = acc + c[k] * mat_pow(a, static_cast<unsigned>(k));
        CHECK(acc.is_zero());
    }
}

TEST_CASE("block compose and split") {
    CHECK(block_compose(IntMat(2), RectMat(2, 2), RectMat(2, 2), IntMat(2))
              .is_zero());

    auto [p, q, r, s] = block_split(IntMat::identity(5), 2);
    CHECK(p == IntMat::identity(2));
    CHECK(q.is_zero());
    CHECK(r.is_zero());
    CHECK(s == IntMat::identity(3));

    SplitMix64 g(10);
    for (int i = 0; i < 100; ++i) {
        IntMat pp = random_mat(g, 2, 30);
        IntMat ss = random_mat(g, 3, 30);
        RectMat qq(2, 3), rr(3, 2);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                qq.at(a, b) = g.range(-30, 30);
                rr.at(b, a) = g.range(-30, 30);
            }
        const IntMat whole = block_compose(pp, qq, rr, ss);
        auto [p2, q2, r2, s2] = block_split(whole, 2);
        CHECK(p2 == pp);
        CHECK(q2 == qq);
        CHECK(r2 == rr);
        CHECK(s2 == ss);
    }
}

TEST_CASE("eval_form pinned examples") {
    CHECK(eval_form({BigInt(1)}, {IntMat(2, {0, 1, 1, 0})}) ==
          IntMat::identity(2));
    CHECK(eval_form({BigInt(2), BigInt(3)},
                    {IntMat::identity(2), IntMat::identity(2)}) ==
          BigInt(5) * IntMat::identity(2));
    const IntMat m(2, {4, -1, 7, 2});
    CHECK(eval_form({BigInt(1), BigInt(-1)}, {m, m}).is_zero());
}

TEST_CASE("eval_form is linear in the coefficient list") {
    SplitMix64 g(12);
    for (int i = 0; i < 50; ++i) {
        std::vector<BigInt> a(2), b(3);
        std::vector<IntMat> x, y;
        for (BigInt& v : a) v = g.range(-9, 9);
        for (BigInt& v : b) v = g.range(-9, 9);
        for (int k = 0; k < 2; ++k) x.push_back(random_mat(g, 3, 5));
        for (int k = 0; k < 3; ++k) y.push_back(random_mat(g, 3, 5));
        std::vector<BigInt> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        std::vector<IntMat> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        CHECK(eval_form(ab, xy) == eval_form(a, x) + eval_form(b, y));
    }
}

TEST_CASE("verify_decomposition reports the first mismatch") {
    Decomposition d;
    d.coeffs = {BigInt(1)};
    d.target = IntMat::identity(2);
    d.squares = {SquareTerm{1, IntMat(2, {0, 1, 1, 0})}};
    CHECK(verify_decomposition(d).ok);
    CHECK(d.nonzero_square_count() == 1);

    d.target.at(0, 1) = 5;
    const VerifyResult vr = verify_decomposition(d);
    CHECK_FALSE(vr.ok);
    CHECK(vr.row == 0);
    CHECK(vr.col == 1);
    CHECK(vr.expected == 5);
    CHECK(vr.actual == 0);
}
