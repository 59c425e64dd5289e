#include <doctest.h>

#include <cstdint>
#include <vector>

#include "diagsq/numth.hpp"
#include "diagsq/rng.hpp"

using namespace diagsq;

namespace {

// Independent factorization oracle: a smallest-prime-factor sieve.  Written
// against first principles so the trial-division/rho factorizer is checked
// by something that shares none of its code.
class SpfSieve {
  public:
    explicit SpfSieve(std::uint32_t limit) : spf_(limit + 1, 0) {
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (spf_[i] != 0) continue;
            for (std::uint64_t j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = i;
        }
    }

    std::vector<std::pair<std::uint32_t, unsigned>> factor(
        std::uint32_t n) const {
        std::vector<std::pair<std::uint32_t, unsigned>> out;
        while (n > 1) {
            const std::uint32_t p = spf_[n];
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        return out;
    }

    bool is_prime(std::uint32_t n) const { return n >= 2 && spf_[n] == n; }

  private:
    std::vector<std::uint32_t> spf_;
};

}  // namespace

TEST_CASE("gcd convention") {
    CHECK(gcd(0, 0) == 0);
    CHECK(gcd(0, -5) == 5);
    CHECK(gcd(12, 18) == 6);
    CHECK(gcd(-12, 18) == 6);
    CHECK(gcd(17, 5) == 1);
}

TEST_CASE("ext_gcd pinned examples") {
    ExtGcd r = ext_gcd(12, 18);
    CHECK(r.g == 6);
    CHECK(r.s == -1);
    CHECK(r.t == 1);

    r = ext_gcd(7, 0);
    CHECK(r.g == 7);
    CHECK(r.s == 1);
    CHECK(r.t == 0);

    r = ext_gcd(7, 3);
    CHECK(r.g == 1);
    CHECK(r.s == 1);
    CHECK(r.t == -2);
}

TEST_CASE("ext_gcd random identity and divisibility") {
    SplitMix64 g(2024);
    for (int i = 0; i < 10000; ++i) {
        const BigInt a = g.range(-1000000, 1000000);
        const BigInt b = g.range(-1000000, 1000000);
        const ExtGcd r = ext_gcd(a, b);
        CHECK(r.g >= 0);
        CHECK(a * r.s + b * r.t == r.g);
        if (r.g != 0) {
            CHECK(a % r.g == 0);
            CHECK(b % r.g == 0);
        } else {
            CHECK(a == 0);
            CHECK(b == 0);
        }
        // Deterministic canonical output.
        const ExtGcd again = ext_gcd(a, b);
        CHECK(again.s == r.s);
        CHECK(again.t == r.t);
    }
}

TEST_CASE("bezout_pair identity") {
    SplitMix64 g(11);
    for (int i = 0; i < 2000; ++i) {
        const BigInt a = g.range(-500, 500);
        const BigInt b = g.range(-500, 500);
        if (gcd(a, b) != 1) continue;
        const BezoutPair t = bezout_pair(a, b);
        CHECK(t.a * t.t_a + t.b * t.t_b == 1);
    }
    CHECK_THROWS_AS(bezout_pair(4, 6), Error);
}

TEST_CASE("solve_linear_diophantine pinned examples") {
    auto r = solve_linear_diophantine({BigInt(6), BigInt(10), BigInt(15)}, 1);
    REQUIRE(r.has_value());
    CHECK(BigInt(6) * (*r)[0] + 10 * (*r)[1] + 15 * (*r)[2] == 1);

    CHECK_FALSE(solve_linear_diophantine({BigInt(2), BigInt(4)}, 3));

    r = solve_linear_diophantine({BigInt(5)}, 10);
    REQUIRE(r.has_value());
    CHECK((*r)[0] == 2);
}

TEST_CASE("solve_linear_diophantine random cross-check") {
    SplitMix64 g(3);
    for (int i = 0; i < 3000; ++i) {
        const std::size_t k = 1 + g.below(5);
        std::vector<BigInt> c(k);
        BigInt content = 0;
        for (BigInt& v : c) {
            v = g.range(-40, 40);
            content = gcd(content, v);
        }
        const BigInt b = g.range(-200, 200);
        const auto r = solve_linear_diophantine(c, b);
        // Solvable iff gcd | b (with gcd 0 meaning every c is 0).
        const bool solvable = content == 0 ? b == 0 : b % content == 0;
        CHECK(r.has_value() == solvable);
        if (r) {
            BigInt sum = 0;
            for (std::size_t j = 0; j < k; ++j) sum += c[j] * (*r)[j];
            CHECK(sum == b);
        }
    }
}

TEST_CASE("factorize pinned examples") {
    auto f = factorize(12);
    REQUIRE(f.size() == 2);
    CHECK(f[0].p == 2);
    CHECK(f[0].e == 2);
    CHECK(f[1].p == 3);
    CHECK(f[1].e == 1);

    CHECK(factorize(-1).empty());
    CHECK(factorize(1).empty());

    f = factorize(97);
    REQUIRE(f.size() == 1);
    CHECK(f[0].p == 97);
    CHECK(f[0].e == 1);

    CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("factorize agrees with an SPF sieve up to 10^6") {
    const std::uint32_t limit = 1000000;
    const SpfSieve sieve(limit);
    for (std::uint32_t n = 2; n <= limit; ++n) {
        const auto expected = sieve.factor(n);
        const auto got = factorize(BigInt(n));
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].p == expected[i].first);
            CHECK(got[i].e == expected[i].second);
        }
    }
}

TEST_CASE("factorize round-trips random values across the 10^6 range") {
    const SpfSieve sieve(1000000);
    SplitMix64 g(77);
    for (int i = 0; i < 2000; ++i) {
        const std::uint32_t n =
            static_cast<std::uint32_t>(2 + g.below(999999));
        const auto got = factorize(BigInt(n));
        const auto expected = sieve.factor(n);
        REQUIRE(got.size() == expected.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            CHECK(got[k].p == expected[k].first);
            CHECK(got[k].e == expected[k].second);
        }
    }
}

TEST_CASE("factorize round-trips random 64-bit values") {
    SplitMix64 g(123);
    for (int i = 0; i < 100; ++i) {
        BigInt n = g.next() >> (g.below(24));
        if (n == 0) n = 1 + BigInt(g.below(1000));
        if (g.below(2)) n = -n;
        const auto f = factorize(n);
        BigInt prod = 1;
        BigInt prev = 1;
        for (const PrimePower& pp : f) {
            CHECK(pp.p > prev);  // strictly increasing
            CHECK(pp.e >= 1);
            CHECK(is_probable_prime(pp.p));
            prev = pp.p;
            for (unsigned k = 0; k < pp.e; ++k) prod *= pp.p;
        }
        CHECK(prod == abs_val(n));
    }
}

TEST_CASE("is_probable_prime agrees with the sieve and rejects Carmichaels") {
    const SpfSieve sieve(20000);
    for (std::uint32_t n = 2; n <= 20000; ++n)
        CHECK(is_probable_prime(BigInt(n)) == sieve.is_prime(n));
    // Carmichael numbers fool Fermat tests but not strong ones.
    for (long c : {561L, 1105L, 1729L, 2465L, 2821L, 6601L, 8911L})
        CHECK_FALSE(is_probable_prime(BigInt(c)));
    CHECK(is_probable_prime(BigInt("1000000000000000003")));
    CHECK_FALSE(is_probable_prime(BigInt("1000000000000000005")));
}

TEST_CASE("crt_combine pinned examples") {
    CHECK(crt_combine({{BigInt(1), BigInt(3)}, {BigInt(2), BigInt(5)}}) == 7);
    CHECK(crt_combine({{BigInt(0), BigInt(1)}}) == 0);
    CHECK(crt_combine({{BigInt(2), BigInt(4)}, {BigInt(1), BigInt(3)}}) == 10);
    CHECK_THROWS_AS(
        crt_combine({{BigInt(1), BigInt(4)}, {BigInt(1), BigInt(6)}}), Error);
}

TEST_CASE("crt_combine random property") {
    SplitMix64 g(5);
    const long moduli_pool[] = {3, 4, 5, 7, 11, 13, 17, 19, 23};
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::pair<BigInt, BigInt>> sys;
        BigInt prod = 1;
        for (long m : moduli_pool) {
            if (g.below(2) == 0) continue;
            sys.emplace_back(BigInt(g.below(static_cast<std::uint64_t>(m))),
                             BigInt(m));
            prod *= m;
        }
        if (sys.empty()) sys.emplace_back(BigInt(0), BigInt(1));
        const BigInt x = crt_combine(sys);
        CHECK(x >= 0);
        CHECK(x < prod);
        for (const auto& [r, m] : sys) CHECK(mod_floor(x, m) == r);
    }
}

TEST_CASE("mod_inverse and mod_pow") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(1, 1) == 0);  // everything is 0 mod 1
    CHECK_THROWS_AS(mod_inverse(2, 4), Error);
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(5, 0, 7) == 1);
    SplitMix64 g(9);
    for (int i = 0; i < 1000; ++i) {
        const BigInt m = 2 + g.below(1000);
        BigInt a = g.range(-2000, 2000);
        if (gcd(a, m) != 1) continue;
        const BigInt inv = mod_inverse(a, m);
        CHECK(inv >= 0);
        CHECK(inv < m);
        CHECK(mod_floor(a * inv, m) == 1);
    }
}

TEST_CASE("mod_floor returns least non-negative residue") {
    CHECK(mod_floor(-7, 3) == 2);
    CHECK(mod_floor(7, 3) == 1);
    CHECK(mod_floor(-9, 3) == 0);
    CHECK(mod_floor(-7, -3) == 2);  // sign of modulus is ignored
}
