#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "diagsq/commutator.hpp"
#include "diagsq/rng.hpp"

using namespace diagsq;

namespace {

IntMat random_trace_zero(SplitMix64& g, std::size_t n, std::int64_t bound) {
    IntMat z(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) z.at(i, j) = g.range(-bound, bound);
    BigInt partial = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) partial += z.at(i, i);
    z.at(n - 1, n - 1) = -partial;
    return z;
}

void check_pair(const IntMat& z, const CommutatorPair& pair) {
    CHECK(pair.x.dim() == z.dim());
    CHECK(pair.y.dim() == z.dim());
    CHECK(pair.x * pair.y - pair.y * pair.x == z);
}

}  // namespace

TEST_CASE("pinned small cases") {
    // Zero input: the zero pair.
    const CommutatorPair zero = commutator_decompose(IntMat(2));
    CHECK(zero.x.is_zero());
    CHECK(zero.y.is_zero());

    // Nilpotent shift target: any verified pair.
    const IntMat shift(2, {0, 1, 0, 0});
    check_pair(shift, commutator_decompose(shift));

    // diag(1,-1): the first stream candidate (the shift) already solves it,
    // and zeroed free variables make the answer canonical.
    const IntMat diag(2, {1, 0, 0, -1});
    const CommutatorPair p = commutator_decompose(diag);
    CHECK(p.x == IntMat(2, {0, 1, 0, 0}));
    CHECK(p.y == IntMat(2, {0, 0, 1, 0}));
    check_pair(diag, p);
}

TEST_CASE("trace precondition") {
    try {
        commutator_decompose(IntMat::identity(2));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::trace_nonzero);
    }
}

TEST_CASE("structured stream contract") {
    // Budget 0: empty stream.
    CHECK(gen_structured_X(3, 0, 1).empty());

    // n=2: the first element is the nilpotent shift.
    const auto two = gen_structured_X(2, 64, 1);
    REQUIRE(!two.empty());
    CHECK(two[0] == IntMat(2, {0, 1, 0, 0}));

    // n=3: the stream contains the companion matrix of x^3 - 1.
    const auto three = gen_structured_X(3, 4096, 1);
    const IntMat cyc(3, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    bool found = false;
    for (const IntMat& m : three)
        if (m == cyc) found = true;
    CHECK(found);

    // Budget is an upper bound and the stream is duplicate-free.
    for (std::size_t budget : {1u, 10u, 200u}) {
        const auto s = gen_structured_X(2, budget, 7);
        CHECK(s.size() <= budget);
        std::set<std::string> seen;
        for (const IntMat& m : s) CHECK(seen.insert(m.to_string()).second);
    }

    // Deterministic for a fixed seed, seed-dependent tail.
    CHECK(gen_structured_X(2, 500, 9) == gen_structured_X(2, 500, 9));
}

TEST_CASE("stream-resistant input still decomposes") {
    // Hand-picked primitive symmetric matrix that no small structured
    // candidate solves; exercises the constructive fallback.
    const IntMat z(2, {37, 59, 83, -37});
    check_pair(z, commutator_decompose(z));

    // Forcing the fallback directly (empty stream) must also work.
    CommutatorOptions opts;
    opts.budget = 0;
    check_pair(z, commutator_decompose(z, opts));
    const IntMat z3(3, {121, -45, 997, 304, 5212, 81, -733, 64, -5333});
    check_pair(z3, commutator_decompose(z3, opts));
}

TEST_CASE("500 random trace-zero matrices decompose within default budget") {
    SplitMix64 g(8128);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 2 + g.below(3);
        const IntMat z = random_trace_zero(g, n, 100);
        CommutatorOptions opts;
        opts.seed = g.next();
        check_pair(z, commutator_decompose(z, opts));
    }
}

TEST_CASE("large-entry and larger-dimension inputs") {
    SplitMix64 g(496);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + g.below(4);  // up to 5
        const IntMat z = random_trace_zero(g, n, 1000000);
        CommutatorOptions opts;
        opts.seed = g.next();
        check_pair(z, commutator_decompose(z, opts));
    }
}

TEST_CASE("preconditioning is transparent") {
    SplitMix64 g(1234);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 2 + g.below(3);
        const IntMat z = random_trace_zero(g, n, 500);
        CommutatorOptions opts;
        opts.seed = g.next();
        opts.precondition = true;
        check_pair(z, commutator_decompose(z, opts));
    }
}

TEST_CASE("explain records the winning phase") {
    ExplainSink log;
    commutator_decompose(IntMat(3), {}, &log);
    CHECK(log.at("phase") == "zero");

    log = ExplainSink();
    const IntMat diag(2, {1, 0, 0, -1});
    commutator_decompose(diag, {}, &log);
    CHECK(log.at("phase") == "structured");

    log = ExplainSink();
    CommutatorOptions opts;
    opts.budget = 0;
    commutator_decompose(diag, opts, &log);
    CHECK(log.at("phase") == "constructive");
}
