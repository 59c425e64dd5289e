#pragma once

#include <cstdint>
#include <vector>

#include "diagsq/explain.hpp"
#include "diagsq/intmat.hpp"

namespace diagsq {

// X, Y with X*Y - Y*X equal to the requested trace-zero matrix, exactly.
struct CommutatorPair {
    IntMat x, y;
};

struct CommutatorOptions {
    std::uint64_t seed = 0;
    // Cap on the structured candidate stream (and on the fallback's
    // randomized vector search).  The default is generous for n <= 8.
    std::size_t budget = 4096;
    // When set, conjugate by seeded elementary matrices to shrink entries
    // before searching and undo the conjugation on the result.
    bool precondition = false;
};

// Deterministic stream of structured candidate matrices: the nilpotent
// shift with small diagonals first, then companion matrices of monic
// polynomials with small coefficients, then (n <= 3) the full box of
// matrices with entries in [-2, 2], then seeded random small matrices.
// At most `budget` elements; duplicates are dropped.
std::vector<IntMat> gen_structured_X(std::size_t dim, std::size_t budget,
                                     std::uint64_t seed);

// Writes Z = XY - YX over the integers.   For each stream candidate X the
// map Y -> XY - YX is linear, so Y is found by an exact integer solve; if
// no candidate works, a constructive reduction (conjugate Z so its first
// column is (t, m, 0...0), peel one dimension, solve a column recurrence)
// produces a pair directly.  The result is verified before returning.
//
// Errors: trace_nonzero when tr(Z) != 0; budget_exhausted when the
// randomized part of the fallback's vector search fails within budget
// (never silent failure).
CommutatorPair commutator_decompose(const IntMat& z,
                                    const CommutatorOptions& opts = {},
                                    ExplainSink* explain = nullptr);

}  // namespace diagsq
