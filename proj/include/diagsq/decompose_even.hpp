#pragma once

#include <vector>

#include "diagsq/commutator.hpp"
#include "diagsq/decomposition.hpp"
#include "diagsq/explain.hpp"
#include "diagsq/trace_split.hpp"

namespace diagsq {

// Trace budget for the two distinguished blocks of an even-dimension
// decomposition: with X1, X2 carrying 2x2 corners padded by
// I_{n-2}, solving a1(c^2+2u)+a2(d^2+2v) = tr(S)-tr(P)-(n-1)(a1+a2) makes
// tr(a1 X1^2 + a2 X2^2) equal tr(S)-tr(P) exactly.
BigInt trace_budget(const BigInt& a1, const BigInt& a2, const IntMat& p,
                    const IntMat& s, std::size_t n);

// The four n x n blocks per weight that reproduce the target's off-diagonal
// blocks: a1 B1 X1 + a2 B2 X2 = Q and a1 X1 C1 + a2 X2 C2 = R.
struct BorderBlocks {
    IntMat x1, x2, b1, b2, c1, c2;
};

// Componentwise Bezout solve of the four border equations; requires
// gcd(a1(u-c), a2(v-d)) = 1 (the trace-split side condition) and
// gcd(a1, a2) = 1.  All block identities are asserted before returning.
BorderBlocks solve_border_system(const BigInt& a1, const BigInt& a2,
                                 const TraceSplit& ts, const IntMat& q,
                                 const IntMat& r);

// Writes any 2n x 2n integer target (n >= 2) as sum of six a[i] * M_i^2
// with pairwise coprime nonzero coefficients.  Two border terms absorb the
// off-diagonal blocks, a commutator splits the diagonal residue, and two
// checkerboard pairs absorb its XY / YX halves plus the common remainder.
Decomposition decompose_even(const std::vector<BigInt>& a,
                             const IntMat& target,
                             const CommutatorOptions& opts = {},
                             ExplainSink* explain = nullptr);

}  // namespace diagsq
