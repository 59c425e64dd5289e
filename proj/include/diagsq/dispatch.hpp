#pragma once

#include <vector>

#include "diagsq/commutator.hpp"
#include "diagsq/decomposition.hpp"
#include "diagsq/explain.hpp"

namespace diagsq {

// Smallest coefficient count the dispatcher accepts for dimension n:
// 4 for n = 2, 6 for n = 3 and even n >= 4, 8 for odd n >= 5.
std::size_t required_coefficients(std::size_t n);

// One border-splitting step: M1 = [[O, t1*Y], [t1*Z, I]] and M2 likewise
// with t2, where Y, Z are the off-diagonal blocks of A split at p and
// a1*t1 + a2*t2 = 1.  Then A - a1*M1^2 - a2*M2^2 is exactly block-diagonal;
// the diagonal residue blocks are returned for recursive decomposition.
struct BorderSplit {
    IntMat m1, m2;   // (p+q) x (p+q)
    IntMat top;      // p x p residual block
    IntMat bottom;   // q x q residual block
};
BorderSplit split_border(const BigInt& a1, const BigInt& a2, const IntMat& a,
                         std::size_t p, std::size_t q);

// Top-level dispatcher: routes by dimension (2 -> the universality-gated
// 2x2 engine with every coefficient; 3 -> six-term 3x3; even >= 4 ->
// six-term border+commutator; odd >= 5 -> border split into a 3x3 and an
// (n-3) block sharing coefficients 3..8).  Surplus coefficients receive
// zero matrices.  The result is verified before returning.
Decomposition decompose_any(const std::vector<BigInt>& a, const IntMat& target,
                            const CommutatorOptions& opts = {},
                            ExplainSink* explain = nullptr);

}  // namespace diagsq
