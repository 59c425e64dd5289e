#pragma once

#include <cstdint>
#include <vector>

#include "diagsq/decomposition.hpp"
#include "diagsq/explain.hpp"

namespace diagsq {

// [[0,P,Q],[0,u,1+u+u^2],[0,-1,-1-u]]: satisfies X^4 = X for every integer
// u, P, Q (the lower-right block is a root of x^2 + x + 1).  Each call
// verifies the quartic identity and feeds the outcome into the process-wide
// counters below.
IntMat build_quartic_root(const BigInt& p, const BigInt& q, const BigInt& u);

struct QuarticCounters {
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
};
QuarticCounters quartic_counters();
void reset_quartic_counters();

// Writes any 3x3 integer target as sum of six a[i] * R_i^2 with pairwise
// coprime nonzero coefficients.  Two idempotent border matrices absorb the
// bottom-left corner, a unimodular T turns the remainder into a companion-
// like pattern, and the pattern splits across two quartic roots and two
// nilpotent-style square roots.  Output is verified before returning.
//
// The even coefficient (there is at most one) is steered to the first
// role; roles are otherwise assigned in value order, so permuting the
// input coefficients permutes the output terms.
Decomposition decompose_3x3(const std::vector<BigInt>& a, const IntMat& target,
                            ExplainSink* explain = nullptr);

}  // namespace diagsq
