#pragma once

#include "diagsq/bigint.hpp"
#include "diagsq/explain.hpp"

namespace diagsq {

// Solution of a1*(c^2 + 2u) + a2*(d^2 + 2v) = m with the side condition
// gcd(a1*(u - c), a2*(v - d)) = 1, for odd coprime nonzero a1, a2 and any
// integer m.  The even-dimension decomposition engine feeds this the trace
// budget its two distinguished blocks must absorb; the gcd condition is
// what lets it later solve for the off-diagonal blocks.
struct TraceSplit {
    BigInt c, d, u, v;
    // Audit values: base_sum = a1(c^2+2c) + a2(d^2+2d), and
    // half_gap = (m - base_sum)/2, which is a1(u-c) + a2(v-d).
    BigInt base_sum, half_gap;
};

// Deterministic for fixed inputs.  Throws Error{zero_coefficient} for a
// zero weight, Error{condition_violated} for an even weight, and
// Error{not_pairwise_coprime} when gcd(a1, a2) > 1.
TraceSplit solve_trace_split(const BigInt& a1, const BigInt& a2,
                             const BigInt& m, ExplainSink* explain = nullptr);

}  // namespace diagsq
