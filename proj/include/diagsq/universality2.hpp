#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diagsq/intmat.hpp"

namespace diagsq {

// Which half of the two-part universality criterion failed.
enum class FailedCondition {
    none,
    prime_divides_all_but_one,
    fewer_than_three_non_multiples_of_4,
};

struct UniversalityVerdict {
    bool universal = false;
    FailedCondition failed_condition = FailedCondition::none;
    // The offending prime (first condition only).
    std::optional<BigInt> witness_prime;
    // Modulus at which a finite-ring witness can be exhibited: the prime,
    // or 4 for the second condition.
    std::optional<BigInt> witness_modulus;
};

// Decides whether sum(a_i X_i^2) is universal over the 2x2 integer
// matrices: universal iff (i) no prime divides at least m-1 of the
// coefficients and (ii) at least three coefficients are not multiples
// of 4.  Zeros and negatives are permitted (every prime divides 0).
// Condition (i) is checked first; its witness prime is the smallest
// prime factor of the first offending leave-one-out gcd.
UniversalityVerdict decide_universal_m2(const std::vector<BigInt>& a);

struct ResidueReport {
    unsigned modulus = 0;
    bool universal = false;
    // Lexicographically least unreachable matrix (entry order
    // (0,0),(0,1),(1,0),(1,1)), absent iff universal.
    std::optional<IntMat> missed;
    std::uint64_t reachable_count = 0;
    // Membership bitset over packed matrices: index =
    // ((m00*r + m01)*r + m10)*r + m11.
    std::vector<std::uint8_t> reachable;
};

// Exhaustively computes the set of matrices over Z_r represented by the
// form, by iterated set-sums of the per-coefficient square sets.
// Cost is Theta(m * r^8) in the worst case; r is capped by `limit`.
ResidueReport residue_universal_check(const std::vector<BigInt>& a,
                                      unsigned r, unsigned limit = 16);

// |{X^2 : X in M_2(Z_r)}|; squaring is never surjective for r >= 2.
std::uint64_t count_squares_m2_mod(unsigned r, unsigned limit = 16);

}  // namespace diagsq
