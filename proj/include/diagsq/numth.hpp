#pragma once

#include <optional>
#include <vector>

#include "diagsq/bigint.hpp"

namespace diagsq {

// gcd convention used repo-wide: gcd(0,0) = 0, results are >= 0,
// "d divides 0" is true for every d and "0 divides b" means b = 0.
BigInt gcd(const BigInt& a, const BigInt& b);

struct ExtGcd {
    BigInt g, s, t;  // a*s + b*t = g, g >= 0
};

// Canonical extended Euclid: deterministic (s, t) for fixed inputs.
ExtGcd ext_gcd(const BigInt& a, const BigInt& b);

struct BezoutPair {
    BigInt a, b, t_a, t_b;  // a*t_a + b*t_b = 1
};

// Requires gcd(a, b) = 1; throws internal_assertion otherwise (callers
// validate coprimality as a user-facing precondition first).
BezoutPair bezout_pair(const BigInt& a, const BigInt& b);

// One solution of c1*x1 + ... + ck*xk = b over the integers, or nullopt iff
// gcd(c1..ck) does not divide b.  Canonical left-to-right gcd chaining.
std::optional<std::vector<BigInt>> solve_linear_diophantine(
    const std::vector<BigInt>& c, const BigInt& b);

struct PrimePower {
    BigInt p;      // prime
    unsigned e;    // exponent >= 1
};

// Prime-power factorization of |n|, primes strictly increasing; empty for
// |n| = 1; error on n = 0.  Trial division + Miller-Rabin + Brent rho.
std::vector<PrimePower> factorize(const BigInt& n);

// Deterministic Miller-Rabin for the word-size-and-beyond values the
// factorizer sees (fixed base set; exact for < 3.3e24, probabilistic above).
bool is_probable_prime(const BigInt& n);

// x with x = r_i (mod m_i) for all i, 0 <= x < prod(m_i).  Moduli must be
// pairwise coprime and >= 1; error otherwise.
BigInt crt_combine(const std::vector<std::pair<BigInt, BigInt>>& residues);

// Inverse of a modulo m (m >= 1, gcd(a, m) = 1), in [0, m).
BigInt mod_inverse(const BigInt& a, const BigInt& m);

// a^e mod m for e >= 0, m >= 1.
BigInt mod_pow(const BigInt& a, const BigInt& e, const BigInt& m);

}  // namespace diagsq
