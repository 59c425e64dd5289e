#include "diagsq/trace_split.hpp"

#include <utility>
#include <vector>

#include "diagsq/errors.hpp"
#include "diagsq/numth.hpp"

namespace diagsq {
namespace {

// Smallest residue r in {0,1,2} with weight*(r^2+2r) != m (mod p), for each
// prime p of `modulus_source`; combined by CRT.  A nonzero quadratic has at
// most two roots mod an odd prime, so the three-element scan always finds
// one (and every prime here is odd).
BigInt pick_quadratic_avoider(const BigInt& modulus_source,
                              const BigInt& weight, const BigInt& m) {
    std::vector<std::pair<BigInt, BigInt>> residues;
    for (const auto& [p, e] : factorize(abs_val(modulus_source))) {
        (void)e;
        bool found = false;
        for (int r = 0; r <= 2 && !found; ++r) {
            const BigInt val = m - weight * BigInt(r * r + 2 * r);
            if (mod_floor(val, p) != 0) {
                residues.emplace_back(BigInt(r), p);
                found = true;
            }
        }
        internal_check(found, "quadratic avoider scan exhausted");
    }
    return residues.empty() ? BigInt(0) : crt_combine(residues);
}

}  // namespace

TraceSplit solve_trace_split(const BigInt& a1, const BigInt& a2,
                             const BigInt& m, ExplainSink* explain) {
    require(a1 != 0 && a2 != 0, ErrorKind::zero_coefficient,
            "trace split weights must be nonzero");
    require(is_odd(a1) && is_odd(a2), ErrorKind::condition_violated,
            "trace split weights must be odd");
    require(gcd(a1, a2) == 1, ErrorKind::not_pairwise_coprime,
            "trace split weights must be coprime");

    // d avoids m - a2(d^2+2d) = 0 mod every prime of a1; c symmetrically.
    const BigInt d = pick_quadratic_avoider(a1, a2, m);
    BigInt c = pick_quadratic_avoider(a2, a1, m);

    // Make m - (c+d) even; shifting by odd a2 flips the parity of c while
    // fixing it modulo every prime of a2.
    if (is_odd(m - (c + d))) c += a2;

    auto base_of = [&](const BigInt& cc) {
        return a1 * (cc * cc + 2 * cc) + a2 * (d * d + 2 * d);
    };
    BigInt base = base_of(c);
    internal_check(is_even(m - base), "trace split parity adjustment failed");
    internal_check(gcd(a1 * a2, m - base) == 1,
                   "per-prime avoidance did not yield coprimality");

    TraceSplit out;
    if (m == base && abs_val(a1) == 1 && abs_val(a2) == 1) {
        // Unit weights admit the only exact-balance solution: u-c = a1 and
        // v-d = -a2 gives a1(u-c) + a2(v-d) = 0 with both products = +-1.
        out.c = c;
        out.d = d;
        out.u = a1 + c;
        out.v = -a2 + d;
        out.base_sum = base;
        out.half_gap = 0;
    } else {
        // half_gap = 0 would force |a1(u-c)| = 1, unreachable for non-unit
        // weights; shifting c by 2*a2 keeps parity and all residues mod
        // primes of a1*a2 while moving base_sum (a nonconstant quadratic
        // in c hits any fixed value at most twice).
        int shifts = 0;
        while (m == base) {
            c += 2 * a2;
            base = base_of(c);
            internal_check(++shifts <= 8, "degenerate shift loop ran away");
            internal_check(gcd(a1 * a2, m - base) == 1,
                           "degenerate shift broke coprimality");
        }
        const BigInt half = (m - base) / 2;

        // a1*U + a2*V = half, then twist U = 1 (mod |half|) so that any
        // common prime of a1*U and a2*V would divide half yet be coprime
        // to both a1 (gcd(a1, m-base)=1) and U.
        const ExtGcd eg = ext_gcd(a1, a2);
        internal_check(eg.g == 1, "coprime weights expected");
        BigInt cap_u = eg.s * half;
        BigInt cap_v = eg.t * half;
        const BigInt mod = abs_val(half);
        const BigInt t =
            mod_floor((1 - cap_u) * mod_inverse(mod_floor(a2, mod), mod), mod);
        cap_u += t * a2;
        cap_v -= t * a1;
        internal_check(a1 * cap_u + a2 * cap_v == half,
                       "Bezout twist broke the linear identity");
        internal_check(gcd(a1 * cap_u, a2 * cap_v) == 1,
                       "gcd side condition failed");

        out.c = c;
        out.d = d;
        out.u = cap_u + c;
        out.v = cap_v + d;
        out.base_sum = base;
        out.half_gap = half;
        if (explain) (*explain)["twist"] = to_string(t);
    }

    internal_check(
        a1 * (out.c * out.c + 2 * out.u) + a2 * (out.d * out.d + 2 * out.v) ==
            m,
        "trace split identity failed");
    internal_check(gcd(a1 * (out.u - out.c), a2 * (out.v - out.d)) == 1,
                   "trace split gcd condition failed");

    if (explain) {
        (*explain)["engine"] = "trace_split";
        (*explain)["c"] = to_string(out.c);
        (*explain)["d"] = to_string(out.d);
        (*explain)["u"] = to_string(out.u);
        (*explain)["v"] = to_string(out.v);
        (*explain)["base_sum"] = to_string(out.base_sum);
        (*explain)["half_gap"] = to_string(out.half_gap);
    }
    return out;
}

}  // namespace diagsq
