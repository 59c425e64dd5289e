#include "diagsq/universality2.hpp"

#include <array>

#include "diagsq/numth.hpp"

namespace diagsq {

UniversalityVerdict decide_universal_m2(const std::vector<BigInt>& a) {
    require(!a.empty(), ErrorKind::bad_input, "empty coefficient list");
    const std::size_t m = a.size();
    UniversalityVerdict v;

    // Condition (i) via leave-one-out gcds: some prime divides >= m-1
    // coefficients iff some gcd-of-all-but-one is 0 or exceeds 1.
    std::vector<BigInt> prefix(m + 1, 0), suffix(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        prefix[i + 1] = gcd(prefix[i], a[i]);
    for (std::size_t i = m; i-- > 0;)
        suffix[i] = gcd(suffix[i + 1], a[i]);
    for (std::size_t i = 0; i < m; ++i) {
        BigInt g = gcd(prefix[i], suffix[i + 1]);
        if (g == 1) continue;
        v.universal = false;
        v.failed_condition = FailedCondition::prime_divides_all_but_one;
        // g = 0 means all other coefficients vanish, so every prime
        // qualifies; report the smallest.
        v.witness_prime = g == 0 ? BigInt(2) : factorize(g)[0].p;
        v.witness_modulus = v.witness_prime;
        return v;
    }

    // Condition (ii): at least three coefficients not divisible by 4.
    std::size_t non_multiples = 0;
    for (const auto& c : a)
        if (c % 4 != 0) ++non_multiples;
    if (non_multiples < 3) {
        v.universal = false;
        v.failed_condition =
            FailedCondition::fewer_than_three_non_multiples_of_4;
        v.witness_modulus = BigInt(4);
        return v;
    }

    v.universal = true;
    return v;
}

namespace {

// Packed index of a 2x2 matrix over Z_r: ((m00*r + m01)*r + m10)*r + m11.
// The packing order doubles as the lexicographic order on entries.

// Distinct values of s * X^2 over all X in M_2(Z_r), as packed indices.
std::vector<std::uint32_t> scaled_square_set(unsigned r, unsigned s) {
    const std::uint32_t total = r * r * r * r;
    std::vector<std::uint8_t> seen(total, 0);
    std::vector<std::uint32_t> out;
    for (unsigned x0 = 0; x0 < r; ++x0)
        for (unsigned x1 = 0; x1 < r; ++x1)
            for (unsigned x2 = 0; x2 < r; ++x2) {
                const unsigned cross = x1 * x2;
                for (unsigned x3 = 0; x3 < r; ++x3) {
                    const unsigned sum = x0 + x3;
                    const unsigned e0 = (s * (x0 * x0 + cross)) % r;
                    const unsigned e1 = (s * (x1 * sum)) % r;
                    const unsigned e2 = (s * (x2 * sum)) % r;
                    const unsigned e3 = (s * (x3 * x3 + cross)) % r;
                    const std::uint32_t idx =
                        ((e0 * r + e1) * r + e2) * r + e3;
                    if (!seen[idx]) {
                        seen[idx] = 1;
                        out.push_back(idx);
                    }
                }
            }
    return out;
}

struct Digits {
    std::uint8_t d0, d1, d2, d3;
};

}  // namespace

ResidueReport residue_universal_check(const std::vector<BigInt>& a,
                                      unsigned r, unsigned limit) {
    require(!a.empty(), ErrorKind::bad_input, "empty coefficient list");
    require(r >= 2 && r <= limit, ErrorKind::modulus_out_of_range,
            "modulus must be in [2, limit]");
    const std::uint32_t total = r * r * r * r;

    // addc[pos][x][q] = ((x + q) mod r) * r^(3-pos): digit-wise modular
    // addition contributes directly to the packed index.
    std::array<std::vector<std::uint32_t>, 4> addc;
    {
        std::uint32_t place = total / r;  // r^3
        for (unsigned pos = 0; pos < 4; ++pos) {
            addc[pos].assign(r * r, 0);
            for (unsigned x = 0; x < r; ++x)
                for (unsigned q = 0; q < r; ++q)
                    addc[pos][x * r + q] = ((x + q) % r) * place;
            place /= r;
        }
    }

    // Reachable set, grown one coefficient at a time.
    std::vector<std::uint8_t> cur(total, 0);
    cur[0] = 1;
    std::uint64_t cur_count = 1;
    for (const auto& coeff : a) {
        const unsigned s =
            static_cast<unsigned>(mod_floor(coeff, r).convert_to<unsigned>());
        if (s == 0) continue;  // adds only the zero matrix
        if (cur_count == total) break;  // already everything; sums stay full
        const std::vector<std::uint32_t> sq = scaled_square_set(r, s);
        std::vector<Digits> sq_digits;
        sq_digits.reserve(sq.size());
        for (std::uint32_t idx : sq) {
            Digits d;
            d.d3 = static_cast<std::uint8_t>(idx % r);
            idx /= r;
            d.d2 = static_cast<std::uint8_t>(idx % r);
            idx /= r;
            d.d1 = static_cast<std::uint8_t>(idx % r);
            idx /= r;
            d.d0 = static_cast<std::uint8_t>(idx);
            sq_digits.push_back(d);
        }
        std::vector<std::uint8_t> next(total, 0);
        std::uint64_t next_count = 0;
        for (std::uint32_t x = 0; x < total; ++x) {
            if (!cur[x]) continue;
            std::uint32_t t = x;
            const unsigned x3 = t % r;
            t /= r;
            const unsigned x2 = t % r;
            t /= r;
            const unsigned x1 = t % r;
            t /= r;
            const unsigned x0 = t;
            const std::uint32_t* a0 = &addc[0][x0 * r];
            const std::uint32_t* a1 = &addc[1][x1 * r];
            const std::uint32_t* a2 = &addc[2][x2 * r];
            const std::uint32_t* a3 = &addc[3][x3 * r];
            for (const Digits& d : sq_digits) {
                const std::uint32_t idx =
                    a0[d.d0] + a1[d.d1] + a2[d.d2] + a3[d.d3];
                if (!next[idx]) {
                    next[idx] = 1;
                    ++next_count;
                }
            }
        }
        cur.swap(next);
        cur_count = next_count;
    }

    ResidueReport report;
    report.modulus = r;
    report.reachable_count = cur_count;
    report.universal = (cur_count == total);
    if (!report.universal) {
        for (std::uint32_t idx = 0; idx < total; ++idx) {
            if (cur[idx]) continue;
            std::uint32_t t = idx;
            IntMat miss(2);
            miss.at(1, 1) = t % r;
            t /= r;
            miss.at(1, 0) = t % r;
            t /= r;
            miss.at(0, 1) = t % r;
            t /= r;
            miss.at(0, 0) = t;
            report.missed = miss;
            break;
        }
    }
    report.reachable = std::move(cur);
    return report;
}

std::uint64_t count_squares_m2_mod(unsigned r, unsigned limit) {
    require(r >= 2 && r <= limit, ErrorKind::modulus_out_of_range,
            "modulus must be in [2, limit]");
    return scaled_square_set(r, 1).size();
}

}  // namespace diagsq
