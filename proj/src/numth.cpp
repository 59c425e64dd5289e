#include "diagsq/numth.hpp"

#include <algorithm>
#include <map>

#include "diagsq/rng.hpp"

namespace diagsq {

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt x = abs_val(a), y = abs_val(b);
    while (y != 0) {
        BigInt r = x % y;
        x = y;
        y = r;
    }
    return x;
}

ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
    // Iterative Euclid carrying Bezout rows (r, s, t) with r = a*s + b*t.
    BigInt old_r = a, r = b;
    BigInt old_s = 1, s = 0;
    BigInt old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;  // C++ truncated division; any consistent
                               // quotient keeps the invariant exact
        BigInt tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    internal_check(a * old_s + b * old_t == old_r, "ext_gcd identity");
    return {old_r, old_s, old_t};
}

BezoutPair bezout_pair(const BigInt& a, const BigInt& b) {
    ExtGcd e = ext_gcd(a, b);
    internal_check(e.g == 1, "bezout_pair needs coprime inputs");
    return {a, b, e.s, e.t};
}

std::optional<std::vector<BigInt>> solve_linear_diophantine(
    const std::vector<BigInt>& c, const BigInt& b) {
    require(!c.empty(), ErrorKind::bad_input,
            "diophantine solver needs at least one coefficient");
    const std::size_t k = c.size();
    // Chain gcds left to right: g_i = gcd(c_1..c_i), with Bezout
    // combinations expressing g_i over the prefix.
    std::vector<BigInt> g(k);       // running gcds
    std::vector<ExtGcd> steps(k);   // g_i = g_{i-1}*s + c_i*t
    g[0] = abs_val(c[0]);
    steps[0] = {g[0], c[0] < 0 ? BigInt(-1) : BigInt(1), 0};
    for (std::size_t i = 1; i < k; ++i) {
        steps[i] = ext_gcd(g[i - 1], c[i]);
        g[i] = steps[i].g;
    }
    if (g[k - 1] == 0) {
        // All coefficients zero: solvable iff b = 0.
        if (b != 0) return std::nullopt;
        return std::vector<BigInt>(k, 0);
    }
    if (b % g[k - 1] != 0) return std::nullopt;
    // Back-substitute: the full gcd times (b / g) distributes over the chain.
    std::vector<BigInt> x(k, 0);
    BigInt carry = b / g[k - 1];  // multiplier for g_{k-1}
    for (std::size_t i = k; i-- > 1;) {
        x[i] = carry * steps[i].t;
        carry = carry * steps[i].s;  // multiplier for g_{i-1}
    }
    x[0] = carry * steps[0].s;
    BigInt check = 0;
    for (std::size_t i = 0; i < k; ++i) check += c[i] * x[i];
    internal_check(check == b, "diophantine back-substitution");
    return x;
}

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    static const unsigned small[] = {2,  3,  5,  7,  11, 13,
                                     17, 19, 23, 29, 31, 37};
    for (unsigned p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    unsigned r = 0;
    while (is_even(d)) { d >>= 1; ++r; }
    for (unsigned a : small) {
        BigInt x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = (x * x) % n;
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

// Brent-style rho with deterministic seeding; n must be odd, composite,
// not a perfect power of a small prime (trial division already ran).
BigInt rho_split(const BigInt& n, SplitMix64& rng) {
    for (;;) {
        BigInt y = BigInt(rng.next() % 1000003) % n;
        BigInt c = BigInt(rng.next() % 1000003) % n;
        if (c == 0) c = 1;
        BigInt x = y, d = 1;
        BigInt saved_x = x, saved_y = y;
        std::uint64_t limit = 1;
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < limit; ++i)
                y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < limit && d == 1) {
                saved_y = y;
                BigInt prod = 1;
                std::uint64_t batch = std::min<std::uint64_t>(128, limit - k);
                for (std::uint64_t i = 0; i < batch; ++i) {
                    y = (y * y + c) % n;
                    prod = (prod * abs_val(x - y)) % n;
                }
                d = gcd(prod, n);
                k += batch;
            }
            limit *= 2;
            if (limit > (1ULL << 24)) break;  // restart with new parameters
        }
        if (d == n) {
            // Batch overshoot: replay one step at a time.
            y = saved_y;
            d = 1;
            while (d == 1) {
                y = (y * y + c) % n;
                d = gcd(abs_val(x - y), n);
            }
        }
        if (d != n && d != 1) return d;
        (void)saved_x;
    }
}

void factor_rec(const BigInt& n, std::map<BigInt, unsigned>& out,
                SplitMix64& rng) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    BigInt d = rho_split(n, rng);
    factor_rec(d, out, rng);
    factor_rec(n / d, out, rng);
}

}  // namespace

std::vector<PrimePower> factorize(const BigInt& n) {
    require(n != 0, ErrorKind::bad_input, "factorize(0) is undefined");
    BigInt m = abs_val(n);
    std::map<BigInt, unsigned> found;
    // Trial division by 2, 3 and the 6k+-1 wheel up to 10^6.
    for (BigInt p : {BigInt(2), BigInt(3)}) {
        while (m % p == 0) { ++found[p]; m /= p; }
    }
    for (BigInt p = 5; p <= 1000000 && p * p <= m; p += 6) {
        for (BigInt q : {p, BigInt(p + 2)}) {
            while (m % q == 0) { ++found[q]; m /= q; }
        }
    }
    if (m > 1) {
        if (m <= BigInt(1000000) * 1000000 || is_probable_prime(m)) {
            // Cofactor below the trial bound squared is prime by exclusion.
            ++found[m];
        } else {
            SplitMix64 rng(0x5EEDF00DULL);
            factor_rec(m, found, rng);
        }
    }
    std::vector<PrimePower> result;
    result.reserve(found.size());
    for (const auto& [p, e] : found) result.push_back({p, e});
    BigInt product = 1;
    for (const auto& pp : result)
        for (unsigned i = 0; i < pp.e; ++i) product *= pp.p;
    internal_check(product == abs_val(n), "factorize round-trip");
    return result;
}

BigInt crt_combine(const std::vector<std::pair<BigInt, BigInt>>& residues) {
    BigInt x = 0, modulus = 1;
    for (const auto& [r, m] : residues) {
        require(m >= 1, ErrorKind::bad_input, "crt modulus must be >= 1");
        require(gcd(modulus, m) == 1, ErrorKind::bad_input,
                "crt moduli must be pairwise coprime");
        // Lift x to satisfy the new congruence: x + modulus*k = r (mod m).
        BigInt k = mod_floor((r - x) * mod_inverse(mod_floor(modulus, m), m), m);
        x += modulus * k;
        modulus *= m;
        x = mod_floor(x, modulus);
    }
    for (const auto& [r, m] : residues)
        internal_check(mod_floor(x, m) == mod_floor(r, m), "crt residue");
    return x;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    require(m >= 1, ErrorKind::bad_input, "modulus must be >= 1");
    if (m == 1) return 0;
    ExtGcd e = ext_gcd(mod_floor(a, m), m);
    internal_check(e.g == 1, "mod_inverse needs coprime inputs");
    return mod_floor(e.s, m);
}

BigInt mod_pow(const BigInt& a, const BigInt& e, const BigInt& m) {
    require(m >= 1, ErrorKind::bad_input, "modulus must be >= 1");
    internal_check(e >= 0, "mod_pow exponent must be >= 0");
    BigInt base = mod_floor(a, m), result = 1, exp = e;
    while (exp > 0) {
        if (is_odd(exp)) result = (result * base) % m;
        base = (base * base) % m;
        exp >>= 1;
    }
    return result;
}

}  // namespace diagsq
