#include "diagsq/decompose3.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "diagsq/errors.hpp"
#include "diagsq/numth.hpp"

namespace diagsq {
namespace {

std::atomic<std::uint64_t> g_quartic_checks{0};
std::atomic<std::uint64_t> g_quartic_violations{0};

}  // namespace

IntMat build_quartic_root(const BigInt& p, const BigInt& q, const BigInt& u) {
    IntMat x(3);
    x.at(0, 1) = p;
    x.at(0, 2) = q;
    x.at(1, 1) = u;
    x.at(1, 2) = 1 + u + u * u;
    x.at(2, 1) = -1;
    x.at(2, 2) = -1 - u;
    g_quartic_checks.fetch_add(1, std::memory_order_relaxed);
    if (!(mat_pow(x, 4) == x)) {
        g_quartic_violations.fetch_add(1, std::memory_order_relaxed);
        internal_check(false, "quartic root identity X^4 = X failed");
    }
    return x;
}

QuarticCounters quartic_counters() {
    return QuarticCounters{g_quartic_checks.load(std::memory_order_relaxed),
                           g_quartic_violations.load(std::memory_order_relaxed)};
}

void reset_quartic_counters() {
    g_quartic_checks.store(0, std::memory_order_relaxed);
    g_quartic_violations.store(0, std::memory_order_relaxed);
}

Decomposition decompose_3x3(const std::vector<BigInt>& a, const IntMat& target,
                            ExplainSink* explain) {
    require(a.size() == 6, ErrorKind::bad_input,
            "3x3 decomposition takes exactly six coefficients");
    require(target.dim() == 3, ErrorKind::dimension_mismatch,
            "decompose_3x3 expects a 3x3 target");
    for (std::size_t i = 0; i < 6; ++i) {
        require(a[i] != 0, ErrorKind::zero_coefficient,
                "coefficient " + std::to_string(i + 1) + " is zero");
    }
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
            require(gcd(a[i], a[j]) == 1, ErrorKind::not_pairwise_coprime,
                    "coefficients " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " share a factor");
        }
    }

    // Value-sorted role assignment (so the construction is equivariant
    // under input permutations); the lone even coefficient, if any, must
    // take role 1 because roles 2-4 have to be odd.
    std::vector<std::size_t> order(6);
    for (std::size_t i = 0; i < 6; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        if (a[l] != a[r]) return a[l] < a[r];
        return l < r;
    });
    std::vector<std::size_t> role_to_input;
    for (std::size_t i : order) {
        if (is_even(a[i])) role_to_input.push_back(i);
    }
    internal_check(role_to_input.size() <= 1,
                   "pairwise coprime values admit one even entry");
    for (std::size_t i : order) {
        if (is_odd(a[i])) role_to_input.push_back(i);
    }
    std::vector<BigInt> b(6);
    for (std::size_t k = 0; k < 6; ++k) b[k] = a[role_to_input[k]];

    const BezoutPair t12 = bezout_pair(b[0], b[1]);
    const BezoutPair t34 = bezout_pair(b[2], b[3]);
    const BezoutPair t56 = bezout_pair(b[4], b[5]);

    // Border matrices: idempotent, so a*M = a*M^2 regardless of the
    // bottom-left weight m*t.
    const BigInt m = target.at(2, 0) - 1;
    const BigInt u = mod_floor(target.trace() - b[0] - 1, 2);
    IntMat m1(3), m2(3);
    m1.at(0, 0) = 1;
    m1.at(2, 0) = m * t12.t_a;
    m2.at(0, 0) = 1;
    m2.at(1, 1) = u;
    m2.at(2, 0) = m * t12.t_b;
    internal_check(m1 * m1 == m1 && m2 * m2 == m2,
                   "border matrices must be idempotent");

    const IntMat a_prime = target - b[0] * m1 - b[1] * m2;
    internal_check(a_prime.at(2, 0) == 1, "corner normalization failed");
    internal_check(is_even(a_prime.trace()), "reduced trace must be even");

    const BigInt c1 = a_prime.at(0, 0);
    const BigInt c2 = a_prime.at(1, 0);
    const BigInt c3 = a_prime.at(2, 1);
    const BigInt c4 = a_prime.at(2, 2);
    const BigInt c3t = c3 + b[2] + b[3];

    IntMat t_mat = IntMat::identity(3);
    t_mat.at(0, 1) = -c3t;
    t_mat.at(0, 2) = c1;
    t_mat.at(1, 2) = c2;
    const IntMat g = conjugate_unimodular(t_mat, a_prime);
    internal_check(g.at(0, 0) == 0 && g.at(1, 0) == 0 && g.at(2, 0) == 1,
                   "conjugated matrix lost its column pattern");
    internal_check(g.at(2, 1) == -(b[2] + b[3]),
                   "conjugated matrix lost its subdiagonal weight");

    const BigInt ca = g.at(0, 1), cb = g.at(0, 2);
    const BigInt cc = g.at(1, 1), cd = g.at(1, 2);
    const BigInt ce = g.at(2, 2);
    internal_check(ce == c1 + c2 * c3 + c4, "corner entry formula failed");
    internal_check(is_even(cc - ce), "companion parity invariant failed");

    // Split the pattern: roles 3,4 carry quartic roots with parameters
    // from the Bezout pair, roles 5,6 square to [[P-ish]] blocks.
    const BigInt h = (cc - ce - (b[2] + b[3])) / 2;
    const BigInt u3 = t34.t_a * h, u4 = t34.t_b * h;
    const BigInt q3 = t34.t_a * cb, q4 = t34.t_b * cb;
    const BigInt big_p = cd - b[2] * (1 + u3 + u3 * u3) -
                         b[3] * (1 + u4 + u4 * u4);
    const BigInt p3 = t34.t_a * (ca - (b[4] + b[5]) * big_p);
    const BigInt p4 = t34.t_b * (ca - (b[4] + b[5]) * big_p);
    const BigInt big_q = cc - (b[2] * u3 + b[3] * u4);
    internal_check(big_q == ce + b[2] * (1 + u3) + b[3] * (1 + u4),
                   "the two faces of Q disagree");

    const IntMat x3 = build_quartic_root(p3, q3, u3);
    const IntMat x4 = build_quartic_root(p4, q4, u4);
    auto make_y = [&](const BigInt& t) {
        IntMat y(3);
        y.at(0, 2) = big_p;
        y.at(1, 0) = t;
        y.at(1, 2) = t * big_q;
        y.at(2, 1) = 1;
        return y;
    };
    const IntMat y5 = make_y(t56.t_a);
    const IntMat y6 = make_y(t56.t_b);

    const IntMat x3_sq = x3 * x3, x4_sq = x4 * x4;
    internal_check(g == b[2] * (x3_sq * x3_sq) + b[3] * (x4_sq * x4_sq) +
                            b[4] * (y5 * y5) + b[5] * (y6 * y6),
                   "pattern split failed");

    const IntMat t_inv = unimodular_inverse(t_mat);
    std::vector<IntMat> roots(6);
    roots[0] = m1;
    roots[1] = m2;
    roots[2] = t_mat * x3_sq * t_inv;
    roots[3] = t_mat * x4_sq * t_inv;
    roots[4] = t_mat * y5 * t_inv;
    roots[5] = t_mat * y6 * t_inv;

    Decomposition out;
    out.coeffs = a;
    out.target = target;
    out.squares.resize(6);
    for (std::size_t k = 0; k < 6; ++k) {
        out.squares[role_to_input[k]] =
            SquareTerm{role_to_input[k] + 1, roots[k]};
    }
    const VerifyResult vr = verify_decomposition(out);
    internal_check(vr.ok, "decompose_3x3 produced an invalid decomposition");

    if (explain) {
        ExplainSink roles = ExplainSink::array();
        for (std::size_t k = 0; k < 6; ++k) roles.push_back(role_to_input[k] + 1);
        (*explain)["engine"] = "decompose_3x3";
        (*explain)["role_to_input"] = std::move(roles);
        (*explain)["m"] = to_string(m);
        (*explain)["u"] = to_string(u);
        (*explain)["pattern"] = {{"a", to_string(ca)}, {"b", to_string(cb)},
                                 {"c", to_string(cc)}, {"d", to_string(cd)},
                                 {"e", to_string(ce)}};
        (*explain)["h"] = to_string(h);
        (*explain)["p"] = to_string(big_p);
        (*explain)["q"] = to_string(big_q);
        (*explain)["transform"] = t_mat.to_string();
    }
    return out;
}

}  // namespace diagsq
