#include "diagsq/decompose_even.hpp"

#include <string>
#include <utility>

#include "diagsq/errors.hpp"
#include "diagsq/json_io.hpp"
#include "diagsq/numth.hpp"

namespace diagsq {
namespace {

using Vec = std::vector<BigInt>;

Vec column_of(const IntMat& m, std::size_t j) {
    Vec v(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) v[i] = m.at(i, j);
    return v;
}

Vec row_of(const IntMat& m, std::size_t i) {
    Vec v(m.dim());
    for (std::size_t j = 0; j < m.dim(); ++j) v[j] = m.at(i, j);
    return v;
}

Vec scaled(const BigInt& c, const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

Vec combine(const BigInt& c1, const Vec& v1, const BigInt& c2, const Vec& v2) {
    Vec out(v1.size());
    for (std::size_t i = 0; i < v1.size(); ++i)
        out[i] = c1 * v1[i] + c2 * v2[i];
    return out;
}

void set_column(IntMat& m, std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < m.dim(); ++i) m.at(i, j) = v[i];
}

void set_row(IntMat& m, std::size_t i, const Vec& v) {
    for (std::size_t j = 0; j < m.dim(); ++j) m.at(i, j) = v[j];
}

IntMat corner_block(const BigInt& top_left, const BigInt& top_right,
                    std::size_t n) {
    IntMat m = IntMat::identity(n);
    m.at(0, 0) = top_left;
    m.at(0, 1) = top_right;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    return m;
}

}  // namespace

BigInt trace_budget(const BigInt& a1, const BigInt& a2, const IntMat& p,
                    const IntMat& s, std::size_t n) {
    return s.trace() - p.trace() - BigInt(n - 1) * (a1 + a2);
}

BorderBlocks solve_border_system(const BigInt& a1, const BigInt& a2,
                                 const TraceSplit& ts, const IntMat& q,
                                 const IntMat& r) {
    const std::size_t n = q.dim();
    internal_check(n >= 2, "border system needs blocks of dimension >= 2");
    const BigInt uc = a1 * (ts.u - ts.c);
    const BigInt vd = a2 * (ts.v - ts.d);
    const BezoutPair w = bezout_pair(uc, vd);
    const BezoutPair t = bezout_pair(a1, a2);

    BorderBlocks out{corner_block(ts.c, ts.u, n), corner_block(ts.d, ts.v, n),
                     IntMat(n), IntMat(n), IntMat(n), IntMat(n)};

    // Columns: q2 - q1 fixes the (u-c)/(v-d) weighted pair, then the plain
    // (a1, a2) pair absorbs q1; trailing columns split by a1 t1 + a2 t2 = 1.
    const Vec q1 = column_of(q, 0), q2 = column_of(q, 1);
    const Vec dq = combine(1, q2, -1, q1);
    const Vec alpha1 = scaled(w.t_a, dq), alpha3 = scaled(w.t_b, dq);
    const Vec rhs2 =
        combine(1, q1, -1, combine(a1 * ts.c, alpha1, a2 * ts.d, alpha3));
    const Vec alpha2 = scaled(t.t_a, rhs2), alpha4 = scaled(t.t_b, rhs2);
    set_column(out.b1, 0, alpha1);
    set_column(out.b1, 1, alpha2);
    set_column(out.b2, 0, alpha3);
    set_column(out.b2, 1, alpha4);
    for (std::size_t j = 2; j < n; ++j) {
        const Vec qj = column_of(q, j);
        set_column(out.b1, j, scaled(t.t_a, qj));
        set_column(out.b2, j, scaled(t.t_b, qj));
    }

    // Rows, mirrored: row 2 splits by (a1, a2), row 1 by the weighted pair.
    const Vec r1 = row_of(r, 0), r2 = row_of(r, 1);
    const Vec beta1 = scaled(t.t_a, r2), beta3 = scaled(t.t_b, r2);
    const Vec rhs4 =
        combine(1, r1, -1, combine(a1 * ts.c, beta1, a2 * ts.d, beta3));
    const Vec beta2 = scaled(w.t_a, rhs4), beta4 = scaled(w.t_b, rhs4);
    set_row(out.c1, 0, combine(1, beta1, -1, beta2));
    set_row(out.c1, 1, beta2);
    set_row(out.c2, 0, combine(1, beta3, -1, beta4));
    set_row(out.c2, 1, beta4);
    for (std::size_t i = 2; i < n; ++i) {
        const Vec ri = row_of(r, i);
        set_row(out.c1, i, scaled(t.t_a, ri));
        set_row(out.c2, i, scaled(t.t_b, ri));
    }

    internal_check(a1 * (out.b1 * out.x1) + a2 * (out.b2 * out.x2) == q,
                   "border columns do not reproduce Q");
    internal_check(a1 * (out.x1 * out.c1) + a2 * (out.x2 * out.c2) == r,
                   "border rows do not reproduce R");
    return out;
}

Decomposition decompose_even(const std::vector<BigInt>& a,
                             const IntMat& target,
                             const CommutatorOptions& opts,
                             ExplainSink* explain) {
    require(a.size() == 6, ErrorKind::bad_input,
            "even-dimension decomposition takes exactly six coefficients");
    require(target.dim() >= 4 && target.dim() % 2 == 0,
            ErrorKind::dimension_mismatch,
            "decompose_even expects an even dimension >= 4");
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

    // First two odd coefficients (pairwise coprimality leaves at most one
    // even value, so they exist) take the border roles.
    std::vector<std::size_t> role_to_input;
    for (std::size_t i = 0; i < 6 && role_to_input.size() < 2; ++i) {
        if (is_odd(a[i])) role_to_input.push_back(i);
    }
    internal_check(role_to_input.size() == 2, "expected two odd coefficients");
    for (std::size_t i = 0; i < 6; ++i) {
        if (i != role_to_input[0] && i != role_to_input[1])
            role_to_input.push_back(i);
    }
    std::vector<BigInt> b(6);
    for (std::size_t k = 0; k < 6; ++k) b[k] = a[role_to_input[k]];

    const std::size_t n = target.dim() / 2;
    auto [p, q_rect, r_rect, s] = block_split(target, n);
    const IntMat q = IntMat::from_rect(q_rect);
    const IntMat r = IntMat::from_rect(r_rect);

    ExplainSink split_log;
    const BigInt budget_m = trace_budget(b[0], b[1], p, s, n);
    const TraceSplit ts =
        solve_trace_split(b[0], b[1], budget_m, explain ? &split_log : nullptr);
    const BorderBlocks bb = solve_border_system(b[0], b[1], ts, q, r);

    const IntMat p0 = p - b[0] * (bb.b1 * bb.c1) - b[1] * (bb.b2 * bb.c2);
    const IntMat s0 = s - b[0] * (bb.c1 * bb.b1 + bb.x1 * bb.x1) -
                      b[1] * (bb.c2 * bb.b2 + bb.x2 * bb.x2);
    internal_check((p0 - s0).trace() == 0,
                   "diagonal residue must be trace-free");

    ExplainSink comm_log;
    const CommutatorPair pair =
        commutator_decompose(p0 - s0, opts, explain ? &comm_log : nullptr);
    const IntMat big_n = p0 - pair.x * pair.y;
    internal_check(big_n == s0 - pair.y * pair.x,
                   "the two faces of the residue block disagree");

    const BezoutPair t34 = bezout_pair(b[2], b[3]);
    const BezoutPair t56 = bezout_pair(b[4], b[5]);
    const IntMat zero_n(n);
    std::vector<IntMat> roots(6);
    roots[0] = block_compose(zero_n, bb.b1.rect(), bb.c1.rect(), bb.x1);
    roots[1] = block_compose(zero_n, bb.b2.rect(), bb.c2.rect(), bb.x2);
    roots[2] = block_compose(zero_n, (t34.t_a * pair.x).rect(),
                             pair.y.rect(), zero_n);
    roots[3] = block_compose(zero_n, (t34.t_b * pair.x).rect(),
                             pair.y.rect(), zero_n);
    roots[4] = block_compose(zero_n, (t56.t_a * big_n).rect(),
                             IntMat::identity(n).rect(), zero_n);
    roots[5] = block_compose(zero_n, (t56.t_b * big_n).rect(),
                             IntMat::identity(n).rect(), zero_n);

    Decomposition out;
    out.coeffs = a;
    out.target = target;
    out.squares.resize(6);
    for (std::size_t k = 0; k < 6; ++k) {
        out.squares[role_to_input[k]] =
            SquareTerm{role_to_input[k] + 1, roots[k]};
    }
    const VerifyResult vr = verify_decomposition(out);
    internal_check(vr.ok, "decompose_even produced an invalid decomposition");

    if (explain) {
        ExplainSink roles = ExplainSink::array();
        for (std::size_t k = 0; k < 6; ++k) roles.push_back(role_to_input[k] + 1);
        (*explain)["engine"] = "decompose_even";
        (*explain)["role_to_input"] = std::move(roles);
        (*explain)["trace_budget"] = to_string(budget_m);
        (*explain)["trace_split"] = std::move(split_log);
        (*explain)["commutator"] = std::move(comm_log);
        (*explain)["diagonal_residue"] = matrix_to_json(p0 - s0);
        (*explain)["residue_block"] = matrix_to_json(big_n);
    }
    return out;
}

}  // namespace diagsq
