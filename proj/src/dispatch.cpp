#include "diagsq/dispatch.hpp"

#include <string>
#include <utility>

#include "diagsq/decompose2.hpp"
#include "diagsq/decompose3.hpp"
#include "diagsq/decompose_even.hpp"
#include "diagsq/errors.hpp"
#include "diagsq/numth.hpp"

namespace diagsq {

std::size_t required_coefficients(std::size_t n) {
    internal_check(n >= 2, "bound table starts at dimension 2");
    if (n == 2) return 4;
    if (n == 3) return 6;
    return (n % 2 == 0) ? 6 : 8;
}

BorderSplit split_border(const BigInt& a1, const BigInt& a2, const IntMat& a,
                         std::size_t p, std::size_t q) {
    require(p >= 2 && q >= 2, ErrorKind::bad_input,
            "border split blocks must have dimension >= 2");
    require(a.dim() == p + q, ErrorKind::dimension_mismatch,
            "border split sizes must add up to the target dimension");
    require(gcd(a1, a2) == 1, ErrorKind::not_pairwise_coprime,
            "border pair must be coprime");

    const BezoutPair t = bezout_pair(a1, a2);
    auto [x, y, z, w] = block_split(a, p);

    BorderSplit out;
    out.m1 = block_compose(IntMat(p), t.t_a * y, t.t_a * z,
                           IntMat::identity(q));
    out.m2 = block_compose(IntMat(p), t.t_b * y, t.t_b * z,
                           IntMat::identity(q));

    const IntMat residual =
        a - a1 * (out.m1 * out.m1) - a2 * (out.m2 * out.m2);
    auto [rx, ry, rz, rw] = block_split(residual, p);
    internal_check(ry.is_zero() && rz.is_zero(),
                   "border squares must cancel the off-diagonal blocks");
    // closed form: top = X - (a1 t1^2 + a2 t2^2) YZ,
    //              bottom = W - (a1 t1^2 + a2 t2^2) ZY - (a1+a2) I
    const BigInt lam = a1 * t.t_a * t.t_a + a2 * t.t_b * t.t_b;
    internal_check(
        rx == x - IntMat::from_rect(lam * (y * z)) &&
            rw == w - IntMat::from_rect(lam * (z * y)) -
                      (a1 + a2) * IntMat::identity(q),
        "border residual does not match its closed form");
    out.top = std::move(rx);
    out.bottom = std::move(rw);
    return out;
}

Decomposition decompose_any(const std::vector<BigInt>& a, const IntMat& target,
                            const CommutatorOptions& opts,
                            ExplainSink* explain) {
    const std::size_t n = target.dim();
    require(n >= 2, ErrorKind::dimension_mismatch,
            "decomposition targets start at dimension 2");
    const std::size_t need = required_coefficients(n);
    require(a.size() >= need, ErrorKind::too_few_coefficients,
            "dimension " + std::to_string(n) + " needs at least " +
                std::to_string(need) + " coefficients");

    if (n == 2) {
        // The 2x2 engine has its own (weaker) admissibility decider and
        // genuinely uses every coefficient.
        if (explain) (*explain)["route"] = "decompose_m2";
        ExplainSink sub;
        Decomposition d = decompose_m2(a, target, explain ? &sub : nullptr);
        if (explain) (*explain)["engine_detail"] = std::move(sub);
        return d;
    }

    for (std::size_t i = 0; i < a.size(); ++i) {
        require(a[i] != 0, ErrorKind::zero_coefficient,
                "coefficient " + std::to_string(i + 1) + " is zero");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            require(gcd(a[i], a[j]) == 1, ErrorKind::not_pairwise_coprime,
                    "coefficients " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " share a factor");
        }
    }

    Decomposition out;
    out.coeffs = a;
    out.target = target;
    out.squares.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.squares[i] = SquareTerm{i + 1, IntMat(n)};

    auto adopt = [&](const Decomposition& sub, std::size_t offset) {
        // sub used coefficients a[offset .. offset + k); its term order
        // matches that slice.
        for (const SquareTerm& term : sub.squares) {
            out.squares[offset + term.coeff_index - 1] =
                SquareTerm{offset + term.coeff_index, term.matrix};
        }
    };

    if (n == 3) {
        if (explain) (*explain)["route"] = "decompose_3x3";
        ExplainSink sub;
        std::vector<BigInt> six(a.begin(), a.begin() + 6);
        adopt(decompose_3x3(six, target, explain ? &sub : nullptr), 0);
        if (explain) (*explain)["engine_detail"] = std::move(sub);
    } else if (n % 2 == 0) {
        if (explain) (*explain)["route"] = "decompose_even";
        ExplainSink sub;
        std::vector<BigInt> six(a.begin(), a.begin() + 6);
        adopt(decompose_even(six, target, opts, explain ? &sub : nullptr), 0);
        if (explain) (*explain)["engine_detail"] = std::move(sub);
    } else {
        // odd n >= 5: two border terms, then coefficients 3..8 serve the
        // 3x3 block and the (n-3) block simultaneously via the
        // block-diagonal squares [[X,O],[O,W]]^2 = [[X^2,O],[O,W^2]].
        if (explain) (*explain)["route"] = "border_split";
        const std::size_t p = 3, q = n - 3;
        const BorderSplit bs = split_border(a[0], a[1], target, p, q);
        out.squares[0] = SquareTerm{1, bs.m1};
        out.squares[1] = SquareTerm{2, bs.m2};

        std::vector<BigInt> six(a.begin() + 2, a.begin() + 8);
        ExplainSink sub3, subq;
        const Decomposition d3 =
            decompose_3x3(six, bs.top, explain ? &sub3 : nullptr);
        const Decomposition dq = decompose_any(six, bs.bottom, opts,
                                               explain ? &subq : nullptr);
        for (std::size_t k = 0; k < 6; ++k) {
            internal_check(d3.squares[k].coeff_index == k + 1 &&
                               dq.squares[k].coeff_index == k + 1,
                           "sub-decompositions must be in slice order");
            out.squares[2 + k] = SquareTerm{
                2 + k + 1, block_compose(d3.squares[k].matrix,
                                         RectMat(p, q), RectMat(q, p),
                                         dq.squares[k].matrix)};
        }
        if (explain) {
            (*explain)["top_block"] = std::move(sub3);
            (*explain)["bottom_block"] = std::move(subq);
        }
    }

    const VerifyResult vr = verify_decomposition(out);
    internal_check(vr.ok, "dispatcher produced an invalid decomposition");
    return out;
}

}  // namespace diagsq
