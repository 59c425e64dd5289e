#include "diagsq/decompose2.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "diagsq/errors.hpp"
#include "diagsq/numth.hpp"
#include "diagsq/universality2.hpp"

namespace diagsq {
namespace {

// The construction distinguishes three coefficient/target parity cases.
enum class ParityCase { one, two, three };

const char* case_name(ParityCase c) {
    switch (c) {
        case ParityCase::one: return "I";
        case ParityCase::two: return "II";
        default: return "III";
    }
}

// One CRT lift step: prime power p^e dividing the distinguished
// coefficient, plus the two helper roles whose y/z entries get adjusted.
struct LiftStep {
    BigInt p;
    unsigned e = 0;
    std::size_t alpha = 0;  // 0-based position into the c-vector
    std::size_t beta = 0;
};

}  // namespace

Decomposition decompose_m2(const std::vector<BigInt>& a, const IntMat& target,
                           ExplainSink* explain) {
    require(target.dim() == 2, ErrorKind::dimension_mismatch,
            "decompose_m2 expects a 2x2 target");
    const std::size_t m = a.size();

    const UniversalityVerdict verdict = decide_universal_m2(a);
    require(verdict.universal, ErrorKind::condition_violated,
            "coefficients do not give a universal form over M_2(Z)");
    for (std::size_t i = 0; i < m; ++i) {
        require(a[i] != 0, ErrorKind::zero_coefficient,
                "coefficient " + std::to_string(i + 1) + " is zero");
    }
    // Universality needs >= 3 coefficients not divisible by 4.
    internal_check(m >= 3, "universal form with fewer than 3 coefficients");

    const BigInt p = target.at(0, 0);
    const BigInt q = target.at(0, 1);
    const BigInt r = target.at(1, 0);
    const BigInt s = target.at(1, 1);
    const BigInt ps = p - s;

    // --- classify ---------------------------------------------------------
    std::vector<std::size_t> odd_idx, two_mod4_idx;
    for (std::size_t i = 0; i < m; ++i) {
        if (is_odd(a[i])) {
            odd_idx.push_back(i);
        } else if (mod_floor(a[i], 4) == 2) {
            two_mod4_idx.push_back(i);
        }
    }
    internal_check(odd_idx.size() >= 2,
                   "universal coefficients must contain two odd entries");

    ParityCase kase;
    if (odd_idx.size() >= 3) {
        kase = ParityCase::one;
    } else {
        // Exactly two odd coefficients: the third non-multiple of 4 that
        // universality guarantees must then be == 2 (mod 4).
        internal_check(!two_mod4_idx.empty(),
                       "expected a coefficient == 2 (mod 4)");
        const bool all_even = is_even(ps) && is_even(q) && is_even(r);
        kase = all_even ? ParityCase::three : ParityCase::two;
    }

    // --- assign roles ------------------------------------------------------
    // role_to_input[k] is the input index playing role k.  Role m-1 is the
    // distinguished slot realized as [[0, N], [1, 0]]; roles 0..m-2 carry
    // the constant-trace matrices.  First-fit by input index.
    std::vector<std::size_t> role_to_input(m);
    {
        std::vector<bool> used(m, false);
        auto take = [&](std::size_t input, std::size_t role) {
            role_to_input[role] = input;
            used[input] = true;
        };
        switch (kase) {
            case ParityCase::one:
                take(odd_idx[0], 0);
                take(odd_idx[1], 1);
                take(odd_idx[2], m - 1);
                break;
            case ParityCase::two:
                take(odd_idx[0], 0);
                take(odd_idx[1], 1);
                take(two_mod4_idx[0], m - 1);
                break;
            case ParityCase::three:
                take(two_mod4_idx[0], 0);
                take(odd_idx[0], 1);
                take(odd_idx[1], m - 1);
                break;
        }
        std::size_t role = 2;
        for (std::size_t i = 0; i < m; ++i) {
            if (!used[i]) role_to_input[role++] = i;
        }
        internal_check(role == m - 1, "role assignment must fill all slots");
    }
    std::vector<BigInt> b(m);
    for (std::size_t k = 0; k < m; ++k) b[k] = a[role_to_input[k]];

    // In case II the distinguished coefficient is 2 * (odd unit part).
    const BigInt am = b[m - 1];
    const BigInt am_odd = (kase == ParityCase::two) ? am / 2 : am;
    if (kase == ParityCase::two) {
        internal_check(is_odd(am_odd), "case II distinguished half must be odd");
    }

    // --- trace vector c ----------------------------------------------------
    // c[k] is the fixed trace of role-k's matrix, chosen so the linear
    // system below is solvable and the final defect divisibility holds.
    std::vector<BigInt> c(m - 1);
    switch (kase) {
        case ParityCase::one:
        case ParityCase::two:
            c[0] = am_odd;
            c[1] = is_even(ps) ? b[1] : 2 * b[1];
            for (std::size_t k = 2; k + 1 < m; ++k) c[k] = 2 * b[k];
            break;
        case ParityCase::three: {
            const BigInt half = ps / 2;
            c[0] = is_odd(half) ? am : 2 * am;
            for (std::size_t k = 1; k + 1 < m; ++k) c[k] = 2 * b[k];
            break;
        }
    }

    // --- prime adjustment --------------------------------------------------
    // Every prime of the distinguished coefficient divides c[0]; push one
    // extra factor into the trace of the first role coprime to it so that
    // the lift denominators stay invertible.
    std::vector<LiftStep> lifts;
    for (const auto& [pr, e] : factorize(abs_val(am_odd))) {
        LiftStep step;
        step.p = pr;
        step.e = e;
        std::optional<std::size_t> alpha, beta;
        for (std::size_t k = 0; k + 1 < m && !beta; ++k) {
            if (mod_floor(b[k], pr) == 0) continue;
            if (!alpha) {
                alpha = k;
            } else {
                beta = k;
            }
        }
        internal_check(alpha && beta,
                       "lift prime must miss two non-distinguished coefficients");
        step.alpha = *alpha;
        step.beta = *beta;
        internal_check(step.beta >= 1, "second lift role must have adjustable trace");
        c[step.alpha] *= pr;
        lifts.push_back(step);
    }

    // gcd of the combined weights b[k]*c[k]; 1 in cases I/II, exactly 2 in
    // case III (where the three right-hand sides are all even).
    std::vector<BigInt> d(m - 1);
    BigInt g = 0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        d[k] = b[k] * c[k];
        g = gcd(g, d[k]);
    }
    const BigInt want_g = (kase == ParityCase::three) ? 2 : 1;
    internal_check(g == want_g, "trace weights have unexpected gcd");

    // --- linear layer ------------------------------------------------------
    // sum d[k]*y[k] = q, sum d[k]*z[k] = r, sum d[k]*x[k] = (p-s+sum b c^2)/2.
    BigInt diag_rhs = ps;
    for (std::size_t k = 0; k + 1 < m; ++k) diag_rhs += b[k] * c[k] * c[k];
    internal_check(is_even(diag_rhs), "diagonal right-hand side must be even");
    diag_rhs /= 2;
    if (kase == ParityCase::three) {
        internal_check(is_even(diag_rhs) && is_even(q) && is_even(r),
                       "case III right-hand sides must all be even");
    }

    auto solve = [&](const BigInt& rhs, const char* what) {
        auto sol = solve_linear_diophantine(d, rhs);
        internal_check(sol.has_value(), what);
        return std::move(*sol);
    };
    std::vector<BigInt> y = solve(q, "upper off-diagonal system unsolvable");
    std::vector<BigInt> z = solve(r, "lower off-diagonal system unsolvable");
    std::vector<BigInt> x = solve(diag_rhs, "trace system unsolvable");

    auto defect = [&]() {
        BigInt acc = -p;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            acc += b[k] * (x[k] * x[k] + y[k] * z[k]);
        }
        return acc;
    };
    auto check_linear = [&]() {
        BigInt sy = 0, sz = 0, sx = 0;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            sy += d[k] * y[k];
            sz += d[k] * z[k];
            sx += d[k] * x[k];
        }
        internal_check(sy == q && sz == r && sx == diag_rhs,
                       "linear layer invariants broken");
    };
    check_linear();
    BigInt defect_a = defect();

    // --- case II parity repair ---------------------------------------------
    // The defect must become even before lifting modulo the odd half; a
    // (d[1], -d[0]) shift in whichever of x/z/y has an odd right-hand side
    // flips the defect parity while fixing all three linear equations.
    const char* repair_route = nullptr;
    if (kase == ParityCase::two && is_odd(defect_a)) {
        if (is_odd(ps)) {
            x[0] += d[1];
            x[1] -= d[0];
            repair_route = "x";
        } else if (is_odd(q)) {
            z[0] += d[1];
            z[1] -= d[0];
            repair_route = "z";
        } else {
            internal_check(is_odd(r), "case II needs an odd right-hand side");
            y[0] += d[1];
            y[1] -= d[0];
            repair_route = "y";
        }
        check_linear();
        defect_a = defect();
        internal_check(is_even(defect_a), "parity repair failed");
    }

    // --- CRT lifts ----------------------------------------------------------
    // Adjust (y, z) of roles alpha/beta by multiples of u = am_odd / p^e so
    // the defect gains divisibility by p^e without disturbing either the
    // linear layer or the divisibilities already won.
    ExplainSink lift_log = ExplainSink::array();
    BigInt done_modulus = (kase == ParityCase::two) ? 2 : 1;
    if (kase == ParityCase::two) {
        // guaranteed by the parity repair; nothing to do if defect is even
        internal_check(is_even(defect_a), "case II defect parity lost");
    }
    for (const LiftStep& step : lifts) {
        BigInt pe = 1;
        for (unsigned i = 0; i < step.e; ++i) pe *= step.p;
        const std::size_t al = step.alpha, be = step.beta;
        const BigInt u = am_odd / pe;
        internal_check(u * pe == am_odd, "prime power must divide exactly");

        const BigInt lift_p = c[be] * y[al] - c[al] * y[be];
        const BigInt lift_q = c[be] * z[al] - c[al] * z[be];
        const BigInt lift_r = u * (b[al] * c[al] * c[al] + b[be] * c[be] * c[be]);
        internal_check(mod_floor(lift_r, step.p) != 0,
                       "lift discriminant vanished mod p");

        BigInt t = 0;
        const BigInt t_step = (kase == ParityCase::two) ? 2 : 1;
        if (mod_floor(lift_q + t * lift_r, step.p) == 0) t = t_step;
        internal_check(mod_floor(lift_q + t * lift_r, step.p) != 0,
                       "no usable shear parameter");

        const BigInt denom = u * b[al] * b[be] * (lift_q + t * lift_r);
        const BigInt numer = defect_a + u * b[al] * b[be] * t * lift_p;
        BigInt k = mod_floor(-numer * mod_inverse(denom, pe), pe);
        if (kase == ParityCase::two && is_odd(k)) k += pe;  // keep defect even

        y[al] += k * u * b[be] * c[be];
        y[be] -= k * u * b[al] * c[al];
        z[al] += t * u * b[be] * c[be];
        z[be] -= t * u * b[al] * c[al];
        check_linear();

        const BigInt predicted =
            defect_a + u * b[al] * b[be] * (t * lift_p + k * (lift_q + t * lift_r));
        defect_a = defect();
        internal_check(defect_a == predicted, "defect update mismatch");
        done_modulus *= pe;
        internal_check(mod_floor(defect_a, done_modulus) == 0,
                       "lift lost earlier divisibility");

        if (explain) {
            lift_log.push_back({{"p", to_string(step.p)},
                                {"e", step.e},
                                {"alpha", al + 1},
                                {"beta", be + 1},
                                {"t", to_string(t)},
                                {"k", to_string(k)}});
        }
    }

    internal_check(mod_floor(defect_a, am) == 0,
                   "defect not divisible by distinguished coefficient");
    const BigInt cap_n = -defect_a / am;

    // --- assemble -----------------------------------------------------------
    Decomposition out;
    out.coeffs = a;
    out.target = target;
    out.squares.resize(m);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        IntMat xm(2);
        xm.at(0, 0) = x[k];
        xm.at(0, 1) = y[k];
        xm.at(1, 0) = z[k];
        xm.at(1, 1) = c[k] - x[k];
        out.squares[role_to_input[k]] = SquareTerm{role_to_input[k] + 1, xm};
    }
    {
        IntMat xm(2);
        xm.at(0, 1) = cap_n;
        xm.at(1, 0) = 1;
        out.squares[role_to_input[m - 1]] =
            SquareTerm{role_to_input[m - 1] + 1, xm};
    }
    const VerifyResult vr = verify_decomposition(out);
    internal_check(vr.ok, "decompose_m2 produced an invalid decomposition");

    if (explain) {
        ExplainSink roles = ExplainSink::array();
        for (std::size_t k = 0; k < m; ++k) roles.push_back(role_to_input[k] + 1);
        ExplainSink traces = ExplainSink::array();
        for (std::size_t k = 0; k + 1 < m; ++k) traces.push_back(to_string(c[k]));
        (*explain)["engine"] = "decompose_m2";
        (*explain)["case"] = case_name(kase);
        (*explain)["role_to_input"] = std::move(roles);
        (*explain)["traces"] = std::move(traces);
        (*explain)["parity_repair"] =
            repair_route ? ExplainSink(repair_route) : ExplainSink(nullptr);
        (*explain)["lifts"] = std::move(lift_log);
        (*explain)["defect"] = to_string(defect_a);
        (*explain)["last_square_scalar"] = to_string(cap_n);
    }
    return out;
}

}  // namespace diagsq
