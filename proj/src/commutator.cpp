#include "diagsq/commutator.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "diagsq/errors.hpp"
#include "diagsq/numth.hpp"
#include "diagsq/rng.hpp"
#include "diagsq/smith.hpp"

namespace diagsq {
namespace {

// ---------------------------------------------------------------------------
// structured candidate stream
// ---------------------------------------------------------------------------

// Integer vectors of the given length with entries bounded by `radius`,
// ordered by (max |entry|, then positionwise over 0, 1, -1, 2, -2, ...).
// The all-zero vector comes first.
std::vector<std::vector<int>> small_vectors(std::size_t len, int radius,
                                            std::size_t cap) {
    std::vector<int> digit_order{0};
    for (int v = 1; v <= radius; ++v) {
        digit_order.push_back(v);
        digit_order.push_back(-v);
    }
    std::vector<std::vector<int>> out;
    for (int rho = 0; rho <= radius && out.size() < cap; ++rho) {
        const std::size_t digits = std::size_t(2 * rho + 1);
        std::vector<std::size_t> idx(len, 0);
        while (out.size() < cap) {
            int peak = 0;
            for (std::size_t i = 0; i < len; ++i) {
                peak = std::max(peak, std::abs(digit_order[idx[i]]));
            }
            if (peak == rho) {
                std::vector<int> v(len);
                for (std::size_t i = 0; i < len; ++i) v[i] = digit_order[idx[i]];
                out.push_back(std::move(v));
            }
            // odometer, most-significant digit first
            std::size_t pos = len;
            while (pos > 0 && ++idx[pos - 1] == digits) idx[--pos] = 0;
            if (pos == 0) break;
        }
    }
    return out;
}

IntMat upper_shift(std::size_t n) {
    IntMat s(n);
    for (std::size_t i = 0; i + 1 < n; ++i) s.at(i, i + 1) = 1;
    return s;
}

bool is_scalar(const IntMat& m) {
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && m.at(i, j) != 0) return false;
        }
        if (m.at(i, i) != m.at(0, 0)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// phase A: linear solve per structured candidate
// ---------------------------------------------------------------------------

BigInt trace_of_product(const IntMat& a, const IntMat& b) {
    BigInt acc = 0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) acc += a.at(i, j) * b.at(j, i);
    }
    return acc;
}

// tr(X^k Z) = 0 for 1 <= k < n is necessary for ad_X(Y) = Z to be solvable
// (substitute Z = XY - YX and use tr(X^{k+1} Y) = tr(X^k Y X)); with
// tr(Z) = 0 and Cayley-Hamilton this covers all powers.
bool trace_filter(const IntMat& x, const IntMat& z) {
    IntMat p = x;
    for (std::size_t k = 1; k < z.dim(); ++k) {
        if (trace_of_product(p, z) != 0) return false;
        if (k + 1 < z.dim()) p = p * x;
    }
    return true;
}

// Matrix of Y -> XY - YX acting on row-major vec(Y):
// K[(i,j),(k,l)] = X[i][k] d(j,l) - d(i,k) X[l][j].
RectMat ad_operator(const IntMat& x) {
    const std::size_t n = x.dim();
    RectMat k(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t kk = 0; kk < n; ++kk) {
                k.at(i * n + j, kk * n + j) += x.at(i, kk);
                k.at(i * n + j, i * n + kk) -= x.at(kk, j);
            }
        }
    }
    // tr(XY - YX) = 0 identically: the diagonal rows of K must sum to zero.
    for (std::size_t col = 0; col < n * n; ++col) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += k.at(i * n + i, col);
        internal_check(acc == 0, "ad operator must kill the trace");
    }
    return k;
}

std::optional<IntMat> solve_candidate(const IntMat& x, const IntMat& z) {
    const std::size_t n = z.dim();
    std::vector<BigInt> rhs(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rhs[i * n + j] = z.at(i, j);
    }
    auto sol = smith_solve(ad_operator(x), rhs);
    if (!sol) return std::nullopt;
    IntMat y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) y.at(i, j) = (*sol)[i * n + j];
    }
    internal_check(x * y - y * x == z, "linear solve produced a bad pair");
    return y;
}

// ---------------------------------------------------------------------------
// phase B, n = 2: closed form for primitive trace-zero [[a,b],[c,-a]]
// ---------------------------------------------------------------------------

CommutatorPair closed_form_dim2(const IntMat& z) {
    const BigInt a = z.at(0, 0), b = z.at(0, 1), c = z.at(1, 0);
    CommutatorPair out{IntMat(2), IntMat(2)};
    if (b == 0 && c == 0) {
        // primitive diagonal trace-zero: a = +-1
        internal_check(abs_val(a) == 1, "expected unit diagonal");
        out.x.at(0, 1) = 1;
        out.y.at(1, 0) = a;
        return out;
    }
    const BigInt g = gcd(b, c);
    const BigInt bb = b / g, cc = c / g;
    const ExtGcd eg = ext_gcd(cc, bb);  // cc*s + bb*t = 1
    internal_check(eg.g == 1, "reduced off-diagonals must be coprime");

    // q = -a*s + t0*bb with gcd(q, g) = 1; then qc + rb = -g*a for
    // r = -a*t - t0*cc.  A valid t0 exists: modulo any prime p | g either
    // bb != 0 (q sweeps all classes) or p divides b and c so p misses a
    // (primitivity) and the constant term -a*s (cc*s = 1 mod p).
    BigInt t0 = 0;
    bool found = false;
    for (int trial = 0; trial < 64 && !found; ++trial) {
        if (gcd(-a * eg.s + BigInt(trial) * bb, g) == 1) {
            t0 = trial;
            found = true;
        }
    }
    if (!found) {
        // direct CRT selection over the primes of g
        std::vector<std::pair<BigInt, BigInt>> classes;
        for (const auto& [p, e] : factorize(g)) {
            (void)e;
            if (mod_floor(bb, p) == 0) continue;  // constant term is a unit
            const BigInt forbidden =
                mod_floor(a * eg.s * mod_inverse(bb, p), p);
            classes.emplace_back(forbidden == 0 ? BigInt(1) : BigInt(0), p);
        }
        t0 = crt_combine(classes);
        internal_check(gcd(-a * eg.s + t0 * bb, g) == 1,
                       "shear class selection failed");
    }
    const BigInt q = -a * eg.s + t0 * bb;
    const BigInt r = -a * eg.t - t0 * cc;
    internal_check(q * c + r * b == -g * a, "shear identity failed");

    // X = [[g, q], [r, 0]], Y = [[0, u], [v, e]] with qe = b (mod g).
    const BigInt e = (g > 1) ? mod_floor(mod_inverse(q, g) * b, g) : BigInt(0);
    internal_check(mod_floor(b - q * e, g) == 0, "upper entry not divisible");
    internal_check(mod_floor(c + r * e, g) == 0, "lower entry not divisible");
    const BigInt u = (b - q * e) / g;
    const BigInt v = (-c - r * e) / g;
    out.x.at(0, 0) = g;
    out.x.at(0, 1) = q;
    out.x.at(1, 0) = r;
    out.y.at(0, 1) = u;
    out.y.at(1, 0) = v;
    out.y.at(1, 1) = e;
    return out;
}

// ---------------------------------------------------------------------------
// phase B, n >= 3: conjugate so the first column is (t, m, 0..0), peel
// ---------------------------------------------------------------------------

// Tracked elementary row operations: r accumulates the operations applied,
// rinv their inverse, so r * rinv = I throughout.
struct OpTracker {
    IntMat r, rinv;
    explicit OpTracker(std::size_t n)
        : r(IntMat::identity(n)), rinv(IntMat::identity(n)) {}

    void add_row(RectMat& a, std::size_t i, std::size_t j, const BigInt& c) {
        const std::size_t n = r.dim();
        for (std::size_t t = 0; t < a.cols(); ++t)
            a.at(i, t) += c * a.at(j, t);
        for (std::size_t t = 0; t < n; ++t) r.at(i, t) += c * r.at(j, t);
        for (std::size_t t = 0; t < n; ++t)
            rinv.at(t, j) -= c * rinv.at(t, i);
    }
    void swap_rows(RectMat& a, std::size_t i, std::size_t j) {
        const std::size_t n = r.dim();
        for (std::size_t t = 0; t < a.cols(); ++t)
            std::swap(a.at(i, t), a.at(j, t));
        for (std::size_t t = 0; t < n; ++t) std::swap(r.at(i, t), r.at(j, t));
        for (std::size_t t = 0; t < n; ++t)
            std::swap(rinv.at(t, i), rinv.at(t, j));
    }
    void negate_row(RectMat& a, std::size_t i) {
        const std::size_t n = r.dim();
        for (std::size_t t = 0; t < a.cols(); ++t) a.at(i, t) = -a.at(i, t);
        for (std::size_t t = 0; t < n; ++t) r.at(i, t) = -r.at(i, t);
        for (std::size_t t = 0; t < n; ++t) rinv.at(t, i) = -rinv.at(t, i);
    }
};

// Bring rows [r0, n) of column `col` to (gcd, 0, ..., 0) with gcd at row
// r0, >= 0, by Euclidean row combinations.
void reduce_column(RectMat& a, OpTracker& ops, std::size_t col,
                   std::size_t r0) {
    const std::size_t n = a.rows();
    while (true) {
        std::size_t piv = n;
        for (std::size_t i = r0; i < n; ++i) {
            if (a.at(i, col) == 0) continue;
            if (piv == n || abs_val(a.at(i, col)) < abs_val(a.at(piv, col)))
                piv = i;
        }
        internal_check(piv < n, "cannot reduce a zero column");
        bool progressed = false;
        for (std::size_t i = r0; i < n; ++i) {
            if (i == piv || a.at(i, col) == 0) continue;
            ops.add_row(a, i, piv, -(a.at(i, col) / a.at(piv, col)));
            progressed = true;
        }
        if (!progressed) {
            if (piv != r0) ops.swap_rows(a, piv, r0);
            if (a.at(r0, col) < 0) ops.negate_row(a, r0);
            return;
        }
    }
}

std::vector<BigInt> mat_apply(const IntMat& m, const std::vector<BigInt>& v) {
    const std::size_t n = m.dim();
    std::vector<BigInt> out(n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i] += m.at(i, j) * v[j];
    }
    return out;
}

// gcd of the 2x2 minors of the n x 2 matrix [v | w]; 0 iff v, w are
// linearly dependent over Q.
BigInt minor_gcd(const std::vector<BigInt>& v, const std::vector<BigInt>& w) {
    BigInt g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            g = gcd(g, v[i] * w[j] - v[j] * w[i]);
        }
    }
    return g;
}

std::vector<BigInt> content_normalize(std::vector<BigInt> v) {
    BigInt g = 0;
    for (const BigInt& e : v) g = gcd(g, e);
    if (g > 1) {
        for (BigInt& e : v) e /= g;
    }
    return v;
}

// Deterministic test family: e_i, e_i + e_j, e_i - e_j, e_i + e_j + e_k.
std::vector<std::vector<BigInt>> vector_family(std::size_t n) {
    std::vector<std::vector<BigInt>> fam;
    auto unit = [&](std::size_t i) {
        std::vector<BigInt> v(n, BigInt(0));
        v[i] = 1;
        return v;
    };
    for (std::size_t i = 0; i < n; ++i) fam.push_back(unit(i));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto v = unit(i);
            v[j] = 1;
            fam.push_back(v);
            v[j] = -1;
            fam.push_back(v);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                auto v = unit(i);
                v[j] = 1;
                v[k] = 1;
                fam.push_back(v);
            }
        }
    }
    return fam;
}

// A primitive v whose pair (v, Bv) has coprime 2x2 minors, so that [v|Bv]
// extends to a unimodular matrix.  B is non-scalar modulo every prime
// (callers arrange B[0][0] = 0 and content 1), hence for each p some
// family vector works; the gcd-1 demand across all primes at once is met
// by deterministic candidates, then seeded random ones, then a CRT repair
// across the primes of the best candidate's minor gcd.
std::vector<BigInt> find_completion_vector(const IntMat& b, SplitMix64& rng,
                                           std::size_t budget) {
    const std::size_t n = b.dim();
    const auto fam = vector_family(n);
    std::optional<std::vector<BigInt>> best;
    BigInt best_g = 0;
    auto consider = [&](const std::vector<BigInt>& v)
        -> std::optional<std::vector<BigInt>> {
        const BigInt g = minor_gcd(v, mat_apply(b, v));
        if (g == 1) return v;
        if (g != 0 && (best_g == 0 || g < best_g)) {
            best_g = g;
            best = v;
        }
        return std::nullopt;
    };
    for (const auto& v : fam) {
        if (auto hit = consider(v)) return *hit;
    }
    const std::size_t random_tries = std::min<std::size_t>(64, budget);
    for (std::size_t t = 0; t < random_tries; ++t) {
        std::vector<BigInt> v(n);
        for (auto& e : v) e = BigInt(rng.range(-4, 4));
        v = content_normalize(std::move(v));
        bool zero = true;
        for (const auto& e : v) zero = zero && e == 0;
        if (zero) continue;
        if (auto hit = consider(v)) return *hit;
    }
    internal_check(best.has_value(), "non-scalar matrix has an independent pair");

    // CRT repair: for each offending prime, substitute a family vector
    // that is independent mod that prime.
    std::set<BigInt> primes;
    std::vector<BigInt> v = *best;
    for (int round = 0; round < 4; ++round) {
        BigInt g = minor_gcd(v, mat_apply(b, v));
        if (g == 1) return v;
        require(g != 0, ErrorKind::budget_exhausted,
                "completion vector search lost independence");
        for (const auto& [p, e] : factorize(g)) {
            (void)e;
            primes.insert(p);
        }
        std::vector<std::pair<std::vector<BigInt>, BigInt>> picks;
        for (const BigInt& p : primes) {
            const std::vector<BigInt>* good = nullptr;
            for (const auto& w : fam) {
                const BigInt wg = minor_gcd(w, mat_apply(b, w));
                if (wg != 0 && mod_floor(wg, p) != 0) {
                    good = &w;
                    break;
                }
            }
            internal_check(good != nullptr,
                           "every prime admits an independent family vector");
            picks.emplace_back(*good, p);
        }
        std::vector<BigInt> merged(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::pair<BigInt, BigInt>> congruences;
            for (const auto& [w, p] : picks) congruences.emplace_back(w[i], p);
            merged[i] = crt_combine(congruences);
        }
        v = content_normalize(std::move(merged));
    }
    throw Error(ErrorKind::budget_exhausted,
                "completion vector search exceeded its repair rounds");
}

// Z primitive, trace zero, n >= 3: produce X, Y with XY - YX = Z.
CommutatorPair peel_construct(const IntMat& z, SplitMix64& rng,
                              std::size_t budget) {
    const std::size_t n = z.dim();
    const BigInt lambda = z.at(0, 0);

    // Z = lambda*I + m*B with B[0][0] = 0 and content(B) = 1, so B is
    // non-scalar mod every prime and gcd(lambda, m) = 1 (else a prime
    // would divide every entry of Z).
    IntMat shifted = z;
    for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= lambda;
    internal_check(!shifted.is_zero(), "scalar trace-zero matrix is zero");
    const BigInt m = shifted.content();
    IntMat b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) b.at(i, j) = shifted.at(i, j) / m;
    }
    internal_check(b.at(0, 0) == 0, "shifted matrix must vanish at (0,0)");
    internal_check(gcd(lambda, m) == 1, "peel parameters must be coprime");

    // Unimodular U with U e1 = v, U e2 = B v; then W = U^-1 Z U has first
    // column (lambda, m, 0, ..., 0).
    const std::vector<BigInt> v = find_completion_vector(b, rng, budget);
    const std::vector<BigInt> bv = mat_apply(b, v);
    RectMat pair_cols(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        pair_cols.at(i, 0) = v[i];
        pair_cols.at(i, 1) = bv[i];
    }
    OpTracker ops(n);
    reduce_column(pair_cols, ops, 0, 0);
    internal_check(pair_cols.at(0, 0) == 1, "completion vector not primitive");
    reduce_column(pair_cols, ops, 1, 1);
    internal_check(pair_cols.at(1, 1) == 1, "minor gcd was not 1");
    if (pair_cols.at(0, 1) != 0)
        ops.add_row(pair_cols, 0, 1, -pair_cols.at(0, 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            internal_check(pair_cols.at(i, j) == ((i == j) ? 1 : 0),
                           "pair reduction incomplete");
        }
    }
    internal_check((ops.r * ops.rinv) == IntMat::identity(n),
                   "operation tracker out of sync");

    const IntMat w = ops.r * z * ops.rinv;
    internal_check(w.at(0, 0) == lambda, "conjugated corner mismatch");
    internal_check(w.at(1, 0) == m, "conjugated subcorner mismatch");
    for (std::size_t i = 2; i < n; ++i) {
        internal_check(w.at(i, 0) == 0, "first column not cleared");
    }

    // Split W = [[lambda, zrow], [m*e1, Z2]] and absorb Z2 into the
    // commutator of C (companion of x^nn - m) with a matrix built by a
    // column recurrence.
    const std::size_t nn = n - 1;
    IntMat z2(nn);
    std::vector<BigInt> zrow(nn);
    for (std::size_t j = 0; j < nn; ++j) zrow[j] = w.at(0, j + 1);
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = 0; j < nn; ++j) z2.at(i, j) = w.at(i + 1, j + 1);
    }
    IntMat c(nn);
    for (std::size_t j = 0; j + 1 < nn; ++j) c.at(j + 1, j) = 1;
    c.at(0, nn - 1) = m;

    // f[nn-1] = lambda; f[k-1] = -tr(C^k Z2)/m (integral since Z2 = lambda*I
    // mod m and tr(C^k) = 0 for 0 < k < nn).
    std::vector<BigInt> f(nn);
    f[nn - 1] = lambda;
    {
        IntMat cp = c;
        for (std::size_t k = 1; k < nn; ++k) {
            const BigInt t = trace_of_product(cp, z2);
            internal_check(mod_floor(t, m) == 0, "peel trace not divisible");
            f[k - 1] = -t / m;
            if (k + 1 < nn) cp = cp * c;
        }
    }
    IntMat t_mat = z2;
    for (std::size_t j = 0; j < nn; ++j) t_mat.at(nn - 1, j) += f[j];
    {
        IntMat cp = IntMat::identity(nn);
        for (std::size_t k = 0; k < nn; ++k) {
            internal_check(trace_of_product(cp, t_mat) == 0,
                           "peel system inconsistent");
            if (k + 1 < nn) cp = (k == 0) ? c : cp * c;
        }
    }

    // Solve C*Y2 - Y2*C = T columnwise: col_{j+1}(Y2) = C*col_j - col_j(T),
    // starting from col_0 = 0; the wrap-around column is then automatic.
    IntMat y2(nn);
    std::vector<BigInt> col(nn, BigInt(0));
    for (std::size_t j = 0; j + 1 < nn; ++j) {
        std::vector<BigInt> next = mat_apply(c, col);
        for (std::size_t i = 0; i < nn; ++i) next[i] -= t_mat.at(i, j);
        for (std::size_t i = 0; i < nn; ++i) y2.at(i, j + 1) = next[i];
        col = std::move(next);
    }
    {
        std::vector<BigInt> wrap = mat_apply(c, col);
        for (std::size_t i = 0; i < nn; ++i) {
            // m * col_0(Y2) = 0 since col_0 = 0
            internal_check(wrap[i] == t_mat.at(i, nn - 1),
                           "column recurrence wrap-around failed");
        }
    }

    // Top row: Ct g = Y2t f - eta f - zrow needs its last entry divisible
    // by m; eta fixes that using gcd(lambda, m) = 1.
    std::vector<BigInt> y2tf(nn, BigInt(0));
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = 0; j < nn; ++j) y2tf[i] += y2.at(j, i) * f[j];
    }
    BigInt eta = 0;
    if (m > 1) {
        eta = mod_floor((y2tf[nn - 1] - zrow[nn - 1]) *
                            mod_inverse(mod_floor(lambda, m), m),
                        m);
    }
    std::vector<BigInt> theta(nn);
    for (std::size_t i = 0; i < nn; ++i)
        theta[i] = y2tf[i] - eta * f[i] - zrow[i];
    internal_check(mod_floor(theta[nn - 1], m) == 0,
                   "eta did not fix divisibility");
    std::vector<BigInt> g(nn);
    g[0] = theta[nn - 1] / m;
    for (std::size_t j = 1; j < nn; ++j) g[j] = theta[j - 1];

    IntMat xw(n), yw(n);
    for (std::size_t j = 0; j < nn; ++j) xw.at(0, j + 1) = f[j];
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = 0; j < nn; ++j) xw.at(i + 1, j + 1) = c.at(i, j);
    }
    yw.at(0, 0) = eta;
    for (std::size_t j = 0; j < nn; ++j) yw.at(0, j + 1) = g[j];
    yw.at(nn, 0) = 1;  // e_nn in the first column
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = 0; j < nn; ++j) yw.at(i + 1, j + 1) = y2.at(i, j);
    }
    internal_check(xw * yw - yw * xw == w, "peel assembly failed");

    CommutatorPair out{ops.rinv * xw * ops.r, ops.rinv * yw * ops.r};
    internal_check(out.x * out.y - out.y * out.x == z,
                   "peel conjugation failed");
    return out;
}

BigInt max_abs_entry(const IntMat& m) {
    BigInt best = 0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            best = std::max(best, abs_val(m.at(i, j)));
        }
    }
    return best;
}

}  // namespace

std::vector<IntMat> gen_structured_X(std::size_t dim, std::size_t budget,
                                     std::uint64_t seed) {
    internal_check(dim >= 2, "structured stream needs dim >= 2");
    std::vector<IntMat> out;
    std::set<std::string> seen;
    auto push = [&](const IntMat& m) {
        if (out.size() >= budget) return;
        if (seen.insert(m.to_string()).second) out.push_back(m);
    };

    // (1) nilpotent shift plus small diagonals; the pure shift leads.
    const IntMat shift = upper_shift(dim);
    for (const auto& d : small_vectors(dim, 2, budget + 1)) {
        IntMat m = shift;
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = d[i];
        push(m);
    }
    // (2) companion matrices of monic polynomials with small coefficients:
    // ones on the subdiagonal, coefficient vector in the last column.
    for (const auto& coeffs : small_vectors(dim, 2, budget + 1)) {
        IntMat m(dim);
        for (std::size_t i = 0; i + 1 < dim; ++i) m.at(i + 1, i) = 1;
        for (std::size_t i = 0; i < dim; ++i) m.at(i, dim - 1) = coeffs[i];
        push(m);
    }
    // (3) small dimensions: the whole box with entries in [-2, 2].
    if (dim <= 3 && out.size() < budget) {
        for (const auto& e : small_vectors(dim * dim, 2, budget * 4)) {
            if (out.size() >= budget) break;
            IntMat m(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j)
                    m.at(i, j) = e[i * dim + j];
            }
            push(m);
        }
    }
    // (4) seeded random small matrices to fill any remaining budget.
    SplitMix64 rng(seed ^ 0xC0'FF'EE'00ULL);
    std::size_t idle = 0;
    while (out.size() < budget && idle < 64) {
        IntMat m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j)
                m.at(i, j) = BigInt(rng.range(-3, 3));
        }
        const std::size_t before = out.size();
        push(m);
        idle = (out.size() == before) ? idle + 1 : 0;
    }
    return out;
}

CommutatorPair commutator_decompose(const IntMat& z,
                                    const CommutatorOptions& opts,
                                    ExplainSink* explain) {
    require(z.trace() == 0, ErrorKind::trace_nonzero,
            "commutators have trace zero");
    const std::size_t n = z.dim();
    if (n == 0 || z.is_zero()) {
        if (explain) (*explain)["phase"] = "zero";
        return CommutatorPair{IntMat(n), IntMat(n)};
    }
    internal_check(n >= 2, "nonzero 1x1 matrix cannot have trace zero");

    // Factor out the content: solve for the primitive part, scale Y back.
    const BigInt gamma = z.content();
    IntMat zbar(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            zbar.at(i, j) = z.at(i, j) / gamma;
    }

    // Optional preconditioning: greedy seeded conjugations that shrink the
    // largest entry; undone on the way out.
    SplitMix64 rng(opts.seed ^ 0x5EEDBA5Eu);
    IntMat pre = IntMat::identity(n), pre_inv = IntMat::identity(n);
    if (opts.precondition) {
        for (int tries = 0; tries < 48; ++tries) {
            const std::size_t i = std::size_t(rng.below(n));
            std::size_t j = std::size_t(rng.below(n - 1));
            if (j >= i) ++j;
            const BigInt coef = BigInt(rng.range(-2, 2));
            if (coef == 0) continue;
            // E = I + coef * e_i e_j^T; candidate = E^-1 zbar E
            IntMat e = IntMat::identity(n), einv = IntMat::identity(n);
            e.at(i, j) = coef;
            einv.at(i, j) = -coef;
            const IntMat cand = einv * zbar * e;
            if (max_abs_entry(cand) < max_abs_entry(zbar)) {
                zbar = cand;
                pre = pre * e;
                pre_inv = einv * pre_inv;
            }
        }
    }

    CommutatorPair pair{IntMat(n), IntMat(n)};
    bool solved = false;
    std::size_t tested = 0;
    // Exact linear solves are cheap for tiny n but n^2 x n^2 for large n,
    // so cap how many survive the trace filter into the solver.
    std::size_t solves_left = (n <= 3) ? 64 : 8;
    for (const IntMat& x : gen_structured_X(n, opts.budget, opts.seed)) {
        if (solves_left == 0) break;
        ++tested;
        if (is_scalar(x)) continue;
        if (!trace_filter(x, zbar)) continue;
        --solves_left;
        if (auto y = solve_candidate(x, zbar)) {
            pair = CommutatorPair{x, std::move(*y)};
            solved = true;
            break;
        }
    }
    if (explain) {
        (*explain)["engine"] = "commutator";
        (*explain)["candidates_tested"] = tested;
        (*explain)["phase"] = solved ? "structured" : "constructive";
    }
    if (!solved) {
        pair = (n == 2) ? closed_form_dim2(zbar)
                        : peel_construct(zbar, rng, opts.budget);
    }

    // Undo preconditioning, then restore the content on Y.
    if (opts.precondition) {
        pair.x = pre * pair.x * pre_inv;
        pair.y = pre * pair.y * pre_inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) pair.y.at(i, j) *= gamma;
    }
    internal_check(pair.x * pair.y - pair.y * pair.x == z,
                   "commutator result failed verification");
    return pair;
}

}  // namespace diagsq
