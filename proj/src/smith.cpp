#include "diagsq/smith.hpp"

#include "diagsq/errors.hpp"

namespace diagsq {

std::optional<std::vector<BigInt>> smith_solve(const RectMat& m,
                                               const std::vector<BigInt>& b) {
    const std::size_t rows = m.rows(), cols = m.cols();
    require(b.size() == rows, ErrorKind::dimension_mismatch,
            "right-hand side length");
    RectMat a = m;
    std::vector<BigInt> rhs = b;            // row ops mirror onto rhs
    RectMat q(cols, cols);                  // column ops accumulate here
    for (std::size_t i = 0; i < cols; ++i) q.at(i, i) = 1;

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        // Pivot: smallest nonzero magnitude in the trailing submatrix keeps
        // intermediate entries tame.
        std::size_t pi = t, pj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                const BigInt& v = a.at(i, j);
                if (v == 0) continue;
                if (best == 0 || abs_val(v) < best) {
                    best = abs_val(v);
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;  // trailing block is zero
        if (pi != t) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(a.at(t, j), a.at(pi, j));
            std::swap(rhs[t], rhs[pi]);
        }
        if (pj != t) {
            for (std::size_t i = 0; i < rows; ++i)
                std::swap(a.at(i, t), a.at(i, pj));
            for (std::size_t i = 0; i < cols; ++i)
                std::swap(q.at(i, t), q.at(i, pj));
        }
        // Clear row t and column t outside the pivot; division with
        // remainder may need several sweeps as smaller residues swap in.
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a.at(i, t) == 0) continue;
                BigInt qq = a.at(i, t) / a.at(t, t);
                if (qq != 0) {
                    for (std::size_t j = t; j < cols; ++j)
                        a.at(i, j) -= qq * a.at(t, j);
                    rhs[i] -= qq * rhs[t];
                }
                if (a.at(i, t) != 0) {
                    // Remainder strictly smaller: promote it to pivot.
                    for (std::size_t j = 0; j < cols; ++j)
                        std::swap(a.at(t, j), a.at(i, j));
                    std::swap(rhs[t], rhs[i]);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a.at(t, j) == 0) continue;
                BigInt qq = a.at(t, j) / a.at(t, t);
                if (qq != 0) {
                    for (std::size_t i = 0; i < rows; ++i)
                        a.at(i, j) -= qq * a.at(i, t);
                    for (std::size_t i = 0; i < cols; ++i)
                        q.at(i, j) -= qq * q.at(i, t);
                }
                if (a.at(t, j) != 0) {
                    for (std::size_t i = 0; i < rows; ++i)
                        std::swap(a.at(i, t), a.at(i, j));
                    for (std::size_t i = 0; i < cols; ++i)
                        std::swap(q.at(i, t), q.at(i, j));
                    dirty = true;
                }
            }
            bool clear = true;
            for (std::size_t i = t + 1; i < rows && clear; ++i)
                if (a.at(i, t) != 0) clear = false;
            for (std::size_t j = t + 1; j < cols && clear; ++j)
                if (a.at(t, j) != 0) clear = false;
            if (clear && !dirty) break;
        }
    }

    // Diagonal system: a.at(i,i) * z_i = rhs_i, free variables zero.
    std::vector<BigInt> z(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        const BigInt d = i < cols ? a.at(i, i) : BigInt(0);
        if (d == 0) {
            if (rhs[i] != 0) return std::nullopt;
        } else if (rhs[i] % d != 0) {
            return std::nullopt;
        } else {
            z[i] = rhs[i] / d;
        }
    }
    // Undo the column operations: x = Q z.
    std::vector<BigInt> x(cols, 0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (q.at(i, j) != 0 && z[j] != 0) x[i] += q.at(i, j) * z[j];
    // Back-substitution check against the original system.
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < cols; ++j)
            if (m.at(i, j) != 0 && x[j] != 0) acc += m.at(i, j) * x[j];
        internal_check(acc == b[i], "smith_solve verification");
    }
    return x;
}

}  // namespace diagsq
