#include "diagsq/decomposition.hpp"

#include "diagsq/errors.hpp"

namespace diagsq {

IntMat eval_form(const std::vector<BigInt>& a, const std::vector<IntMat>& x) {
    require(a.size() == x.size(), ErrorKind::dimension_mismatch,
            "coefficient and matrix counts differ");
    require(!x.empty(), ErrorKind::dimension_mismatch,
            "eval_form needs at least one term");
    const std::size_t n = x[0].dim();
    IntMat acc(n);
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i].dim() == n, ErrorKind::dimension_mismatch,
                "mixed matrix dimensions");
        acc = acc + a[i] * (x[i] * x[i]);
    }
    return acc;
}

std::size_t Decomposition::nonzero_square_count() const {
    std::size_t count = 0;
    for (const auto& term : squares)
        if (!term.matrix.is_zero()) ++count;
    return count;
}

VerifyResult verify_decomposition(const Decomposition& d) {
    const std::size_t n = d.target.dim();
    IntMat acc(n);
    for (const auto& term : d.squares) {
        require(term.coeff_index >= 1 && term.coeff_index <= d.coeffs.size(),
                ErrorKind::bad_input, "square term coefficient index");
        require(term.matrix.dim() == n, ErrorKind::dimension_mismatch,
                "square term dimension");
        acc = acc + d.coeffs[term.coeff_index - 1] * (term.matrix * term.matrix);
    }
    VerifyResult r;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (acc.at(i, j) != d.target.at(i, j)) {
                r.ok = false;
                r.row = i;
                r.col = j;
                r.expected = d.target.at(i, j);
                r.actual = acc.at(i, j);
                return r;
            }
    r.ok = true;
    return r;
}

}  // namespace diagsq
