#pragma once

#include <optional>
#include <vector>

#include "diagsq/intmat.hpp"

namespace diagsq {

// Sum(a_i * X_i^2) over equal-dimension matrices; |a| must equal |X|.
IntMat eval_form(const std::vector<BigInt>& a, const std::vector<IntMat>& x);

// One term of a decomposition: which coefficient (1-based, in the caller's
// input order) the square belongs to, and the square-root matrix itself.
struct SquareTerm {
    std::size_t coeff_index;
    IntMat matrix;
};

// The exact identity target = sum over terms of coeffs[index-1] * matrix^2.
struct Decomposition {
    std::vector<BigInt> coeffs;
    IntMat target;
    std::vector<SquareTerm> squares;

    std::size_t nonzero_square_count() const;
};

struct VerifyResult {
    bool ok = false;
    // First differing cell when not ok.
    std::size_t row = 0, col = 0;
    BigInt expected, actual;
};

// True iff the decomposition's form-evaluation equals its target exactly;
// reports the first mismatching entry otherwise.
VerifyResult verify_decomposition(const Decomposition& d);

}  // namespace diagsq
