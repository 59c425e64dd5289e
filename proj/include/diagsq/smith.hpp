#pragma once

#include <optional>
#include <vector>

#include "diagsq/intmat.hpp"

namespace diagsq {

// Exact integer solution of M x = b (M rectangular), or nullopt iff no
// integer solution exists.  Diagonalizes M with tracked unimodular row and
// column operations (Smith-style), solves the diagonal system with
// divisibility checks, sets free variables to zero, and verifies M x = b
// by back-substitution before returning.
std::optional<std::vector<BigInt>> smith_solve(const RectMat& m,
                                               const std::vector<BigInt>& b);

}  // namespace diagsq
