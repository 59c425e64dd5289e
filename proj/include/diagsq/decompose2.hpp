#pragma once

#include <vector>

#include "diagsq/decomposition.hpp"
#include "diagsq/explain.hpp"

namespace diagsq {

// Writes an arbitrary target T in M_2(Z) as sum a[i] * X_i^2 with integer
// 2x2 matrices X_i, provided the form passes decide_universal_m2 and every
// coefficient is nonzero.
//
// Construction sketch: all but one matrix is taken with constant trace
// c_i (X_i = [[x_i, y_i], [z_i, c_i - x_i]]), the last is [[0, N], [1, 0]]
// whose square is N * I.  The off-diagonal and trace-difference equations
// become linear Diophantine systems in x, y, z; the residual diagonal
// defect is absorbed into N after a CRT lifting pass that fixes it modulo
// the distinguished coefficient.
//
// Throws Error{condition_violated} when the universality decider rejects
// the coefficients and Error{zero_coefficient} when some a[i] == 0.
Decomposition decompose_m2(const std::vector<BigInt>& a, const IntMat& target,
                           ExplainSink* explain = nullptr);

}  // namespace diagsq
