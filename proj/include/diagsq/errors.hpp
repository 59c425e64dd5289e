#pragma once

#include <stdexcept>
#include <string>

namespace diagsq {

// Every failure mode the library can signal.  The CLI maps kinds to the
// frozen exit-code contract: 1 bad input, 2 internal assertion (a bug),
// 3 condition violated / infeasible, 4 search budget exhausted.
enum class ErrorKind {
    bad_input,
    internal_assertion,
    condition_violated,
    zero_coefficient,
    not_pairwise_coprime,
    too_few_coefficients,
    trace_nonzero,
    budget_exhausted,
    dimension_mismatch,
    modulus_out_of_range,
    not_unimodular,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::bad_input: return "bad_input";
        case ErrorKind::internal_assertion: return "internal_assertion";
        case ErrorKind::condition_violated: return "condition_violated";
        case ErrorKind::zero_coefficient: return "zero_coefficient";
        case ErrorKind::not_pairwise_coprime: return "not_pairwise_coprime";
        case ErrorKind::too_few_coefficients: return "too_few_coefficients";
        case ErrorKind::trace_nonzero: return "trace_nonzero";
        case ErrorKind::budget_exhausted: return "budget_exhausted";
        case ErrorKind::dimension_mismatch: return "dimension_mismatch";
        case ErrorKind::modulus_out_of_range: return "modulus_out_of_range";
        case ErrorKind::not_unimodular: return "not_unimodular";
    }
    return "unknown";
}

inline int to_exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::bad_input:
        case ErrorKind::dimension_mismatch:
        case ErrorKind::modulus_out_of_range:
            return 1;
        case ErrorKind::internal_assertion:
            return 2;
        case ErrorKind::budget_exhausted:
            return 4;
        default:
            return 3;
    }
}

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

// Precondition guard for user-facing contracts.
inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

// Proof-step identity guard: these conditions are theorems, so a failure
// means the implementation (not the input) is wrong.
inline void internal_check(bool cond, const std::string& msg) {
    if (!cond) throw Error(ErrorKind::internal_assertion, msg);
}

}  // namespace diagsq
