#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "diagsq/errors.hpp"

namespace diagsq {

// Exact arbitrary-precision integer.  Everything scalar in the library is a
// BigInt; intermediate values of the constructions are unbounded.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

// Strict decimal parser for the JSON convention (integers as decimal
// strings).  Rejects anything cpp_int would merely tolerate.
inline BigInt parse_bigint(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    require(i < s.size(), ErrorKind::bad_input, "empty integer literal");
    for (std::size_t j = i; j < s.size(); ++j)
        require(s[j] >= '0' && s[j] <= '9', ErrorKind::bad_input,
                "malformed integer literal: " + s);
    return BigInt(s);
}

inline bool is_even(const BigInt& v) { return (v & 1) == 0; }
inline bool is_odd(const BigInt& v) { return (v & 1) != 0; }

inline BigInt abs_val(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Least non-negative residue; works for negative a and positive m.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += abs_val(m);
    return r;
}

}  // namespace diagsq
