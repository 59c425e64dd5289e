#pragma once

#include <string>
#include <vector>

#include "diagsq/decomposition.hpp"
#include "diagsq/explain.hpp"
#include "diagsq/intmat.hpp"
#include "diagsq/universality2.hpp"

namespace diagsq {

// All documents the tool reads or writes use this alias; ordered_json keeps
// insertion order so a fixed input always serializes to identical bytes.
using Json = nlohmann::ordered_json;

// Scalar convention: payload integers (matrix entries, coefficients,
// expected/actual values) are decimal strings so arbitrary precision
// survives the trip; small metadata (dimensions, indices, moduli, counts)
// stays a native JSON number whenever it fits in 64 bits.
Json scalar_to_json(const BigInt& v);
BigInt scalar_from_json(const Json& j);

// {"n": 2, "entries": [["7", "2"], ["3", "-1"]]}
Json matrix_to_json(const IntMat& m);
IntMat matrix_from_json(const Json& j);

Json coeffs_to_json(const std::vector<BigInt>& a);
std::vector<BigInt> coeffs_from_json(const Json& j);

// {"n":…, "coeffs":[…], "target":{…}, "squares":[{"coeff_index":1,
//  "matrix":{…}}, …]}; coeff_index is 1-based into coeffs.  Decoding is
// strict about shapes (every matrix must match the declared dimension) but
// tolerates unknown extra keys, so a decompose document annotated with an
// explain block still verifies.
Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

// {"universal": false, "witness_modulus": 4}; `detailed` appends the failed
// condition and witness prime.
Json verdict_to_json(const UniversalityVerdict& v, bool detailed = false);

// Residue-enumeration report: counts, the lexicographically least missed
// matrix, and the first `sample_cap` unreachable matrices in packed order
// (so any small witness is guaranteed to appear).
Json residue_report_to_json(const ResidueReport& rep,
                            std::size_t sample_cap = 256);

// {"error": {"kind": "...", "message": "..."}}
Json error_to_json(const Error& e);

// Strict parse of a JSON document; malformed text raises bad_input.
Json parse_json_text(const std::string& text);

// CLI payload indirection: "@path" loads the file, "-" reads stdin,
// anything else is treated as inline JSON.
Json load_json_arg(const std::string& arg);

// Coefficient list from a CLI flag: either comma-separated decimals
// ("1,1,-4") or a JSON array ("[1, \"1\", -4]").
std::vector<BigInt> parse_coeff_list(const std::string& text);

}  // namespace diagsq
