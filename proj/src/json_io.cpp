#include "diagsq/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace diagsq {

namespace {

const BigInt kInt64Min = BigInt(std::numeric_limits<std::int64_t>::min());
const BigInt kInt64Max = BigInt(std::numeric_limits<std::int64_t>::max());

// Largest dimension the decoder will materialize; a guard against typo'd
// or hostile documents, far above anything the engines are meant for.
constexpr std::size_t kMaxDim = 512;

const Json& field(const Json& j, const char* name) {
    require(j.is_object(), ErrorKind::bad_input,
            std::string("expected a JSON object with a \"") + name +
                "\" field");
    auto it = j.find(name);
    require(it != j.end(), ErrorKind::bad_input,
            std::string("missing required field \"") + name + "\"");
    return *it;
}

std::size_t size_from_json(const Json& j, const char* what) {
    require(j.is_number_integer() || j.is_number_unsigned(),
            ErrorKind::bad_input, std::string(what) + " must be an integer");
    if (j.is_number_integer() && !j.is_number_unsigned())
        require(j.get<std::int64_t>() >= 0, ErrorKind::bad_input,
                std::string(what) + " must be non-negative");
    return static_cast<std::size_t>(j.get<std::uint64_t>());
}

}  // namespace

Json scalar_to_json(const BigInt& v) {
    if (v >= kInt64Min && v <= kInt64Max)
        return Json(static_cast<std::int64_t>(v));
    return Json(to_string(v));
}

BigInt scalar_from_json(const Json& j) {
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    throw Error(ErrorKind::bad_input,
                "expected an integer (number or decimal string), got: " +
                    j.dump());
}

Json matrix_to_json(const IntMat& m) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j)
            row.push_back(to_string(m.at(i, j)));
        entries.push_back(std::move(row));
    }
    Json out;
    out["n"] = m.dim();
    out["entries"] = std::move(entries);
    return out;
}

IntMat matrix_from_json(const Json& j) {
    const std::size_t n = size_from_json(field(j, "n"), "matrix field \"n\"");
    require(n >= 1 && n <= kMaxDim, ErrorKind::bad_input,
            "matrix dimension out of range: " + std::to_string(n));
    const Json& entries = field(j, "entries");
    require(entries.is_array() && entries.size() == n, ErrorKind::bad_input,
            "matrix \"entries\" must be an array of " + std::to_string(n) +
                " rows");
    IntMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Json& row = entries[i];
        require(row.is_array() && row.size() == n, ErrorKind::bad_input,
                "matrix row " + std::to_string(i) + " must have " +
                    std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) m.at(i, k) = scalar_from_json(row[k]);
    }
    return m;
}

Json coeffs_to_json(const std::vector<BigInt>& a) {
    Json out = Json::array();
    for (const BigInt& v : a) out.push_back(to_string(v));
    return out;
}

std::vector<BigInt> coeffs_from_json(const Json& j) {
    require(j.is_array(), ErrorKind::bad_input,
            "coefficients must be a JSON array");
    std::vector<BigInt> a;
    a.reserve(j.size());
    for (const Json& item : j) a.push_back(scalar_from_json(item));
    return a;
}

Json decomposition_to_json(const Decomposition& d) {
    Json squares = Json::array();
    for (const SquareTerm& term : d.squares) {
        Json t;
        t["coeff_index"] = term.coeff_index;
        t["matrix"] = matrix_to_json(term.matrix);
        squares.push_back(std::move(t));
    }
    Json out;
    out["n"] = d.target.dim();
    out["coeffs"] = coeffs_to_json(d.coeffs);
    out["target"] = matrix_to_json(d.target);
    out["squares"] = std::move(squares);
    return out;
}

Decomposition decomposition_from_json(const Json& j) {
    Decomposition d;
    const std::size_t n =
        size_from_json(field(j, "n"), "decomposition field \"n\"");
    d.coeffs = coeffs_from_json(field(j, "coeffs"));
    d.target = matrix_from_json(field(j, "target"));
    require(d.target.dim() == n, ErrorKind::dimension_mismatch,
            "declared n does not match the target's dimension");
    const Json& squares = field(j, "squares");
    require(squares.is_array(), ErrorKind::bad_input,
            "\"squares\" must be an array");
    for (const Json& item : squares) {
        SquareTerm term;
        term.coeff_index =
            size_from_json(field(item, "coeff_index"), "\"coeff_index\"");
        require(term.coeff_index >= 1 && term.coeff_index <= d.coeffs.size(),
                ErrorKind::bad_input,
                "coeff_index out of range: " +
                    std::to_string(term.coeff_index));
        term.matrix = matrix_from_json(field(item, "matrix"));
        require(term.matrix.dim() == n, ErrorKind::dimension_mismatch,
                "square matrix dimension does not match the target");
        d.squares.push_back(std::move(term));
    }
    return d;
}

Json verdict_to_json(const UniversalityVerdict& v, bool detailed) {
    Json out;
    out["universal"] = v.universal;
    if (!v.universal && v.witness_modulus)
        out["witness_modulus"] = scalar_to_json(*v.witness_modulus);
    if (detailed && !v.universal) {
        out["failed_condition"] =
            v.failed_condition == FailedCondition::prime_divides_all_but_one
                ? "prime_divides_all_but_one"
                : "fewer_than_three_non_multiples_of_4";
        if (v.witness_prime)
            out["witness_prime"] = scalar_to_json(*v.witness_prime);
    }
    return out;
}

Json residue_report_to_json(const ResidueReport& rep, std::size_t sample_cap) {
    const std::uint64_t total = static_cast<std::uint64_t>(rep.reachable.size());
    Json out;
    out["modulus"] = rep.modulus;
    out["universal"] = rep.universal;
    out["reachable_count"] = rep.reachable_count;
    out["unreachable_count"] = total - rep.reachable_count;
    if (rep.missed)
        out["missed"] = matrix_to_json(*rep.missed);
    else
        out["missed"] = nullptr;
    if (!rep.universal) {
        Json sample = Json::array();
        const std::uint64_t r = rep.modulus;
        for (std::uint64_t idx = 0; idx < total && sample.size() < sample_cap;
             ++idx) {
            if (rep.reachable[idx]) continue;
            IntMat m(2);
            m.at(0, 0) = BigInt(idx / (r * r * r));
            m.at(0, 1) = BigInt(idx / (r * r) % r);
            m.at(1, 0) = BigInt(idx / r % r);
            m.at(1, 1) = BigInt(idx % r);
            sample.push_back(matrix_to_json(m));
        }
        out["unreachable_sample"] = std::move(sample);
        out["unreachable_truncated"] =
            total - rep.reachable_count > sample_cap;
    }
    return out;
}

Json error_to_json(const Error& e) {
    Json body;
    body["kind"] = to_string(e.kind);
    body["message"] = e.what();
    Json out;
    out["error"] = std::move(body);
    return out;
}

Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    require(!j.is_discarded(), ErrorKind::bad_input, "malformed JSON input");
    return j;
}

Json load_json_arg(const std::string& arg) {
    require(!arg.empty(), ErrorKind::bad_input, "empty JSON argument");
    if (arg == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return parse_json_text(buf.str());
    }
    if (arg[0] == '@') {
        const std::string path = arg.substr(1);
        std::ifstream in(path, std::ios::binary);
        require(bool(in), ErrorKind::bad_input, "cannot read file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_json_text(buf.str());
    }
    return parse_json_text(arg);
}

std::vector<BigInt> parse_coeff_list(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    require(first != std::string::npos, ErrorKind::bad_input,
            "empty coefficient list");
    if (text[first] == '[') return coeffs_from_json(parse_json_text(text));
    std::vector<BigInt> a;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const std::size_t b = item.find_first_not_of(" \t\r\n");
        const std::size_t e = item.find_last_not_of(" \t\r\n");
        require(b != std::string::npos, ErrorKind::bad_input,
                "empty coefficient in list: " + text);
        a.push_back(parse_bigint(item.substr(b, e - b + 1)));
    }
    require(!a.empty(), ErrorKind::bad_input, "empty coefficient list");
    return a;
}

}  // namespace diagsq
