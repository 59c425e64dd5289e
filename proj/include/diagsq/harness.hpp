#pragma once

#include <cstdint>
#include <string>

#include "diagsq/json_io.hpp"

namespace diagsq {

// Knobs shared by the seeded batch runners.  Every report they produce is
// a pure function of this struct (timing excluded unless requested), which
// is what makes rerun-and-compare determinism checks meaningful.
struct HarnessConfig {
    std::uint64_t seed = 1;
    unsigned trials = 10;          // total for fuzz; per dimension for table1
    std::size_t n_min = 2;
    std::size_t n_max = 2;
    std::int64_t coeff_bound = 50;   // |a_i| <= coeff_bound, >= 1
    std::int64_t entry_bound = 100;  // |target_ij| <= entry_bound, >= 0
    std::uint64_t budget = 4096;     // commutator search budget
    bool precondition = false;
    bool with_timing = false;  // timing is nondeterministic, so opt-in
    unsigned jobs = 0;         // worker threads; 0 = pick automatically
};

// Seeded fuzz battery: each trial draws a dimension in [n_min, n_max], a
// pairwise-coprime nonzero coefficient tuple of exactly the required count,
// and a uniform random target, then decomposes and verifies.  Trials run
// on a small thread pool with per-trial derived seeds; the report is merged
// in trial order, so a fixed config yields byte-identical documents.
Json run_fuzz(const HarnessConfig& cfg);

// Bound-table reproduction: `trials` instances for every dimension in
// [n_min, n_max], reporting per-dimension verified counts and the largest
// nonzero-square count observed (which must stay within the bound table).
Json run_table1(const HarnessConfig& cfg);

// Deterministic library property battery: decision examples, residue
// cross-checks, trace-split postconditions, per-engine round-trips, and
// the quartic-identity counters.  All checks must pass.
Json run_selftest(std::uint64_t seed);

}  // namespace diagsq
