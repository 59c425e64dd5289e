#include "diagsq/harness.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "diagsq/commutator.hpp"
#include "diagsq/decompose2.hpp"
#include "diagsq/decompose3.hpp"
#include "diagsq/decompose_even.hpp"
#include "diagsq/dispatch.hpp"
#include "diagsq/numth.hpp"
#include "diagsq/rng.hpp"
#include "diagsq/trace_split.hpp"
#include "diagsq/universality2.hpp"

namespace diagsq {
namespace {

bool pairwise_coprime(const std::vector<BigInt>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (gcd(a[i], a[j]) != 1) return false;
    return true;
}

// Rejection-samples a nonzero, pairwise-coprime tuple; for dimension 2 the
// universality decider is asserted as well (automatic for four pairwise
// coprime values, but cheap to keep honest).
std::vector<BigInt> random_coeffs(SplitMix64& g, std::size_t count,
                                  std::int64_t bound, std::size_t dim) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<BigInt> a(count);
        for (BigInt& v : a) {
            std::int64_t x = 0;
            while (x == 0) x = g.range(-bound, bound);
            v = x;
        }
        if (!pairwise_coprime(a)) continue;
        if (dim == 2 && !decide_universal_m2(a).universal) continue;
        return a;
    }
    throw Error(ErrorKind::internal_assertion,
                "coefficient sampling failed to converge");
}

IntMat random_target(SplitMix64& g, std::size_t n, std::int64_t bound) {
    IntMat m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = g.range(-bound, bound);
    return m;
}

struct TrialOutcome {
    bool ok = false;
    std::size_t n = 0;
    std::size_t nonzero_squares = 0;
    Json failure;  // populated iff !ok
};

TrialOutcome run_trial(const HarnessConfig& cfg, unsigned trial,
                       std::size_t fixed_n) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, trial);
    SplitMix64 g(trial_seed);

    TrialOutcome out;
    out.n = fixed_n != 0
                ? fixed_n
                : cfg.n_min + g.below(cfg.n_max - cfg.n_min + 1);
    const std::size_t count = required_coefficients(out.n);

    std::vector<BigInt> coeffs;
    IntMat target;
    try {
        coeffs = random_coeffs(g, count, cfg.coeff_bound, out.n);
        target = random_target(g, out.n, cfg.entry_bound);
        CommutatorOptions opts;
        opts.seed = g.next();
        opts.budget = cfg.budget;
        opts.precondition = cfg.precondition;

        const Decomposition d = decompose_any(coeffs, target, opts);
        const VerifyResult vr = verify_decomposition(d);
        out.nonzero_squares = d.nonzero_square_count();
        if (vr.ok && out.nonzero_squares <= count) {
            out.ok = true;
            return out;
        }
        Json f;
        f["trial"] = trial;
        f["seed"] = trial_seed;
        f["n"] = out.n;
        f["coeffs"] = coeffs_to_json(coeffs);
        f["target"] = matrix_to_json(target);
        if (!vr.ok) {
            Json m;
            m["row"] = vr.row;
            m["col"] = vr.col;
            m["expected"] = to_string(vr.expected);
            m["actual"] = to_string(vr.actual);
            f["mismatch"] = std::move(m);
        } else {
            f["nonzero_squares"] = out.nonzero_squares;
        }
        out.failure = std::move(f);
    } catch (const Error& e) {
        Json f;
        f["trial"] = trial;
        f["seed"] = trial_seed;
        f["n"] = out.n;
        if (!coeffs.empty()) f["coeffs"] = coeffs_to_json(coeffs);
        if (target.dim() != 0) f["target"] = matrix_to_json(target);
        f["error"] = error_to_json(e)["error"];
        out.failure = std::move(f);
    } catch (const std::exception& e) {
        Json f;
        f["trial"] = trial;
        f["seed"] = trial_seed;
        f["n"] = out.n;
        Json err;
        err["kind"] = "internal_assertion";
        err["message"] = e.what();
        f["error"] = std::move(err);
        out.failure = std::move(f);
    }
    return out;
}

Json run_battery(const HarnessConfig& cfg, const std::string& command,
                 bool per_dimension) {
    require(cfg.n_min >= 2 && cfg.n_min <= cfg.n_max, ErrorKind::bad_input,
            "dimension range must satisfy 2 <= n_min <= n_max");
    require(cfg.coeff_bound >= 1, ErrorKind::bad_input,
            "coefficient bound must be positive");
    require(cfg.entry_bound >= 0, ErrorKind::bad_input,
            "entry bound must be non-negative");
    require(cfg.trials >= 1, ErrorKind::bad_input,
            "at least one trial required");

    const auto start = std::chrono::steady_clock::now();

    // Trial t decodes to a fixed dimension in per-dimension mode and to a
    // seeded draw otherwise; either way it is independent of every other
    // trial, which is what makes the pool + in-order merge deterministic.
    const std::size_t dims = cfg.n_max - cfg.n_min + 1;
    const std::size_t total =
        per_dimension ? dims * cfg.trials : cfg.trials;
    std::vector<TrialOutcome> results(total);

    auto worker_body = [&](std::size_t t) {
        const std::size_t fixed_n =
            per_dimension ? cfg.n_min + t / cfg.trials : 0;
        results[t] = run_trial(cfg, static_cast<unsigned>(t), fixed_n);
    };

    unsigned jobs = cfg.jobs != 0 ? cfg.jobs
                                  : std::min(8u, std::max(
                                                     1u, std::thread::
                                                             hardware_concurrency()));
    jobs = static_cast<unsigned>(
        std::min<std::size_t>(jobs, total));
    if (jobs <= 1) {
        for (std::size_t t = 0; t < total; ++t) worker_body(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= total) return;
                    worker_body(t);
                }
            });
        for (std::thread& th : pool) th.join();
    }

    std::size_t successes = 0;
    Json failures = Json::array();
    std::vector<unsigned> per_n_trials(dims, 0), per_n_ok(dims, 0);
    std::vector<std::size_t> per_n_max_nz(dims, 0);
    for (const TrialOutcome& r : results) {
        const std::size_t slot = r.n - cfg.n_min;
        ++per_n_trials[slot];
        if (r.ok) {
            ++successes;
            ++per_n_ok[slot];
            per_n_max_nz[slot] = std::max(per_n_max_nz[slot], r.nonzero_squares);
        } else {
            failures.push_back(r.failure);
        }
    }

    Json per_n = Json::array();
    Json bound_table;
    for (std::size_t k = 0; k < dims; ++k) {
        const std::size_t n = cfg.n_min + k;
        Json row;
        row["n"] = n;
        row["bound"] = required_coefficients(n);
        row["trials"] = per_n_trials[k];
        row["verified"] = per_n_ok[k];
        row["max_nonzero_squares"] = per_n_max_nz[k];
        per_n.push_back(std::move(row));
        bound_table[std::to_string(n)] = required_coefficients(n);
    }

    Json config;
    config["n_min"] = cfg.n_min;
    config["n_max"] = cfg.n_max;
    config["coeff_bound"] = cfg.coeff_bound;
    config["entry_bound"] = cfg.entry_bound;
    config["budget"] = cfg.budget;
    config["precondition"] = cfg.precondition;

    Json report;
    report["command"] = command;
    report["seed"] = cfg.seed;
    report["trials"] = total;
    report["successes"] = successes;
    report["failures"] = std::move(failures);
    report["per_n"] = std::move(per_n);
    report["bound_table"] = std::move(bound_table);
    report["config"] = std::move(config);
    if (cfg.with_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        Json timing;
        timing["total_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
                .count();
        report["timing"] = std::move(timing);
    } else {
        report["timing"] = nullptr;
    }
    return report;
}

// One selftest entry: runs `body`, records pass/fail plus detail.
template <typename F>
void run_check(Json& checks, const char* name, F&& body) {
    Json entry;
    entry["name"] = name;
    try {
        Json detail = body();
        entry["passed"] = true;
        entry["detail"] = std::move(detail);
    } catch (const Error& e) {
        entry["passed"] = false;
        entry["detail"] = error_to_json(e);
    } catch (const std::exception& e) {
        entry["passed"] = false;
        Json d;
        d["message"] = e.what();
        entry["detail"] = std::move(d);
    }
    checks.push_back(std::move(entry));
}

std::vector<BigInt> ints(std::initializer_list<long> xs) {
    std::vector<BigInt> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

IntMat random_trace_zero(SplitMix64& g, std::size_t n, std::int64_t bound) {
    IntMat z(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) z.at(i, j) = g.range(-bound, bound);
    BigInt partial = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) partial += z.at(i, i);
    z.at(n - 1, n - 1) = -partial;
    return z;
}

}  // namespace

Json run_fuzz(const HarnessConfig& cfg) { return run_battery(cfg, "fuzz", false); }

Json run_table1(const HarnessConfig& cfg) {
    return run_battery(cfg, "table1", true);
}

Json run_selftest(std::uint64_t seed) {
    Json checks = Json::array();

    run_check(checks, "decide_examples", [&] {
        struct Case {
            std::vector<BigInt> a;
            bool universal;
            long witness_modulus;  // 0 when universal
        };
        const Case cases[] = {
            {ints({1, 1, 4}), false, 4},  {ints({1, 1, 1}), true, 0},
            {ints({1, 1, 2}), true, 0},   {ints({1, 1, 1, 1}), true, 0},
            {ints({0, 1, 1}), false, 4},  {ints({2, 2, 3}), false, 2},
            {ints({1, 1}), false, 4},     {ints({1, -1, 3, 5}), true, 0},
        };
        for (const Case& c : cases) {
            const UniversalityVerdict v = decide_universal_m2(c.a);
            internal_check(v.universal == c.universal,
                           "decide verdict mismatch");
            if (!c.universal)
                internal_check(v.witness_modulus &&
                                   *v.witness_modulus == c.witness_modulus,
                               "decide witness modulus mismatch");
        }
        Json d;
        d["cases"] = sizeof(cases) / sizeof(cases[0]);
        return d;
    });

    run_check(checks, "residue_cross_check", [&] {
        for (const auto& a :
             {ints({1, 1, 4}), ints({1, 1}), ints({1, -1})}) {
            const ResidueReport rep = residue_universal_check(a, 4);
            internal_check(!rep.universal, "expected a mod-4 obstruction");
            internal_check(rep.missed.has_value(),
                           "non-universal report must carry a witness");
        }
        for (unsigned r : {2u, 3u, 4u, 5u}) {
            const ResidueReport rep =
                residue_universal_check(ints({1, 1, 1}), r);
            internal_check(rep.universal,
                           "x^2+y^2+z^2 must cover every residue ring here");
        }
        Json d;
        d["rings_checked"] = 7;
        return d;
    });

    run_check(checks, "trace_split_properties", [&] {
        SplitMix64 g(derive_seed(seed, 101));
        const unsigned trials = 500;
        for (unsigned t = 0; t < trials; ++t) {
            BigInt a1, a2;
            do {
                const std::int64_t m1 = 2 * static_cast<std::int64_t>(g.below(50)) + 1;
                const std::int64_t m2 = 2 * static_cast<std::int64_t>(g.below(50)) + 1;
                a1 = g.below(2) ? BigInt(m1) : BigInt(-m1);
                a2 = g.below(2) ? BigInt(m2) : BigInt(-m2);
            } while (gcd(a1, a2) != 1);
            const BigInt m = g.range(-10000, 10000);
            const TraceSplit ts = solve_trace_split(a1, a2, m);
            internal_check(a1 * (ts.c * ts.c + 2 * ts.u) +
                                   a2 * (ts.d * ts.d + 2 * ts.v) ==
                               m,
                           "trace-split identity failed");
            internal_check(gcd(a1 * (ts.u - ts.c), a2 * (ts.v - ts.d)) == 1,
                           "trace-split side condition failed");
        }
        Json d;
        d["trials"] = trials;
        return d;
    });

    run_check(checks, "decompose_m2_roundtrip", [&] {
        SplitMix64 g(derive_seed(seed, 102));
        const unsigned trials = 200;
        for (unsigned t = 0; t < trials; ++t) {
            const std::size_t count = 4 + t % 3;
            const std::vector<BigInt> a = random_coeffs(g, count, 50, 2);
            const IntMat target = random_target(g, 2, 100);
            const Decomposition d = decompose_m2(a, target);
            internal_check(verify_decomposition(d).ok,
                           "2x2 round-trip failed");
        }
        Json d;
        d["trials"] = trials;
        return d;
    });

    run_check(checks, "decompose_3x3_roundtrip", [&] {
        const QuarticCounters before = quartic_counters();
        SplitMix64 g(derive_seed(seed, 103));
        const unsigned trials = 200;
        for (unsigned t = 0; t < trials; ++t) {
            const std::vector<BigInt> a = random_coeffs(g, 6, 50, 3);
            const IntMat target = random_target(g, 3, 100);
            const Decomposition d = decompose_3x3(a, target);
            internal_check(verify_decomposition(d).ok,
                           "3x3 round-trip failed");
        }
        const QuarticCounters after = quartic_counters();
        internal_check(after.checks >= before.checks + 2 * trials,
                       "quartic-identity checks did not run");
        internal_check(after.violations == before.violations,
                       "quartic identity violated");
        Json d;
        d["trials"] = trials;
        d["quartic_checks"] = after.checks - before.checks;
        return d;
    });

    run_check(checks, "commutator_roundtrip", [&] {
        SplitMix64 g(derive_seed(seed, 104));
        const unsigned trials = 200;
        for (unsigned t = 0; t < trials; ++t) {
            const std::size_t n = 2 + t % 3;
            const IntMat z = random_trace_zero(g, n, 100);
            CommutatorOptions opts;
            opts.seed = g.next();
            const CommutatorPair pair = commutator_decompose(z, opts);
            internal_check(pair.x * pair.y - pair.y * pair.x == z,
                           "commutator round-trip failed");
        }
        Json d;
        d["trials"] = trials;
        return d;
    });

    run_check(checks, "decompose_even_roundtrip", [&] {
        SplitMix64 g(derive_seed(seed, 105));
        const unsigned trials = 60;
        for (unsigned t = 0; t < trials; ++t) {
            const std::size_t n = (t % 2 == 0) ? 4 : 6;
            const std::vector<BigInt> a = random_coeffs(g, 6, 50, n);
            const IntMat target = random_target(g, n, 100);
            CommutatorOptions opts;
            opts.seed = g.next();
            const Decomposition d = decompose_even(a, target, opts);
            internal_check(verify_decomposition(d).ok,
                           "even-dimension round-trip failed");
        }
        Json d;
        d["trials"] = trials;
        return d;
    });

    run_check(checks, "dispatch_odd_roundtrip", [&] {
        SplitMix64 g(derive_seed(seed, 106));
        const unsigned trials = 40;
        for (unsigned t = 0; t < trials; ++t) {
            const std::size_t n = (t % 2 == 0) ? 5 : 7;
            const std::vector<BigInt> a = random_coeffs(g, 8, 50, n);
            const IntMat target = random_target(g, n, 100);
            CommutatorOptions opts;
            opts.seed = g.next();
            const Decomposition d = decompose_any(a, target, opts);
            internal_check(verify_decomposition(d).ok,
                           "odd-dimension round-trip failed");
        }
        Json d;
        d["trials"] = trials;
        return d;
    });

    run_check(checks, "quartic_counters", [&] {
        const QuarticCounters c = quartic_counters();
        internal_check(c.checks > 0, "no quartic checks recorded");
        internal_check(c.violations == 0, "quartic violations recorded");
        Json d;
        d["checks"] = c.checks;
        d["violations"] = c.violations;
        return d;
    });

    bool all = true;
    for (const Json& c : checks)
        if (!c["passed"].get<bool>()) all = false;

    Json report;
    report["command"] = "selftest";
    report["seed"] = seed;
    report["checks"] = std::move(checks);
    report["all_passed"] = all;
    return report;
}

}  // namespace diagsq
