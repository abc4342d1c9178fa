#pragma once

// Linear utility maximization over the polytope, two ways: exact scan of an
// enumerated vertex set, and the exact simplex over the constraint system.
// The conjecture probe drives seeded random integer objectives through the
// simplex and flags any optimum that falls outside the two characterized
// extreme-point families.

#include "ldpp/analysis.hpp"
#include "ldpp/enumeration.hpp"
#include "ldpp/polytope.hpp"
#include "ldpp/simplex.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ldpp {

inline Rational utility_value(const Matrix& utility, const Matrix& a) {
    assert(utility.rows() == a.rows() && utility.cols() == a.cols());
    Rational v = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) v += utility(i, j) * a(i, j);
    return v;
}

enum class OptMethod { VertexScan, Simplex };

struct OptimizationResult {
    Rational value;
    Mechanism argmax;
    OptMethod method;
    std::vector<std::size_t> certificate;  // tight constraint indices at the optimum
};

/// Exact maximum of <utility, A> over the given vertices; ties go to the
/// first vertex in the set's enumeration order.
inline OptimizationResult optimize_over_vertices(const Matrix& utility, const VertexSet& v) {
    if (v.size() == 0) throw std::invalid_argument("optimize_over_vertices: empty vertex set");
    std::size_t best = 0;
    Rational best_value = utility_value(utility, v[0].mat());
    for (std::size_t i = 1; i < v.size(); ++i) {
        Rational val = utility_value(utility, v[i].mat());
        if (val > best_value) {
            best_value = std::move(val);
            best = i;
        }
    }
    const ConstraintSystem sys(v.n(), PrivacyParameter(v.t()));
    return {std::move(best_value), v[best], OptMethod::VertexScan, tight_set(v[best], sys)};
}

/// Exact LP optimum over the full constraint system. The returned point is
/// a vertex and is certified extreme before returning.
inline OptimizationResult simplex_optimize(const Matrix& utility, const ConstraintSystem& sys) {
    SimplexSolution sol = simplex_solve(utility, sys);
    Mechanism argmax(std::move(sol.point));
    ExtremalityCertificate cert = extremality(argmax, sys);
    if (!cert.is_extreme)
        throw std::logic_error("simplex returned a non-extreme point");
    return {std::move(sol.value), std::move(argmax), OptMethod::Simplex, std::move(cert.tight)};
}

// ---------------------------------------------------------------------------
// Conjecture probe

/// Per-trial engine seed; SplitMix64 of (seed + trial) so trials are
/// independent of execution order.
inline std::uint64_t probe_subseed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed + trial * 0x9E3779B97F4A7C15ull + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Random integer objective with entries uniform in [-9, 9] (raw engine
/// modulo; deterministic across platforms).
inline Matrix random_probe_utility(std::size_t n, std::mt19937_64& engine) {
    Matrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            u(i, j) = Rational(static_cast<long>(engine() % 19) - 9);
    return u;
}

struct ProbeTrialOutcome {
    OptimizationResult result;
    Family family;
    bool counterexample;  // extreme optimum outside both families
};

/// One probe step on a concrete objective: solve, classify the optimum,
/// and independently re-certify extremality before calling it a
/// counterexample candidate.
inline ProbeTrialOutcome probe_trial(const Matrix& utility, const ConstraintSystem& sys) {
    ProbeTrialOutcome out{simplex_optimize(utility, sys), Family::Neither, false};
    out.family = family_membership(out.result.argmax, sys.t());
    if (out.family == Family::Neither) {
        if (!is_extreme(out.result.argmax, sys))
            throw std::logic_error("probe: optimum failed the independent extremality re-check");
        out.counterexample = true;
    }
    return out;
}

struct ProbeReport {
    std::size_t n;
    Rational t;
    std::uint64_t seed;
    std::uint64_t trials_run;
    std::vector<Mechanism> counters_found;
    std::vector<std::uint64_t> counter_trials;  // trial index per counterexample
};

inline ProbeReport conjecture_probe(std::size_t n, const PrivacyParameter& t,
                                    std::uint64_t trials, std::uint64_t seed) {
    if (t.is_zero_eps()) throw std::domain_error("conjecture_probe requires t > 1");
    const ConstraintSystem sys(n, t);
    ProbeReport rep{n, t.t(), seed, 0, {}, {}};
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 engine(probe_subseed(seed, trial));
        ProbeTrialOutcome out = probe_trial(random_probe_utility(n, engine), sys);
        ++rep.trials_run;
        if (out.counterexample) {
            rep.counters_found.push_back(out.result.argmax);
            rep.counter_trials.push_back(trial);
        }
    }
    return rep;
}

}  // namespace ldpp
