#pragma once

// Structural checks run against every enumerated extreme point, plus
// cross-validation of the generators against the brute-force oracle. Each
// check returns a pass/fail with the first offending matrix, so a failure
// is always reproducible from the report alone.
//
// Checks over a point set (extreme points A with support g = gamma(A)):
//   rank-equals-support            rank(A) == |g|
//   loose-entry-bound              |g| >= 2 implies |lambda(A)| <= n - |g|
//   one-loose-per-row              no row holds two loose entries
//   column-tight-span (t > 1)      tight DP span per column: n iff the
//                                  column is zero, else <= n - 1
//   two-column-pattern             |g| = 2: normalized rows on the support
//                                  are (1, t) or (t, 1)
//   no-constant-support-column     |g| >= 2: no nonzero column is constant
//   tilde-rows-vary                |g| >= 2: every normalized row takes two
//                                  different values on the support
//   generators-extreme             every generated point is extreme
//   permutation-invariance         extremality survives sampled row/column
//                                  permutations
// Cross-validation (complete enumeration range):
//   oracle-equals-generators       oracle vertex set == generator union
//   full-support-family            every oracle vertex with |g| = n is in
//                                  the tight family
//   interior-not-extreme           midpoints of distinct vertices are not
//                                  extreme
//   family-implies-extreme         sampled midpoints tagged in a family
//                                  must be extreme (vacuous unless tagged)
// Witness mode:
//   witness-outside-families       the supplied matrix is a member, is
//                                  extreme, and lies outside both families

#include "ldpp/analysis.hpp"
#include "ldpp/enumeration.hpp"
#include "ldpp/polytope.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ldpp {

struct CheckResult {
    std::string name;
    bool pass;
    std::size_t checked;  // points / samples examined
    std::string detail;   // failure witness, or a short note
};

struct VerifyOptions {
    std::size_t perm_samples = 50;
    std::size_t interior_samples = 200;
    std::uint64_t seed = 1;
    std::optional<Matrix> witness;
};

namespace detail {

inline std::string witness_note(const Mechanism& a, const std::string& what) {
    return what + " at [" + to_string(a.mat()) + "]";
}

}  // namespace detail

/// Union of the two generators, corner points first.
inline VertexSet generated_extreme_points(std::size_t n, const PrivacyParameter& t) {
    VertexSet out(n, t.t());
    VertexSet corners = enumerate_corner_family(n, t.t());
    for (std::size_t i = 0; i < corners.size(); ++i) out.insert(corners[i], Provenance::Generator);
    VertexSet tight = enumerate_tight_family(n, t);
    for (std::size_t i = 0; i < tight.size(); ++i) out.insert(tight[i], Provenance::Generator);
    return out;
}

inline CheckResult check_rank_equals_support(const VertexSet& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (rank(pts[i].mat()) != support(pts[i]).size())
            return {"rank-equals-support", false, pts.size(),
                    detail::witness_note(pts[i], "rank != |support|")};
    return {"rank-equals-support", true, pts.size(), {}};
}

inline CheckResult check_loose_bound(const VertexSet& pts, const PrivacyParameter& t) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto gamma = support(pts[i]);
        if (gamma.size() < 2) continue;
        if (loose_entries(pts[i], t).size() > pts.n() - gamma.size())
            return {"loose-entry-bound", false, pts.size(),
                    detail::witness_note(pts[i], "|lambda| > n - |gamma|")};
    }
    return {"loose-entry-bound", true, pts.size(), {}};
}

inline CheckResult check_one_loose_per_row(const VertexSet& pts, const PrivacyParameter& t) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<int> per_row(pts.n(), 0);
        for (const auto& [r, c] : loose_entries(pts[i], t))
            if (++per_row[r] > 1)
                return {"one-loose-per-row", false, pts.size(),
                        detail::witness_note(pts[i], "two loose entries in one row")};
    }
    return {"one-loose-per-row", true, pts.size(), {}};
}

inline CheckResult check_column_tight_span(const VertexSet& pts, const ConstraintSystem& sys) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Mechanism& a = pts[i];
        for (std::size_t j = 0; j < a.n(); ++j) {
            bool zero_col = true;
            for (std::size_t r = 0; r < a.n() && zero_col; ++r)
                if (a.mat()(r, j) != 0) zero_col = false;
            const std::size_t dim = column_tight_span_dim(a, sys, j);
            if (zero_col ? dim != a.n() : dim > a.n() - 1)
                return {"column-tight-span", false, pts.size(),
                        detail::witness_note(a, "column " + std::to_string(j + 1) +
                                                    " span dim " + std::to_string(dim))};
        }
    }
    return {"column-tight-span", true, pts.size(), {}};
}

inline CheckResult check_two_column_pattern(const VertexSet& pts, const PrivacyParameter& t) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto gamma = support(pts[i]);
        if (gamma.size() != 2) continue;
        const TildeForm f = tilde_normalize(pts[i]);
        for (std::size_t r = 0; r < pts.n(); ++r) {
            const Rational& x = f.tilde(r, gamma[0]);
            const Rational& y = f.tilde(r, gamma[1]);
            if (!((x == 1 && y == t.t()) || (x == t.t() && y == 1)))
                return {"two-column-pattern", false, pts.size(),
                        detail::witness_note(pts[i], "row " + std::to_string(r + 1) +
                                                         " not (1,t) or (t,1)")};
        }
    }
    return {"two-column-pattern", true, pts.size(), {}};
}

inline CheckResult check_no_constant_support_column(const VertexSet& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto gamma = support(pts[i]);
        if (gamma.size() < 2) continue;
        for (std::size_t j : gamma) {
            bool constant = true;
            for (std::size_t r = 1; r < pts.n() && constant; ++r)
                if (pts[i].mat()(r, j) != pts[i].mat()(0, j)) constant = false;
            if (constant)
                return {"no-constant-support-column", false, pts.size(),
                        detail::witness_note(pts[i], "constant nonzero column " +
                                                         std::to_string(j + 1))};
        }
    }
    return {"no-constant-support-column", true, pts.size(), {}};
}

inline CheckResult check_tilde_rows_vary(const VertexSet& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto gamma = support(pts[i]);
        if (gamma.size() < 2) continue;
        const TildeForm f = tilde_normalize(pts[i]);
        for (std::size_t r = 0; r < pts.n(); ++r) {
            bool varies = false;
            for (std::size_t a = 1; a < gamma.size() && !varies; ++a)
                if (f.tilde(r, gamma[a]) != f.tilde(r, gamma[0])) varies = true;
            if (!varies)
                return {"tilde-rows-vary", false, pts.size(),
                        detail::witness_note(pts[i], "row " + std::to_string(r + 1) +
                                                         " constant on the support")};
        }
    }
    return {"tilde-rows-vary", true, pts.size(), {}};
}

inline CheckResult check_generators_extreme(const VertexSet& pts, const ConstraintSystem& sys) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!is_extreme(pts[i], sys))
            return {"generators-extreme", false, pts.size(),
                    detail::witness_note(pts[i], "generated point not extreme")};
    return {"generators-extreme", true, pts.size(), {}};
}

inline CheckResult check_permutation_invariance(const VertexSet& pts, const ConstraintSystem& sys,
                                                std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::size_t tested = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool base = is_extreme(pts[i], sys);
        for (std::size_t k = 0; k < samples; ++k) {
            const PermutationPair p = random_permutation_pair(pts.n(), engine);
            Mechanism moved(permute(pts[i].mat(), p.row, p.col));
            ++tested;
            if (is_extreme(moved, sys) != base)
                return {"permutation-invariance", false, tested,
                        detail::witness_note(pts[i], "extremality changed under permutation")};
        }
    }
    return {"permutation-invariance", true, tested, {}};
}

inline CheckResult check_oracle_equals_generators(const VertexSet& oracle, const VertexSet& gen) {
    if (oracle.sorted_matrices() != gen.sorted_matrices()) {
        std::ostringstream os;
        os << "oracle " << oracle.size() << " vertices vs generators " << gen.size();
        return {"oracle-equals-generators", false, oracle.size(), os.str()};
    }
    return {"oracle-equals-generators", true, oracle.size(), {}};
}

inline CheckResult check_full_support_family(const VertexSet& oracle, const PrivacyParameter& t) {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        if (support(oracle[i]).size() != oracle.n()) continue;
        ++seen;
        if (family_membership(oracle[i], t) != Family::DTilde)
            return {"full-support-family", false, seen,
                    detail::witness_note(oracle[i], "full-support vertex outside tight family")};
    }
    return {"full-support-family", true, seen, {}};
}

/// Midpoints of two distinct vertices; by definition never extreme. Also
/// cross-checks that any midpoint tagged in a family would be extreme,
/// which must therefore never happen.
inline std::vector<CheckResult> check_interior_points(const VertexSet& vertices,
                                                      const ConstraintSystem& sys,
                                                      std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::size_t made = 0;
    if (vertices.size() >= 2) {
        for (std::size_t k = 0; k < samples; ++k) {
            const std::size_t a = engine() % vertices.size();
            std::size_t b = engine() % (vertices.size() - 1);
            if (b >= a) ++b;
            Matrix mid(sys.n(), sys.n());
            for (std::size_t i = 0; i < sys.n(); ++i)
                for (std::size_t j = 0; j < sys.n(); ++j)
                    mid(i, j) = (vertices[a].mat()(i, j) + vertices[b].mat()(i, j)) / 2;
            Mechanism m(std::move(mid));
            ++made;
            if (is_extreme(m, sys))
                return {{"interior-not-extreme", false, made,
                         detail::witness_note(m, "midpoint certified extreme")},
                        {"family-implies-extreme", true, 0, "skipped after failure"}};
            if (family_membership(m, sys.t()) != Family::Neither)
                return {{"interior-not-extreme", true, made, {}},
                        {"family-implies-extreme", false, made,
                         detail::witness_note(m, "non-extreme midpoint tagged in a family")}};
        }
    }
    return {{"interior-not-extreme", true, made, {}}, {"family-implies-extreme", true, made, {}}};
}

inline std::vector<CheckResult> check_witness_outside_families(const Matrix& witness,
                                                               const ConstraintSystem& sys) {
    std::vector<CheckResult> out;
    if (!membership(witness, sys).in_d) {
        out.push_back({"witness-outside-families", false, 1, "witness is not in the polytope"});
        return out;
    }
    Mechanism w(witness);
    const bool extreme = is_extreme(w, sys);
    const Family fam = family_membership(w, sys.t());
    if (!extreme)
        out.push_back({"witness-outside-families", false, 1, "witness is not extreme"});
    else if (fam != Family::Neither)
        out.push_back({"witness-outside-families", false, 1,
                       std::string("witness belongs to family ") + to_string(fam)});
    else
        out.push_back({"witness-outside-families", true, 1,
                       "extreme point outside both families: strict containment confirmed"});
    return out;
}

/// The full suite for one (n, t). Oracle-backed checks run when the oracle
/// is complete there (n <= 3, or t = 1 where the answer is closed-form).
inline std::vector<CheckResult> run_verification_suite(std::size_t n, const PrivacyParameter& t,
                                                       const VerifyOptions& opts = {}) {
    const ConstraintSystem sys(n, t);
    std::vector<CheckResult> results;
    const VertexSet gen = generated_extreme_points(n, t);
    results.push_back(check_rank_equals_support(gen));
    results.push_back(check_loose_bound(gen, t));
    results.push_back(check_one_loose_per_row(gen, t));
    if (!t.is_zero_eps()) results.push_back(check_column_tight_span(gen, sys));
    results.push_back(check_two_column_pattern(gen, t));
    results.push_back(check_no_constant_support_column(gen));
    results.push_back(check_tilde_rows_vary(gen));
    results.push_back(check_generators_extreme(gen, sys));
    results.push_back(check_permutation_invariance(gen, sys, opts.perm_samples, opts.seed));

    if (n <= 3 || t.is_zero_eps()) {
        const OracleResult oracle = vertex_oracle(n, t);
        results.push_back(check_oracle_equals_generators(oracle.vertices, gen));
        if (!t.is_zero_eps())
            results.push_back(check_full_support_family(oracle.vertices, t));
        for (auto& r :
             check_interior_points(oracle.vertices, sys, opts.interior_samples, opts.seed + 1))
            results.push_back(std::move(r));
    }
    if (opts.witness)
        for (auto& r : check_witness_outside_families(*opts.witness, sys))
            results.push_back(std::move(r));
    return results;
}

}  // namespace ldpp
