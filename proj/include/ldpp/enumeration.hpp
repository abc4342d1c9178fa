#pragma once

// Extreme-point generators and the brute-force vertex oracle.
//
// Two families are generated directly:
//   corner family  the n matrices 1 * e_i^T (all mass on one output column)
//   tight family   matrices whose nonzero columns, after dividing by the
//                  column minimum, contain only the values 1 and t, with
//                  full column rank on the support. Every such matrix is an
//                  extreme point, and the generator asserts membership,
//                  emptiness of the loose set, and the rank before emitting.
//
// The oracle enumerates basic solutions: subsets of n^2 - n DP constraints
// that, together with the n row-sum equalities, have full rank n^2; each
// such square system is solved exactly and the solution kept iff it lies in
// the polytope. NonNeg constraints are omitted from the subsets for t > 1:
// a tight NonNeg entry forces its whole column to zero, where the DP
// constraints are all tight and already span every direction, so no vertex
// is missed. The oracle is complete for n <= 3; n = 4 runs behind an
// explicit basis-count budget and reports exhaustion rather than truncating
// silently.

#include "ldpp/analysis.hpp"
#include "ldpp/linalg.hpp"
#include "ldpp/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace ldpp {

// ---------------------------------------------------------------------------
// Permutations

using Permutation = std::vector<std::size_t>;

struct PermutationPair {
    Permutation row;
    Permutation col;
};

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

/// Fisher-Yates driven by raw engine draws (modulo, not
/// uniform_int_distribution) so sequences are identical across standard
/// library implementations.
inline Permutation random_permutation(std::size_t n, std::mt19937_64& engine) {
    Permutation p = identity_permutation(n);
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[engine() % i]);
    return p;
}

inline PermutationPair random_permutation_pair(std::size_t n, std::mt19937_64& engine) {
    return {random_permutation(n, engine), random_permutation(n, engine)};
}

/// B(i, j) = A(row[i], col[j]); ranges over the same set as P1 * A * P2 for
/// permutation matrices P1, P2.
inline Matrix permute(const Matrix& a, const Permutation& row, const Permutation& col) {
    Matrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = a(row[i], col[j]);
    return b;
}

// ---------------------------------------------------------------------------
// Vertex sets

enum class Provenance { Generator, Oracle };

/// A deduplicated list of polytope vertices in a deterministic order.
class VertexSet {
public:
    VertexSet(std::size_t n, Rational t) : n_(n), t_(std::move(t)) {}

    std::size_t n() const { return n_; }
    const Rational& t() const { return t_; }
    const std::vector<Mechanism>& vertices() const { return vertices_; }
    Provenance provenance(std::size_t idx) const { return provenance_[idx]; }
    std::size_t size() const { return vertices_.size(); }
    const Mechanism& operator[](std::size_t idx) const { return vertices_[idx]; }

    /// Returns false (and stores nothing) if the matrix is already present.
    bool insert(Mechanism m, Provenance prov) {
        if (!seen_.insert(m.mat()).second) return false;
        vertices_.push_back(std::move(m));
        provenance_.push_back(prov);
        return true;
    }

    bool contains(const Matrix& m) const { return seen_.count(m) != 0; }

    /// Entry-wise sorted copies, for exact set comparison.
    std::vector<Matrix> sorted_matrices() const {
        std::vector<Matrix> ms(seen_.begin(), seen_.end());
        return ms;
    }

private:
    std::size_t n_;
    Rational t_;
    std::vector<Mechanism> vertices_;
    std::vector<Provenance> provenance_;
    std::set<Matrix> seen_;
};

// ---------------------------------------------------------------------------
// Generators

/// The n constant-output mechanisms 1 * e_i^T; extreme for every t >= 1.
inline VertexSet enumerate_corner_family(std::size_t n, Rational t = Rational(1)) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    VertexSet out(n, std::move(t));
    for (std::size_t i = 0; i < n; ++i) {
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) m(r, i) = 1;
        out.insert(Mechanism(std::move(m)), Provenance::Generator);
    }
    return out;
}

/// The two-symbol column pattern behind the tight family: cell (i, j) is
/// LO (value 1) or HI (value t) in the normalized form. Valid patterns have
/// both symbols in every column.
struct Pattern {
    std::size_t n;
    std::vector<std::size_t> support;  // ascending column indices, size s
    std::uint64_t bits;                // cell (i, j) -> bit i*s + j, set = HI

    bool hi(std::size_t i, std::size_t j) const { return (bits >> (i * support.size() + j)) & 1; }

    bool columns_mixed() const {
        const std::size_t s = support.size();
        for (std::size_t j = 0; j < s; ++j) {
            std::uint64_t col = 0;
            for (std::size_t i = 0; i < n; ++i) col |= ((bits >> (i * s + j)) & 1) << i;
            if (col == 0 || col == (std::uint64_t(1) << n) - 1) return false;
        }
        return true;
    }

    /// The n x s matrix with LO -> 1 and HI -> t.
    Matrix evaluate(const Rational& t) const {
        const std::size_t s = support.size();
        Matrix p(n, s);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < s; ++j) p(i, j) = hi(i, j) ? t : Rational(1);
        return p;
    }
};

namespace detail {

/// Ascending-size, then lexicographic enumeration of the size >= min_size
/// subsets of {0..n-1}.
inline std::vector<std::vector<std::size_t>> subsets_of_min_size(std::size_t n,
                                                                 std::size_t min_size) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = min_size; s <= n; ++s) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            out.push_back(idx);
            std::size_t i = s;
            while (i-- > 0) {
                if (idx[i] != i + n - s) break;
                if (i == 0) { i = SIZE_MAX; break; }
            }
            if (i == SIZE_MAX) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace detail

/// Generates every extreme point whose normalized nonzero columns use only
/// the values {1, t} and have full rank on the support. Supports are
/// visited in ascending size then lexicographic order; patterns on a
/// support in ascending row-major base-2 encoding, so output order is
/// reproducible. Distinct (support, pattern) pairs give distinct matrices.
/// For t = 1 the family is empty.
inline VertexSet enumerate_tight_family(std::size_t n, const PrivacyParameter& t) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    VertexSet out(n, t.t());
    if (t.is_zero_eps()) return out;
    // 2^(n*s) pattern codes per support; n = 4 is instant, n = 5 takes
    // minutes, n = 6 is out of reach.
    if (n > 5) throw std::invalid_argument("enumerate_tight_family: n > 5 is not supported");
    const ConstraintSystem sys(n, t);
    const Vector ones(n, Rational(1));

    for (const auto& supp : detail::subsets_of_min_size(n, 2)) {
        const std::size_t s = supp.size();
        for (std::uint64_t code = 0; code < (std::uint64_t(1) << (n * s)); ++code) {
            Pattern pat{n, supp, code};
            if (!pat.columns_mixed()) continue;
            const Matrix p = pat.evaluate(t.t());
            SolveResult sol = solve(p, ones);  // row sums: P * m = 1
            if (sol.status != SolveStatus::Unique) continue;
            if (!std::all_of(sol.solution.begin(), sol.solution.end(),
                             [](const Rational& m) { return m > 0; }))
                continue;
            Matrix a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < s; ++j)
                    a(i, supp[j]) = pat.hi(i, j) ? t.t() * sol.solution[j] : sol.solution[j];
            Mechanism mech(std::move(a));
            // Emission-time postconditions; a failure here is a bug, not data.
            if (!membership(mech.mat(), sys).in_d)
                throw std::logic_error("tight family generator emitted a non-member");
            if (!loose_entries(mech, t).empty())
                throw std::logic_error("tight family generator emitted a loose entry");
            if (rank(mech.mat()) != s)
                throw std::logic_error("tight family generator emitted a rank-deficient matrix");
            if (!out.insert(std::move(mech), Provenance::Generator))
                throw std::logic_error("tight family generator emitted a duplicate");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

struct OracleResult {
    VertexSet vertices;
    bool complete;                 // false only when the budget ran out
    std::uint64_t bases_examined;  // candidate DP-constraint subsets visited
};

/// Ground-truth vertex enumeration by tight-constraint bases. Complete for
/// n <= 3 (and for t = 1, answered in closed form by the corner family at
/// any n). n = 4 requires an explicit basis budget; larger n is refused.
inline OracleResult vertex_oracle(std::size_t n, const PrivacyParameter& t,
                                  std::optional<std::uint64_t> budget = std::nullopt) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (t.is_zero_eps()) {
        VertexSet corners = enumerate_corner_family(n, t.t());
        VertexSet out(n, t.t());
        for (std::size_t i = 0; i < corners.size(); ++i)
            out.insert(corners[i], Provenance::Oracle);
        return {std::move(out), true, 0};
    }
    if (n == 4 && !budget)
        throw std::invalid_argument("vertex_oracle: n = 4 requires an explicit basis budget");
    if (n > 4) throw std::invalid_argument("vertex_oracle: n > 4 is not supported");

    const ConstraintSystem sys(n, t);
    const std::size_t dim = n * n;
    const std::size_t pick = dim - n;  // basis size beyond the n equalities
    const std::size_t num_dp = n * n * (n - 1);

    // Dense coefficient rows, precomputed once.
    std::vector<Vector> dp_rows(num_dp);
    for (std::size_t d = 0; d < num_dp; ++d) dp_rows[d] = sys[sys.dp_begin() + d].dense_coeffs(n);

    OracleResult res{VertexSet(n, t.t()), true, 0};
    Matrix system(dim, dim);
    Vector rhs(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) system(i, i * n + j) = 1;
        rhs[i] = 1;
    }

    std::vector<std::size_t> comb(pick);
    for (std::size_t i = 0; i < pick; ++i) comb[i] = i;
    bool more = pick <= num_dp;
    while (more) {
        if (budget && res.bases_examined >= *budget) {
            res.complete = false;
            break;
        }
        ++res.bases_examined;
        for (std::size_t r = 0; r < pick; ++r)
            for (std::size_t c = 0; c < dim; ++c) system(n + r, c) = dp_rows[comb[r]][c];
        SolveResult sol = solve(system, rhs);
        if (sol.status == SolveStatus::Unique) {
            Matrix a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) a(i, j) = sol.solution[i * n + j];
            if (membership(a, sys).in_d) res.vertices.insert(Mechanism(std::move(a)), Provenance::Oracle);
        }
        // next lexicographic combination
        more = false;
        for (std::size_t i = pick; i-- > 0;) {
            if (comb[i] != i + num_dp - pick) {
                ++comb[i];
                for (std::size_t j = i + 1; j < pick; ++j) comb[j] = comb[j - 1] + 1;
                more = true;
                break;
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Canonicalization and family tags

/// Lexicographically smallest matrix in the row/column permutation orbit of
/// A; idempotent and constant on orbits. Exact search, so n is capped.
inline Mechanism canonical_form(const Mechanism& a) {
    const std::size_t n = a.n();
    if (n > 5) throw std::invalid_argument("canonical_form: n > 5 is not supported");
    Matrix best = a.mat();
    Permutation row = identity_permutation(n);
    do {
        Permutation col = identity_permutation(n);
        do {
            Matrix cand = permute(a.mat(), row, col);
            if (cand < best) best = std::move(cand);
        } while (std::next_permutation(col.begin(), col.end()));
    } while (std::next_permutation(row.begin(), row.end()));
    return Mechanism(std::move(best));
}

enum class Family { DPrime, DTilde, Neither };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::DPrime: return "DPrime";
        case Family::DTilde: return "DTilde";
        case Family::Neither: return "Neither";
    }
    return "";
}

/// Tags membership in the characterized families by the direct predicate;
/// requires A in D. DPrime and DTilde members are always extreme points.
inline Family family_membership(const Mechanism& a, const PrivacyParameter& t) {
    const auto gamma = support(a);
    if (gamma.size() == 1) return Family::DPrime;
    if (loose_entries(a, t).empty() && rank(a.mat()) == gamma.size()) return Family::DTilde;
    return Family::Neither;
}

}  // namespace ldpp
