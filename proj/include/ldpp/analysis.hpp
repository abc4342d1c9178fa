#pragma once

// Structural statistics of a mechanism and the extremality certificate.
//
// For A in D with column minima m_j (over nonzero columns):
//   support(A)        indices of nonzero columns
//   loose_entries(A)  positions (i, j) with a_ij not in {t*min_j, max_j/t};
//                     entries of an all-zero column are never loose, since
//                     both candidate values collapse to 0
//   tilde_normalize   divides each nonzero column by its minimum, so support
//                     entries land in [1, t]
//   is_extreme        rank test: A is extreme iff the coefficient vectors of
//                     the constraints tight at A span the full n^2 space

#include "ldpp/linalg.hpp"
#include "ldpp/polytope.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ldpp {

inline std::vector<std::size_t> support(const Mechanism& a) {
    std::vector<std::size_t> gamma;
    for (std::size_t j = 0; j < a.n(); ++j) {
        for (std::size_t i = 0; i < a.n(); ++i)
            if (a.mat()(i, j) != 0) {
                gamma.push_back(j);
                break;
            }
    }
    return gamma;
}

inline std::vector<std::pair<std::size_t, std::size_t>> loose_entries(const Mechanism& a,
                                                                      const PrivacyParameter& t) {
    std::vector<std::pair<std::size_t, std::size_t>> lambda;
    const std::size_t n = a.n();
    for (std::size_t j = 0; j < n; ++j) {
        Rational lo = a.mat()(0, j), hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            const Rational& v = a.mat()(i, j);
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        const Rational up = t.t() * lo, down = hi / t.t();
        for (std::size_t i = 0; i < n; ++i) {
            const Rational& v = a.mat()(i, j);
            if (v != up && v != down) lambda.push_back({i, j});
        }
    }
    return lambda;
}

struct TildeForm {
    Matrix tilde;     // A with each nonzero column divided by its minimum
    Vector mins;      // m_j = min_i a_ij on the support, 0 on zero columns
    Vector mins_inv;  // 1/m_j on the support, 0 on zero columns
};

inline TildeForm tilde_normalize(const Mechanism& a) {
    const std::size_t n = a.n();
    TildeForm f{Matrix(n, n), Vector(n), Vector(n)};
    for (std::size_t j = 0; j < n; ++j) {
        Rational lo = a.mat()(0, j);
        bool nonzero = lo != 0;
        for (std::size_t i = 1; i < n; ++i) {
            const Rational& v = a.mat()(i, j);
            if (v != 0) nonzero = true;
            if (v < lo) lo = v;
        }
        if (!nonzero) continue;
        // members never mix zero and nonzero entries in one column (a zero
        // entry forces the whole column to zero), so lo > 0 here for any
        // mechanism in the polytope
        if (lo == 0)
            throw std::domain_error("tilde_normalize: nonzero column with a zero entry");
        f.mins[j] = lo;
        f.mins_inv[j] = Rational(1) / lo;
        for (std::size_t i = 0; i < n; ++i) f.tilde(i, j) = a.mat()(i, j) * f.mins_inv[j];
    }
    // Reconstruction must be exact: tilde * diag(mins) == A.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (f.tilde(i, j) * f.mins[j] != a.mat()(i, j))
                throw std::logic_error("tilde_normalize: reconstruction failed");
    return f;
}

/// Dimension of the span of the tight Dp constraints acting on column j,
/// with coefficient vectors restricted to that column's n coordinates
/// (+1 at row i, -t at row k).
inline std::size_t column_tight_span_dim(const Mechanism& a, const ConstraintSystem& sys,
                                         std::size_t j) {
    std::vector<Vector> rows;
    const auto [begin, end] = sys.dp_column_range(j);
    for (std::size_t idx = begin; idx < end; ++idx) {
        const Constraint& c = sys[idx];
        if (!c.tight_at(a.mat())) continue;
        Vector v(sys.n());
        v[c.i] = 1;
        v[c.k] = -sys.t().t();
        rows.push_back(std::move(v));
    }
    return rank_of_rows(rows);
}

struct ExtremalityCertificate {
    bool is_extreme;
    std::vector<std::size_t> tight;  // all tight constraint indices
    std::size_t tight_rank;          // rank of their coefficient vectors; extreme iff n^2
};

inline ExtremalityCertificate extremality(const Mechanism& a, const ConstraintSystem& sys) {
    ExtremalityCertificate cert;
    cert.tight = tight_set(a, sys);
    Matrix rows(cert.tight.size(), sys.n() * sys.n());
    for (std::size_t r = 0; r < cert.tight.size(); ++r)
        for (const auto& [pos, c] : sys[cert.tight[r]].coeffs)
            rows(r, pos.first * sys.n() + pos.second) = c;
    cert.tight_rank = rank(std::move(rows));
    cert.is_extreme = cert.tight_rank == sys.n() * sys.n();
    return cert;
}

inline bool is_extreme(const Mechanism& a, const ConstraintSystem& sys) {
    return extremality(a, sys).is_extreme;
}

enum class FamilyTag { DPrime, DTilde, OtherExtreme, NotExtreme };

inline const char* to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::DPrime: return "DPrime";
        case FamilyTag::DTilde: return "DTilde";
        case FamilyTag::OtherExtreme: return "OtherExtreme";
        case FamilyTag::NotExtreme: return "NotExtreme";
    }
    return "";
}

struct AnalysisReport {
    std::vector<std::size_t> gamma;
    std::vector<std::pair<std::size_t, std::size_t>> lambda;
    std::size_t rank;
    std::vector<std::size_t> tight_indices;
    bool is_extreme;
    FamilyTag family;
};

inline AnalysisReport analyze(const Mechanism& a, const ConstraintSystem& sys) {
    AnalysisReport rep;
    rep.gamma = support(a);
    rep.lambda = loose_entries(a, sys.t());
    rep.rank = rank(a.mat());
    ExtremalityCertificate cert = extremality(a, sys);
    rep.tight_indices = std::move(cert.tight);
    rep.is_extreme = cert.is_extreme;
    if (rep.gamma.size() == 1)
        rep.family = FamilyTag::DPrime;
    else if (rep.lambda.empty() && rep.rank == rep.gamma.size())
        rep.family = FamilyTag::DTilde;
    else if (rep.is_extreme)
        rep.family = FamilyTag::OtherExtreme;
    else
        rep.family = FamilyTag::NotExtreme;
    return rep;
}

}  // namespace ldpp
