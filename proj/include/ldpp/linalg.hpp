#pragma once

// Exact Gaussian elimination over the rationals.
//
// Pivots are chosen as the first nonzero entry in each column, never by
// magnitude: the arithmetic is exact, so the only thing pivot choice can
// change is determinism, and first-nonzero keeps runs reproducible.
// GMP-backed rationals stay in lowest terms after every operation, which
// bounds entry growth well enough for the matrix sizes used here.

#include "ldpp/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ldpp {

namespace detail {

/// In-place forward elimination of `m`, treating only the first
/// `pivot_cols` columns as pivot candidates (trailing columns ride along,
/// e.g. the right-hand side of an augmented system). Returns the pivot
/// column of each pivot row, in order.
inline std::vector<std::size_t> forward_eliminate(Matrix& m, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < pivot_cols && pivot_row < m.rows(); ++c) {
        std::size_t r = pivot_row;
        while (r < m.rows() && m(r, c) == 0) ++r;
        if (r == m.rows()) continue;
        if (r != pivot_row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pivot_row, j));
        for (std::size_t i = pivot_row + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(pivot_row, c);
            m(i, c) = 0;
            for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) -= f * m(pivot_row, j);
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(Matrix m) {
    return detail::forward_eliminate(m, m.cols()).size();
}

/// Rank of the matrix whose rows are the given vectors (all the same
/// length). The empty family has rank 0.
inline std::size_t rank_of_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return 0;
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        assert(rows[i].size() == rows[0].size());
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return rank(std::move(m));
}

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveStatus status;
    Vector solution;  // populated only for Unique
};

/// Solves M x = b exactly. Unique solutions are verified by substitution
/// before being returned.
inline SolveResult solve(const Matrix& m, const Vector& b) {
    assert(m.rows() == b.size());
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const auto pivots = detail::forward_eliminate(aug, m.cols());
    for (std::size_t i = pivots.size(); i < m.rows(); ++i)
        if (aug(i, m.cols()) != 0) return {SolveStatus::Inconsistent, {}};
    if (pivots.size() < m.cols()) return {SolveStatus::Underdetermined, {}};

    Vector x(m.cols());
    for (std::size_t i = pivots.size(); i-- > 0;) {
        Rational sum = aug(i, m.cols());
        for (std::size_t j = pivots[i] + 1; j < m.cols(); ++j) sum -= aug(i, j) * x[j];
        x[pivots[i]] = sum / aug(i, pivots[i]);
    }
#ifndef NDEBUG
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) lhs += m(i, j) * x[j];
        assert(lhs == b[i]);
    }
#endif
    return {SolveStatus::Unique, std::move(x)};
}

}  // namespace ldpp
