#pragma once

// Shared example matrices and small random generators for the test suites.

#include "ldpp/ldpp.hpp"

#include <random>

namespace fixtures {

using namespace ldpp;

/// 3x3 member for t = 2 whose only loose entry sits at row 2, column 1.
inline Matrix loose_entry_3x3() {
    return Matrix::parse("4/7 1/7 2/7; 3/7 2/7 2/7; 2/7 1/7 4/7");
}

/// 5x5 extreme point for t = 2 with support {1,2,3,4} and the single loose
/// entry (5,3); it lies outside both characterized families.
inline Matrix loose_extreme_5x5() {
    return Matrix::parse(
        "1/7 1/7 4/7 1/7 0; 2/7 1/7 2/7 2/7 0; 2/7 2/7 2/7 1/7 0; 1/7 2/7 2/7 2/7 0; 1/7 1/7 3/7 2/7 0");
}

/// 4x4 tight-family extreme point with support {1,3}: normalized rows on
/// the support are (1,t) or (t,1) and both columns mix the two values.
inline Matrix two_column_4x4(const Rational& t) {
    const Rational m = Rational(1) / (1 + t);
    Matrix a(4, 4);
    a(0, 0) = m;     a(0, 2) = t * m;
    a(1, 0) = m;     a(1, 2) = t * m;
    a(2, 0) = t * m; a(2, 2) = m;
    a(3, 0) = m;     a(3, 2) = t * m;
    return a;
}

/// The corner mechanism 1 * e_i^T (0-based column i).
inline Matrix corner(std::size_t n, std::size_t i) {
    Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) a(r, i) = 1;
    return a;
}

inline Matrix uniform(std::size_t n) {
    return Matrix::constant(n, n, Rational(1, n));
}

inline Rational random_rational(std::mt19937_64& eng, long max_abs_num = 20, long max_den = 12) {
    const long num = static_cast<long>(eng() % (2 * max_abs_num + 1)) - max_abs_num;
    const long den = 1 + static_cast<long>(eng() % max_den);
    return Rational(num, den);
}

inline Matrix random_matrix(std::mt19937_64& eng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(eng);
    return m;
}

/// Random member of the polytope: a convex combination of two enumerated
/// extreme points with a random rational weight.
inline Mechanism random_member(std::mt19937_64& eng, const VertexSet& vertices) {
    const std::size_t a = eng() % vertices.size();
    const std::size_t b = eng() % vertices.size();
    const Rational w(1 + static_cast<long>(eng() % 9), 10);  // in [1/10, 9/10]
    const std::size_t n = vertices.n();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = w * vertices[a].mat()(i, j) + (1 - w) * vertices[b].mat()(i, j);
    return Mechanism(std::move(m));
}

}  // namespace fixtures
