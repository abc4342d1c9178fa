#pragma once

// Dense rational matrices and vectors. Sizes in this library are tiny
// (n <= 6), so everything is stored row-major by value and copied freely.

#include "ldpp/rational.hpp"

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ldpp {

using Vector = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix constant(std::size_t rows, std::size_t cols, const Rational& v) {
        Matrix m(rows, cols);
        for (auto& e : m.data_) e = v;
        return m;
    }

    /// Parses "a b c; d e f" with rows separated by ';' and rational
    /// entries separated by whitespace. Row lengths must agree.
    static Matrix parse(std::string_view text) {
        std::vector<Vector> rows;
        std::string buf(text);
        std::stringstream ss(buf);
        std::string row_text;
        while (std::getline(ss, row_text, ';')) {
            std::stringstream rs(row_text);
            Vector row;
            std::string tok;
            while (rs >> tok) row.push_back(parse_rational(tok));
            if (!row.empty()) rows.push_back(std::move(row));
        }
        if (rows.empty()) throw std::invalid_argument("empty matrix text");
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix text");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    Vector row(std::size_t i) const {
        assert(i < rows_);
        return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    Vector col(std::size_t j) const {
        assert(j < cols_);
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix scaled(const Rational& s) const {
        Matrix m = *this;
        for (auto& e : m.data_) e *= s;
        return m;
    }

    /// Row-major flattening, the coordinate order used for constraint
    /// coefficient vectors over the n*n matrix space.
    const Vector& flat() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    // Lexicographic over (rows, cols, row-major entries); total order used
    // for canonical forms and exact set comparisons.
    friend bool operator<(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (a.data_[k] != b.data_[k]) return a.data_[k] < b.data_[k];
        return false;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

inline std::string to_string(const Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += to_string(m(i, j));
        }
    }
    return out;
}

}  // namespace ldpp
