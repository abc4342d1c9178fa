#pragma once

// The local epsilon-differential-privacy polytope D of n x n row-stochastic
// matrices A with a_ij <= t * a_kj for all i, k and every column j, where
// t = e^eps >= 1 is kept as an exact rational. This header builds the full
// indexed constraint system, tests membership exactly, and extracts tight
// constraints.
//
// Constraint index order (part of the external report contract; stable for
// fixed n and t):
//   [0, n)                : Stochastic(i), row sums, by row i
//   [n, n + n^2)          : NonNeg(i, j), row-major over (i, j)
//   [n + n^2, ...)        : Dp(i, k, j), a_ij <= t * a_kj, ordered by
//                           (j, i, k) so that constraints acting on one
//                           column are contiguous; i = k is excluded as
//                           trivially satisfied, giving n*n*(n-1) entries.
// Indices reported by the CLI use this numbering; row/column indices inside
// a constraint description are printed 1-based.

#include "ldpp/linalg.hpp"
#include "ldpp/matrix.hpp"
#include "ldpp/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldpp {

/// t = e^eps as an exact rational; t = 1 encodes eps = 0.
class PrivacyParameter {
public:
    explicit PrivacyParameter(Rational t) : t_(std::move(t)) {
        if (t_ < 1) throw std::domain_error("privacy parameter t = e^eps must be >= 1");
    }
    const Rational& t() const { return t_; }
    bool is_zero_eps() const { return t_ == 1; }

private:
    Rational t_;
};

/// A row-stochastic nonnegative square matrix; the DP constraints are a
/// property of the pair (Mechanism, t), checked by membership(), not here.
class Mechanism {
public:
    explicit Mechanism(Matrix m) : mat_(std::move(m)) {
        if (mat_.rows() != mat_.cols() || mat_.rows() == 0)
            throw std::invalid_argument("mechanism must be square and nonempty");
        for (std::size_t i = 0; i < mat_.rows(); ++i) {
            Rational sum = 0;
            for (std::size_t j = 0; j < mat_.cols(); ++j) {
                if (mat_(i, j) < 0) throw std::invalid_argument("mechanism entries must be >= 0");
                sum += mat_(i, j);
            }
            if (sum != 1) throw std::invalid_argument("mechanism rows must sum to exactly 1");
        }
    }

    std::size_t n() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }

    friend bool operator==(const Mechanism& a, const Mechanism& b) { return a.mat_ == b.mat_; }
    friend bool operator<(const Mechanism& a, const Mechanism& b) { return a.mat_ < b.mat_; }

private:
    Matrix mat_;
};

struct Constraint {
    enum class Kind { Stochastic, NonNeg, Dp };
    enum class Relation { Equal, LessEq };

    Kind kind = Kind::Stochastic;
    Relation relation = Relation::Equal;
    // 0-based participants: Stochastic uses i; NonNeg uses (i, j);
    // Dp(i, k, j) is a_ij <= t * a_kj.
    std::size_t i = 0, j = 0, k = 0;
    // Sparse coefficients over matrix positions (row, col).
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>> coeffs;
    Rational rhs;

    Rational evaluate(const Matrix& a) const {
        Rational v = 0;
        for (const auto& [pos, c] : coeffs) v += c * a(pos.first, pos.second);
        return v;
    }
    bool satisfied_by(const Matrix& a) const {
        Rational v = evaluate(a);
        return relation == Relation::Equal ? v == rhs : v <= rhs;
    }
    bool tight_at(const Matrix& a) const { return evaluate(a) == rhs; }

    /// Coefficient vector in the row-major flattening of the n x n space.
    Vector dense_coeffs(std::size_t n) const {
        Vector v(n * n);
        for (const auto& [pos, c] : coeffs) v[pos.first * n + pos.second] = c;
        return v;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::Stochastic: return "Stochastic(" + std::to_string(i + 1) + ")";
            case Kind::NonNeg:
                return "NonNeg(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            case Kind::Dp:
                return "DP(" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "," +
                       std::to_string(j + 1) + ")";
        }
        return {};
    }
};

class ConstraintSystem {
public:
    ConstraintSystem(std::size_t n, PrivacyParameter t) : n_(n), t_(std::move(t)) {
        if (n == 0) throw std::invalid_argument("n must be >= 1");
        constraints_.reserve(n + n * n + n * n * (n - 1));
        for (std::size_t i = 0; i < n; ++i) {
            Constraint c;
            c.i = i;
            for (std::size_t j = 0; j < n; ++j) c.coeffs.push_back({{i, j}, 1});
            c.rhs = 1;
            constraints_.push_back(std::move(c));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Constraint c;
                c.kind = Constraint::Kind::NonNeg;
                c.relation = Constraint::Relation::LessEq;
                c.i = i;
                c.j = j;
                c.coeffs.push_back({{i, j}, -1});
                c.rhs = 0;
                constraints_.push_back(std::move(c));
            }
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    if (i == k) continue;
                    Constraint c;
                    c.kind = Constraint::Kind::Dp;
                    c.relation = Constraint::Relation::LessEq;
                    c.i = i;
                    c.k = k;
                    c.j = j;
                    c.coeffs.push_back({{i, j}, 1});
                    c.coeffs.push_back({{k, j}, -t_.t()});
                    c.rhs = 0;
                    constraints_.push_back(std::move(c));
                }
    }

    std::size_t n() const { return n_; }
    const PrivacyParameter& t() const { return t_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    std::size_t size() const { return constraints_.size(); }
    const Constraint& operator[](std::size_t idx) const { return constraints_[idx]; }

    std::size_t stochastic_index(std::size_t i) const { return i; }
    std::size_t nonneg_index(std::size_t i, std::size_t j) const { return n_ + i * n_ + j; }
    std::size_t dp_index(std::size_t i, std::size_t k, std::size_t j) const {
        assert(i != k);
        return n_ + n_ * n_ + j * n_ * (n_ - 1) + i * (n_ - 1) + (k < i ? k : k - 1);
    }

    std::size_t dp_begin() const { return n_ + n_ * n_; }
    /// Half-open index range of the Dp constraints acting on column j.
    std::pair<std::size_t, std::size_t> dp_column_range(std::size_t j) const {
        std::size_t base = dp_begin() + j * n_ * (n_ - 1);
        return {base, base + n_ * (n_ - 1)};
    }

private:
    std::size_t n_;
    PrivacyParameter t_;
    std::vector<Constraint> constraints_;
};

inline ConstraintSystem build_system(std::size_t n, const PrivacyParameter& t) {
    return ConstraintSystem(n, t);
}

struct MembershipResult {
    bool in_d;
    std::vector<std::size_t> violated;  // every violated constraint index
};

inline MembershipResult membership(const Matrix& a, const ConstraintSystem& sys) {
    if (a.rows() != sys.n() || a.cols() != sys.n())
        throw std::invalid_argument("matrix dimensions do not match the constraint system");
    MembershipResult res{true, {}};
    for (std::size_t idx = 0; idx < sys.size(); ++idx)
        if (!sys[idx].satisfied_by(a)) {
            res.in_d = false;
            res.violated.push_back(idx);
        }
    return res;
}

inline MembershipResult membership(const Matrix& a, const PrivacyParameter& t) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument("membership requires a square nonempty matrix");
    return membership(a, ConstraintSystem(a.rows(), t));
}

/// Indices of all constraints holding with equality at a. The Stochastic
/// equalities are always present. Requires a in D.
inline std::vector<std::size_t> tight_set(const Mechanism& a, const ConstraintSystem& sys) {
    if (!membership(a.mat(), sys).in_d)
        throw std::domain_error("tight_set: matrix is not in the polytope");
    std::vector<std::size_t> tight;
    for (std::size_t idx = 0; idx < sys.size(); ++idx)
        if (sys[idx].tight_at(a.mat())) tight.push_back(idx);
    return tight;
}

/// Checks the implication "(v_i <= t v_j for all i, j) => v >= 0", which
/// holds for every vector when t > 1; rejected for t = 1 where the
/// implication's hypothesis does not force nonnegativity.
inline bool nonneg_redundancy_check(const Vector& v, const PrivacyParameter& t) {
    if (t.t() == 1) throw std::domain_error("nonneg_redundancy_check requires t > 1");
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[i] > t.t() * v[j]) return true;  // hypothesis fails, vacuously true
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
}

}  // namespace ldpp
