#pragma once

// Exact two-phase primal simplex over the polytope's constraint system.
//
// Standard form: the n^2 matrix entries (row-major) plus one slack per DP
// constraint, all required nonnegative (the NonNeg constraints of the
// system become the variable bounds); the n row-sum equalities get phase-I
// artificials. Bland's smallest-index rule is used for both the entering
// and the leaving tie-break in both phases, so cycling is impossible even
// though vertices of this polytope are heavily degenerate. Every pivot is
// exact rational arithmetic.
//
// The feasible region is a nonempty bounded polytope, so phase I always
// reaches zero and phase II never detects an unbounded ray; either event
// is reported as a logic error.

#include "ldpp/matrix.hpp"
#include "ldpp/polytope.hpp"
#include "ldpp/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ldpp {

struct SimplexSolution {
    Rational value;
    Matrix point;  // optimal vertex of the polytope
};

namespace detail {

class SimplexTableau {
public:
    SimplexTableau(const Matrix& utility, const ConstraintSystem& sys) {
        const std::size_t n = sys.n();
        n_ = n;
        const std::size_t ndp = n * n * (n - 1);
        nvars_ = n * n + ndp;          // matrix entries + DP slacks
        rows_ = n + ndp;               // equalities + DP rows
        width_ = nvars_ + n + 1;       // + artificials + rhs
        active_ = nvars_ + n;          // artificials active during phase I
        tab_.assign(rows_, Vector(width_));
        basis_.assign(rows_, 0);

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) tab_[i][i * n + j] = 1;
            tab_[i][nvars_ + i] = 1;  // artificial
            tab_[i][width_ - 1] = 1;  // rhs
            basis_[i] = nvars_ + i;
        }
        for (std::size_t d = 0; d < ndp; ++d) {
            const Constraint& c = sys[sys.dp_begin() + d];
            Vector& row = tab_[n + d];
            row[c.i * n + c.j] += 1;
            row[c.k * n + c.j] -= sys.t().t();
            row[n * n + d] = 1;  // slack
            basis_[n + d] = n * n + d;
        }

        phase_one();
        active_ = nvars_;  // drop artificial columns

        // Phase II objective: maximize sum U(i,j) * x_ij.
        Vector cost(nvars_);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = utility(i, j);
        install_objective(cost);
        iterate();

        value_ = obj_[width_ - 1];
    }

    Matrix extract_point() const {
        Matrix a(n_, n_);
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] < n_ * n_) a(basis_[r] / n_, basis_[r] % n_) = tab_[r][width_ - 1];
        return a;
    }

    const Rational& value() const { return value_; }

private:
    void phase_one() {
        // Maximize -(sum of artificials); reduced costs via install_objective.
        Vector cost(nvars_ + n_);
        for (std::size_t i = 0; i < n_; ++i) cost[nvars_ + i] = -1;
        install_objective(cost);
        iterate();
        if (obj_[width_ - 1] != 0)
            throw std::logic_error("simplex: constraint system is infeasible");
        // Degenerate bases may still hold an artificial at zero; swap each
        // one for any real column with a nonzero coefficient in its row.
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < nvars_) continue;
            bool swapped = false;
            for (std::size_t j = 0; j < nvars_ && !swapped; ++j)
                if (tab_[r][j] != 0) {
                    pivot(r, j);
                    swapped = true;
                }
            if (!swapped) throw std::logic_error("simplex: artificial stuck in basis");
        }
    }

    /// Sets obj_ to the reduced-cost row z - c of the given cost vector
    /// (indexed over active columns; rhs slot holds the objective value).
    void install_objective(const Vector& cost) {
        obj_.assign(width_, Rational(0));
        for (std::size_t j = 0; j < cost.size(); ++j) obj_[j] = -cost[j];
        for (std::size_t r = 0; r < rows_; ++r) {
            const Rational cb = basis_[r] < cost.size() ? cost[basis_[r]] : Rational(0);
            if (cb == 0) continue;
            for (std::size_t j = 0; j < active_; ++j) obj_[j] += cb * tab_[r][j];
            obj_[width_ - 1] += cb * tab_[r][width_ - 1];
        }
    }

    void iterate() {
        while (true) {
            // Bland: entering = smallest improving column index.
            std::size_t enter = active_;
            for (std::size_t j = 0; j < active_; ++j)
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == active_) return;  // optimal

            // Ratio test; ties broken by smallest basis variable (Bland).
            std::size_t leave = rows_;
            Rational best;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (tab_[r][enter] <= 0) continue;
                Rational ratio = tab_[r][width_ - 1] / tab_[r][enter];
                if (leave == rows_ || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == rows_)
                throw std::logic_error("simplex: unbounded direction in a bounded polytope");
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t j) {
        Vector& prow = tab_[r];
        const Rational p = prow[j];
        for (auto& v : prow) v /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || tab_[i][j] == 0) continue;
            const Rational f = tab_[i][j];
            Vector& row = tab_[i];
            for (std::size_t c = 0; c < width_; ++c)
                if (prow[c] != 0) row[c] -= f * prow[c];
        }
        if (obj_[j] != 0) {
            const Rational f = obj_[j];
            for (std::size_t c = 0; c < width_; ++c)
                if (prow[c] != 0) obj_[c] -= f * prow[c];
        }
        basis_[r] = j;
    }

    std::size_t n_ = 0, nvars_ = 0, rows_ = 0, width_ = 0, active_ = 0;
    std::vector<Vector> tab_;
    Vector obj_;
    std::vector<std::size_t> basis_;
    Rational value_;
};

}  // namespace detail

/// Maximizes the entrywise product sum <utility, A> over the polytope and
/// returns the exact optimum together with an optimal vertex.
inline SimplexSolution simplex_solve(const Matrix& utility, const ConstraintSystem& sys) {
    if (utility.rows() != sys.n() || utility.cols() != sys.n())
        throw std::invalid_argument("utility dimensions do not match the constraint system");
    detail::SimplexTableau tableau(utility, sys);
    SimplexSolution sol{tableau.value(), tableau.extract_point()};

    Rational check = 0;
    for (std::size_t i = 0; i < sys.n(); ++i)
        for (std::size_t j = 0; j < sys.n(); ++j) check += utility(i, j) * sol.point(i, j);
    if (check != sol.value) throw std::logic_error("simplex: objective mismatch at extraction");
    return sol;
}

}  // namespace ldpp
