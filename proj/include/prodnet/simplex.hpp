#pragma once

#include <cstddef>
#include <vector>

#include "prodnet/errors.hpp"

namespace prodnet {

// Dense primal simplex for   maximize c^T x  s.t.  A x <= b,  x >= 0,  with b >= 0,
// so the origin is a feasible starting basis. Works for any ordered field type
// (double, or an exact rational type). Entering variables follow Dantzig's rule
// and switch to Bland's rule after a run of degenerate pivots; ratio-test ties
// go to the row whose basic variable has the smallest index. Throws SolverError
// if the program is unbounded.
template <typename T>
struct LpResult {
    std::vector<T> x;
    T objective{};
    std::size_t pivots = 0;
};

template <typename T>
class DenseSimplex {
public:
    // `eps` is the pivot tolerance; use 0 for exact arithmetic.
    DenseSimplex(std::vector<std::vector<T>> A, std::vector<T> b, std::vector<T> c, T eps = T(0))
        : m_(b.size()), n_(c.size()), eps_(eps) {
        if (A.size() != m_) throw SolverError("constraint matrix row count mismatch");
        tab_.assign(m_ + 1, std::vector<T>(n_ + m_ + 1, T(0)));
        for (std::size_t i = 0; i < m_; ++i) {
            if (A[i].size() != n_) throw SolverError("constraint matrix column count mismatch");
            if (b[i] < T(0)) throw SolverError("right-hand side must be nonnegative");
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = A[i][j];
            tab_[i][n_ + i] = T(1);
            tab_[i][n_ + m_] = b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) tab_[m_][j] = -c[j];
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
    }

    LpResult<T> solve(std::size_t max_pivots = 1000000) {
        const std::size_t width = n_ + m_;
        std::size_t degenerate_run = 0;
        std::size_t pivots = 0;
        bool bland = false;
        while (true) {
            std::size_t enter = width;
            if (bland) {
                for (std::size_t j = 0; j < width; ++j) {
                    if (tab_[m_][j] < -eps_) {
                        enter = j;
                        break;
                    }
                }
            } else {
                T best = -eps_;
                for (std::size_t j = 0; j < width; ++j) {
                    if (tab_[m_][j] < best) {
                        best = tab_[m_][j];
                        enter = j;
                    }
                }
            }
            if (enter == width) break;

            std::size_t leave = m_;
            T best_ratio{};
            for (std::size_t i = 0; i < m_; ++i) {
                if (!(tab_[i][enter] > eps_)) continue;
                T ratio = tab_[i][width] / tab_[i][enter];
                if (leave == m_ || ratio < best_ratio ||
                    (!(best_ratio < ratio) && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_) throw SolverError("linear program is unbounded");

            if (!(best_ratio > eps_)) {
                if (++degenerate_run > 50) bland = true;
            } else {
                degenerate_run = 0;
                bland = false;
            }
            pivot(leave, enter);
            if (++pivots > max_pivots) throw SolverError("simplex pivot limit exceeded");
        }

        LpResult<T> result;
        result.x.assign(n_, T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) result.x[basis_[i]] = tab_[i][width];
        result.objective = tab_[m_][width];
        result.pivots = pivots;
        return result;
    }

private:
    void pivot(std::size_t row, std::size_t col) {
        const std::size_t cols = n_ + m_ + 1;
        T piv = tab_[row][col];
        for (std::size_t j = 0; j < cols; ++j) tab_[row][j] /= piv;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == row) continue;
            T factor = tab_[i][col];
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (tab_[row][j] == T(0)) continue;
                tab_[i][j] -= factor * tab_[row][j];
            }
        }
        basis_[row] = col;
    }

    std::size_t m_;
    std::size_t n_;
    T eps_;
    std::vector<std::vector<T>> tab_;
    std::vector<std::size_t> basis_;
};

} // namespace prodnet
