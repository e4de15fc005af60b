#pragma once

// Dense two-phase simplex with Bland's rule. Intended for exact scalars
// (Rational); cycling is impossible under Bland's rule and no tolerances
// are involved.

#include <cstddef>
#include <optional>
#include <vector>

namespace cgras {

enum class LpStatus { Optimal, Unbounded, Infeasible };

template <class T>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    T value{};
    std::vector<T> x;
};

namespace detail {

template <class T>
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows, std::vector<T>(cols + 1)), basis_(rows) {}

    T& at(std::size_t i, std::size_t j) { return a_[i][j]; }
    T& rhs(std::size_t i) { return a_[i][n_]; }
    std::size_t& basis(std::size_t i) { return basis_[i]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

    void pivot(std::size_t r, std::size_t c)
    {
        T p = a_[r][c];
        for (auto& v : a_[r])
            v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || a_[i][c] == 0)
                continue;
            T f = a_[i][c];
            for (std::size_t j = 0; j <= n_; ++j)
                if (a_[r][j] != 0)
                    a_[i][j] -= f * a_[r][j];
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r)
    {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

    /// Maximizes cost . v over columns allowed[j]. Returns false if unbounded.
    bool optimize(const std::vector<T>& cost, const std::vector<bool>& allowed)
    {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < n_ && !enter; ++j) {
                if (!allowed[j])
                    continue;
                T d = cost[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (a_[i][j] != 0)
                        d -= cost[basis_[i]] * a_[i][j];
                if (d > 0)
                    enter = j;
            }
            if (!enter)
                return true;
            std::optional<std::size_t> leave;
            T best{};
            for (std::size_t i = 0; i < m_; ++i) {
                if (!(a_[i][*enter] > 0))
                    continue;
                T ratio = a_[i][n_] / a_[i][*enter];
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave)
                return false;
            pivot(*leave, *enter);
        }
    }

    T objective(const std::vector<T>& cost)
    {
        T v{};
        for (std::size_t i = 0; i < m_; ++i)
            v += cost[basis_[i]] * a_[i][n_];
        return v;
    }

private:
    std::size_t m_, n_;
    std::vector<std::vector<T>> a_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

/// maximize c.x subject to A x <= b, x free.
template <class T>
LpResult<T> lp_maximize(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c)
{
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    // columns: x+ (n), x- (n), slacks (m), artificials (one per negative rhs)
    std::vector<std::size_t> art_row;
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0)
            art_row.push_back(i);
    const std::size_t nart = art_row.size();
    const std::size_t ncols = 2 * n + m + nart;
    detail::Tableau<T> tab(m, ncols);
    std::size_t art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        T sgn = flip ? T(-1) : T(1);
        for (std::size_t j = 0; j < n; ++j) {
            tab.at(i, j) = sgn * A[i][j];
            tab.at(i, n + j) = -(sgn * A[i][j]);
        }
        tab.at(i, 2 * n + i) = sgn;
        tab.rhs(i) = sgn * b[i];
        if (flip) {
            tab.at(i, 2 * n + m + art) = T(1);
            tab.basis(i) = 2 * n + m + art;
            ++art;
        } else {
            tab.basis(i) = 2 * n + i;
        }
    }

    std::vector<bool> allowed(ncols, true);
    if (nart > 0) {
        std::vector<T> phase1(ncols, T(0));
        for (std::size_t k = 0; k < nart; ++k)
            phase1[2 * n + m + k] = T(-1);
        tab.optimize(phase1, allowed);
        if (tab.objective(phase1) < 0)
            return {LpStatus::Infeasible, T{}, {}};
        // drive remaining (zero-valued) artificials out of the basis
        for (std::size_t i = 0; i < tab.rows();) {
            if (tab.basis(i) < 2 * n + m) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < 2 * n + m && !col; ++j)
                if (tab.at(i, j) != 0)
                    col = j;
            if (col) {
                tab.pivot(i, *col);
                ++i;
            } else {
                tab.drop_row(i);
            }
        }
        for (std::size_t k = 0; k < nart; ++k)
            allowed[2 * n + m + k] = false;
    }

    std::vector<T> cost(ncols, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    if (!tab.optimize(cost, allowed))
        return {LpStatus::Unbounded, T{}, {}};
    LpResult<T> res;
    res.status = LpStatus::Optimal;
    res.value = tab.objective(cost);
    std::vector<T> v(ncols, T(0));
    for (std::size_t i = 0; i < tab.rows(); ++i)
        v[tab.basis(i)] = tab.rhs(i);
    res.x.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        res.x[j] = v[j] - v[n + j];
    return res;
}

/// Is { x : A x <= b } nonempty?
template <class T>
bool lp_feasible(const std::vector<std::vector<T>>& A, const std::vector<T>& b, std::size_t nvars)
{
    if (A.empty())
        return true;
    return lp_maximize(A, b, std::vector<T>(nvars, T(0))).status != LpStatus::Infeasible;
}

} // namespace cgras
