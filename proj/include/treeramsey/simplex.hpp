#pragma once

// Dense two-phase tableau simplex over exact rationals, sized for the small
// weight-function programs in this library. Bland's rule throughout, so no
// cycling and no tolerances.

#include "treeramsey/rational.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace treeramsey {

enum class Relation { LE, GE, EQ };

struct LinearProgram {
    // maximize c.x subject to A x (rel) b, x >= 0
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<Relation> rel;
    std::vector<Rational> c;

    std::size_t rows() const { return A.size(); }
    std::size_t vars() const { return c.size(); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational objective = 0;
    std::vector<Rational> x;
    // Dual values per row; only populated for programs whose rows are all LE
    // (the certificate consumers never need more).
    std::vector<Rational> dual;
};

namespace detail {

class SimplexTableau {
public:
    explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
        m_ = lp.rows();
        nStruct_ = lp.vars();
        // columns: structural, then one slack/surplus per row, then artificials
        slackCol_.assign(m_, -1);
        artCol_.assign(m_, -1);
        int col = int(nStruct_);
        for (std::size_t i = 0; i < m_; ++i)
            slackCol_[i] = (lp.rel[i] == Relation::EQ) ? -1 : col++;
        for (std::size_t i = 0; i < m_; ++i) {
            bool needArt = lp.rel[i] != Relation::LE || lp.b[i] < 0;
            if (lp.rel[i] == Relation::LE && lp.b[i] >= 0) continue;
            (void)needArt;
            artCol_[i] = col++;
        }
        width_ = col;
        banned_.assign(width_, 0);
        T_.assign(m_, std::vector<Rational>(width_ + 1, Rational(0)));
        basis_.assign(m_, -1);
        for (std::size_t i = 0; i < m_; ++i) {
            Rational sign = 1;
            // normalise to nonnegative rhs
            bool flip = lp.b[i] < 0;
            if (flip) sign = -1;
            for (std::size_t j = 0; j < nStruct_; ++j) T_[i][j] = sign * lp.A[i][j];
            T_[i][width_] = sign * lp.b[i];
            if (slackCol_[i] >= 0) {
                Rational s = (lp.rel[i] == Relation::LE) ? Rational(1) : Rational(-1);
                T_[i][slackCol_[i]] = sign * s;
            }
            if (artCol_[i] >= 0) {
                T_[i][artCol_[i]] = 1;
                basis_[i] = artCol_[i];
            } else {
                basis_[i] = slackCol_[i]; // LE row with nonnegative rhs
            }
        }
    }

    LPResult solve() {
        LPResult res;
        bool anyArt = false;
        for (std::size_t i = 0; i < m_; ++i)
            if (artCol_[i] >= 0) anyArt = true;

        if (anyArt) {
            std::vector<Rational> phase1(width_, Rational(0));
            for (std::size_t i = 0; i < m_; ++i)
                if (artCol_[i] >= 0) phase1[artCol_[i]] = -1;
            if (!optimise(phase1)) {
                res.status = LPStatus::Unbounded; // cannot happen in phase 1
                return res;
            }
            if (objective_value(phase1) != 0) {
                res.status = LPStatus::Infeasible;
                return res;
            }
            purge_artificials();
        }

        std::vector<Rational> obj(width_, Rational(0));
        for (std::size_t j = 0; j < nStruct_; ++j) obj[j] = lp_.c[j];
        if (!optimise(obj)) {
            res.status = LPStatus::Unbounded;
            return res;
        }
        res.status = LPStatus::Optimal;
        res.x.assign(nStruct_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 0 && std::size_t(basis_[i]) < nStruct_) res.x[basis_[i]] = T_[i][width_];
        res.objective = objective_value(obj);

        bool allLE = true;
        for (auto r : lp_.rel)
            if (r != Relation::LE) allLE = false;
        if (allLE) {
            auto row0 = reduced_row(obj);
            res.dual.assign(m_, Rational(0));
            for (std::size_t i = 0; i < m_; ++i) res.dual[i] = row0[slackCol_[i]];
        }
        return res;
    }

private:
    Rational objective_value(const std::vector<Rational>& obj) const {
        Rational z = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 0) z += obj[basis_[i]] * T_[i][width_];
        return z;
    }

    // row0[j] = z_j - c_j; nonnegative everywhere at a maximum.
    std::vector<Rational> reduced_row(const std::vector<Rational>& obj) const {
        std::vector<Rational> row0(width_ + 1, Rational(0));
        for (std::size_t j = 0; j <= width_; ++j) {
            Rational z = 0;
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] >= 0) z += obj[basis_[i]] * T_[i][j];
            row0[j] = z - (j < width_ ? obj[j] : Rational(0));
        }
        return row0;
    }

    bool optimise(const std::vector<Rational>& obj) {
        while (true) {
            auto row0 = reduced_row(obj);
            int enter = -1;
            for (std::size_t j = 0; j < width_; ++j)
                if (row0[j] < 0 && !banned_[j]) { enter = int(j); break; } // Bland
            if (enter < 0) return true;
            int leave = -1;
            Rational bestRatio = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (T_[i][enter] <= 0) continue;
                Rational ratio = T_[i][width_] / T_[i][enter];
                if (leave < 0 || ratio < bestRatio ||
                    (ratio == bestRatio && basis_[i] < basis_[leave])) {
                    leave = int(i);
                    bestRatio = ratio;
                }
            }
            if (leave < 0) return false; // unbounded
            pivot(std::size_t(leave), std::size_t(enter));
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rational p = T_[r][c];
        for (std::size_t j = 0; j <= width_; ++j) T_[r][j] /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || T_[i][c] == 0) continue;
            Rational f = T_[i][c];
            for (std::size_t j = 0; j <= width_; ++j) T_[i][j] -= f * T_[r][j];
        }
        basis_[r] = int(c);
    }

    // After phase 1: pivot leftover artificials out of the basis or drop
    // their (redundant) rows, then forbid artificial columns for phase 2.
    void purge_artificials() {
        banned_.assign(width_, 0);
        std::vector<char> isArt(width_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            if (artCol_[i] >= 0) isArt[artCol_[i]] = 1;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < 0 || !isArt[basis_[i]]) continue;
            int enter = -1;
            for (std::size_t j = 0; j < width_; ++j)
                if (!isArt[j] && T_[i][j] != 0) { enter = int(j); break; }
            if (enter >= 0) pivot(i, std::size_t(enter));
            else basis_[i] = -1; // all-zero row, keep it inert
        }
        for (std::size_t j = 0; j < width_; ++j)
            if (isArt[j]) banned_[j] = 1;
    }

    const LinearProgram& lp_;
    std::size_t m_ = 0, nStruct_ = 0, width_ = 0;
    std::vector<std::vector<Rational>> T_;
    std::vector<int> basis_;
    std::vector<int> slackCol_, artCol_;
    std::vector<char> banned_;
};

} // namespace detail

inline LPResult solve_lp(const LinearProgram& lp) {
    if (lp.A.size() != lp.b.size() || lp.A.size() != lp.rel.size())
        throw std::invalid_argument("inconsistent LP shape");
    for (auto& row : lp.A)
        if (row.size() != lp.c.size()) throw std::invalid_argument("inconsistent LP row width");
    detail::SimplexTableau tab(lp);
    return tab.solve();
}

} // namespace treeramsey
