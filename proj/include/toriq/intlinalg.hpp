#pragma once

#include <optional>
#include <vector>

#include "toriq/rational.hpp"

namespace toriq {

using IVec = std::vector<Int>;

/// Dense row-major integer matrix (arbitrary precision).
struct IMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Int(0)) {}

    static IMat identity(int n) {
        IMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    IVec col(int c) const {
        IVec v(rows);
        for (int i = 0; i < rows; ++i) v[i] = at(i, c);
        return v;
    }
};

struct HnfResult {
    IMat h; ///< column Hermite normal form, H = M * U
    IMat u; ///< unimodular column transform
};

/// Column-style Hermite normal form. Conventions (documented in the file
/// format notes): pivots are the first nonzero entry of each nonzero column,
/// occur in strictly increasing row order left to right, are positive, and
/// every entry to the left of a pivot in its row lies in [0, pivot).
/// Zero columns are moved to the right. H = M * U with det(U) = +-1.
inline HnfResult hnf(const IMat& m) {
    IMat h = m;
    IMat u = IMat::identity(m.cols);
    auto col_sub = [&](int from, int to, const Int& q) {
        if (q == 0) return;
        for (int i = 0; i < h.rows; ++i) h.at(i, to) -= q * h.at(i, from);
        for (int i = 0; i < u.rows; ++i) u.at(i, to) -= q * u.at(i, from);
    };
    auto col_swap = [&](int x, int y) {
        if (x == y) return;
        for (int i = 0; i < h.rows; ++i) std::swap(h.at(i, x), h.at(i, y));
        for (int i = 0; i < u.rows; ++i) std::swap(u.at(i, x), u.at(i, y));
    };
    auto col_neg = [&](int x) {
        for (int i = 0; i < h.rows; ++i) h.at(i, x) = -h.at(i, x);
        for (int i = 0; i < u.rows; ++i) u.at(i, x) = -u.at(i, x);
    };

    int c = 0;
    for (int r = 0; r < h.rows && c < h.cols; ++r) {
        // Gcd-reduce row r across columns c..end until one nonzero remains.
        while (true) {
            int best = -1;
            for (int j = c; j < h.cols; ++j) {
                if (h.at(r, j) == 0) continue;
                if (best < 0 || abs_int(h.at(r, j)) < abs_int(h.at(r, best))) best = j;
            }
            if (best < 0) break; // no pivot in this row
            col_swap(best, c);
            bool cleared = true;
            for (int j = c + 1; j < h.cols; ++j) {
                if (h.at(r, j) == 0) continue;
                // floor quotient keeps remainders small and nonnegative-ish
                Int q = h.at(r, j) / h.at(r, c);
                if ((h.at(r, j) % h.at(r, c) != 0) && ((h.at(r, j) < 0) != (h.at(r, c) < 0))) --q;
                col_sub(c, j, q);
                if (h.at(r, j) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h.at(r, c) == 0) continue; // row has no pivot; stay on column c
        if (h.at(r, c) < 0) col_neg(c);
        for (int j = 0; j < c; ++j) {
            // reduce earlier columns' entries in the pivot row into [0, pivot)
            Int q = h.at(r, j) / h.at(r, c);
            if ((h.at(r, j) % h.at(r, c) != 0) && (h.at(r, j) < 0)) --q;
            col_sub(c, j, q);
        }
        ++c;
    }
    return {h, u};
}

/// One integer solution of A x = b, or nullopt when none exists.
inline std::optional<IVec> integer_solve(const IMat& a, const IVec& b) {
    const auto [h, u] = hnf(a);
    IVec y(a.cols, Int(0));
    // pivot column per processed column prefix
    int c = 0;
    std::vector<Int> acc(b); // residual b - H * y for the rows handled so far
    for (int r = 0; r < a.rows; ++r) {
        if (c < h.cols && h.at(r, c) != 0) {
            Int rem = acc[r] % h.at(r, c);
            if (rem != 0) return std::nullopt;
            y[c] = acc[r] / h.at(r, c);
            if (y[c] != 0)
                for (int i = r; i < a.rows; ++i) acc[i] -= y[c] * h.at(i, c);
            ++c;
        } else if (acc[r] != 0) {
            return std::nullopt;
        }
    }
    IVec x(a.cols, Int(0));
    for (int i = 0; i < a.cols; ++i) {
        Int s = 0;
        for (int j = 0; j < a.cols; ++j) s += u.at(i, j) * y[j];
        x[i] = s;
    }
    return x;
}

/// Basis of the lattice { x in Z^cols : A x = 0 } (automatically saturated:
/// the unimodular transform's columns over the zero columns of H are the
/// full integer kernel).
inline std::vector<IVec> integer_kernel(const IMat& a) {
    const auto [h, u] = hnf(a);
    std::vector<IVec> basis;
    for (int j = 0; j < a.cols; ++j) {
        bool zero = true;
        for (int i = 0; i < a.rows; ++i)
            if (h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (zero) basis.push_back(u.col(j));
    }
    return basis;
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
inline Int int_det(IMat m) {
    const int n = m.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sgn = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int pr = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(pr, j), m.at(k, j));
            sgn = -sgn;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sgn > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

/// Row-major rational matrix helpers used for flattened lattice questions.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rat(0)) {}

    Rat& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Rat& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

inline int rat_rank(QMat m) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pr = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(rank, j));
        const Rat inv = Rat(1) / m.at(rank, c);
        for (int i = rank + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            const Rat f = m.at(i, c) * inv;
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Scales every row of [A | b] by the lcm of its denominators; returns the
/// integer system with the same solution set over the integers.
inline std::pair<IMat, IVec> clear_denominators(const QMat& a, const std::vector<Rat>& b) {
    IMat ai(a.rows, a.cols);
    IVec bi(a.rows, Int(0));
    for (int i = 0; i < a.rows; ++i) {
        Int l = denominator(b[i]);
        for (int j = 0; j < a.cols; ++j) l = lcm_int(l, denominator(a.at(i, j)));
        for (int j = 0; j < a.cols; ++j) {
            const Rat v = a.at(i, j) * Rat(l);
            ai.at(i, j) = numerator(v);
        }
        const Rat v = b[i] * Rat(l);
        bi[i] = numerator(v);
    }
    return {ai, bi};
}

} // namespace toriq
