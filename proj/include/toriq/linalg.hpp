#pragma once

#include <optional>
#include <vector>

#include "toriq/field.hpp"

namespace toriq {

using FVec = std::vector<FieldElem>;

/// Dense row-major matrix of field elements.
class FMat {
public:
    FMat() = default;
    FMat(int rows, int cols, const FieldPtr& f)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, FieldElem::zero(f)) {}

    static FMat identity(int n, const FieldPtr& f) {
        FMat m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = FieldElem::one(f);
        return m;
    }

    static FMat from_rows(const std::vector<FVec>& rows, int cols, const FieldPtr& f) {
        FMat m(static_cast<int>(rows.size()), cols, f);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
        return m;
    }

    static FMat from_columns(const std::vector<FVec>& cols, int rows, const FieldPtr& f) {
        FMat m(rows, static_cast<int>(cols.size()), f);
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FieldElem& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const FieldElem& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    FVec row(int r) const {
        FVec v;
        v.reserve(cols_);
        for (int j = 0; j < cols_; ++j) v.push_back(at(r, j));
        return v;
    }

    FVec col(int c) const {
        FVec v;
        v.reserve(rows_);
        for (int i = 0; i < rows_; ++i) v.push_back(at(i, c));
        return v;
    }

    FMat transpose() const {
        FMat t(cols_, rows_, field());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    FieldPtr field() const { return a_.empty() ? nullptr : a_.front().field(); }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<FieldElem> a_;
};

inline FVec mat_vec(const FMat& m, const FVec& v) {
    FVec out;
    out.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        FieldElem s = FieldElem::zero(m.field());
        for (int j = 0; j < m.cols(); ++j) s += m.at(i, j) * v[j];
        out.push_back(std::move(s));
    }
    return out;
}

inline FMat mat_mul(const FMat& a, const FMat& b) {
    FMat out(a.rows(), b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

inline FieldElem dot(const FVec& u, const FVec& v) {
    FieldElem s = FieldElem::zero(u.front().field());
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline bool is_zero_vec(const FVec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

inline FVec zero_vec(int n, const FieldPtr& f) { return FVec(n, FieldElem::zero(f)); }

inline FVec sub_vec(const FVec& a, const FVec& b) {
    FVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline FVec scale_vec(const FieldElem& s, const FVec& v) {
    FVec r(v);
    for (auto& c : r) c *= s;
    return r;
}

namespace detail {

/// Reduced row echelon form in place; returns the pivot column per pivot row.
/// Exact division by nonzero pivots; deterministic first-nonzero pivoting.
inline std::vector<int> rref(FMat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
        const FieldElem inv = m.at(r, c).inverse();
        for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            const FieldElem f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

inline int rank(FMat m) { return static_cast<int>(detail::rref(m).size()); }

/// One exact solution of A x = b, or nullopt when inconsistent
/// (free variables are set to zero).
inline std::optional<FVec> solve(const FMat& a, const FVec& b) {
    FMat aug(a.rows(), a.cols() + 1, a.field());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    const auto pivots = detail::rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    FVec x = zero_vec(a.cols(), a.field());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
    return x;
}

/// Exact basis of the kernel of A, one vector per free column
/// (free coordinate set to 1), in ascending free-column order.
inline std::vector<FVec> nullspace(FMat m) {
    const int cols = m.cols();
    const auto f = m.field();
    const auto pivots = detail::rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<FVec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        FVec v = zero_vec(cols, f);
        v[c] = FieldElem::one(f);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<FMat> inverse(const FMat& a) {
    const int n = a.rows();
    FMat aug(n, 2 * n, a.field());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = FieldElem::one(a.field());
    }
    const auto pivots = detail::rref(aug);
    if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
    FMat inv(n, n, a.field());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

/// Exact determinant (Gaussian elimination with division, swap-sign tracked).
inline FieldElem det(FMat m) {
    const auto f = m.field();
    FieldElem d = FieldElem::one(f);
    const int n = m.rows();
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (!m.at(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) return FieldElem::zero(f);
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pr, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        const FieldElem inv = m.at(c, c).inverse();
        for (int i = c + 1; i < n; ++i) {
            if (m.at(i, c).is_zero()) continue;
            const FieldElem fct = m.at(i, c) * inv;
            for (int j = c; j < n; ++j) m.at(i, j) -= fct * m.at(c, j);
        }
    }
    return d;
}

/// Numeric lexicographic comparison of equal-length vectors.
inline bool numeric_lex_less(const FVec& a, const FVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int c = a[i].compare(b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

} // namespace toriq
