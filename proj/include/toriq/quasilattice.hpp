#pragma once

#include <algorithm>
#include <vector>

#include "toriq/intlinalg.hpp"
#include "toriq/linalg.hpp"

namespace toriq {

/// Finitely generated Z-module of field vectors whose generators span R^n.
/// Generator lists are never canonicalized: two presentations of the same
/// module compare unequal as data; use `equivalent` for module equality.
struct Quasilattice {
    int ambient_dim = 0;
    std::vector<FVec> generators;
};

namespace detail {

/// Flattens field vectors into rational columns of length n*D.
inline QMat flatten_columns(const std::vector<FVec>& vecs, int n, int deg) {
    QMat m(n * deg, static_cast<int>(vecs.size()));
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (int i = 0; i < n; ++i) {
            const auto& coords = vecs[j][i].coords();
            for (int t = 0; t < deg; ++t) m.at(i * deg + t, static_cast<int>(j)) = coords[t];
        }
    return m;
}

inline std::vector<Rat> flatten_vec(const FVec& v, int deg) {
    std::vector<Rat> out;
    out.reserve(v.size() * deg);
    for (const auto& e : v)
        for (int t = 0; t < deg; ++t) out.push_back(e.coords()[t]);
    return out;
}

inline int field_rank(const std::vector<FVec>& vecs, int n, const FieldPtr& f) {
    if (vecs.empty()) return 0;
    return rank(FMat::from_columns(vecs, n, f));
}

} // namespace detail

/// Throws RankDeficient unless the generators R-span R^n.
inline void validate_quasilattice(const Quasilattice& q, const FieldPtr& f) {
    if (q.ambient_dim < 1) throw RankDeficient("quasilattice ambient dimension must be >= 1");
    if (detail::field_rank(q.generators, q.ambient_dim, f) != q.ambient_dim)
        throw RankDeficient("quasilattice generators do not span the ambient space");
}

/// Decides v in Q, i.e. existence of an integer combination of the
/// generators equal to v (flatten to rationals, clear denominators,
/// integer-solve).
inline bool contains(const Quasilattice& q, const FVec& v) {
    if (q.generators.empty()) return is_zero_vec(v);
    const auto f = v.front().field();
    const int deg = f->degree();
    const QMat a = detail::flatten_columns(q.generators, q.ambient_dim, deg);
    const auto b = detail::flatten_vec(v, deg);
    const auto [ai, bi] = clear_denominators(a, b);
    return integer_solve(ai, bi).has_value();
}

/// Image quasilattice under a linear map (rows of `l` are the target
/// coordinates). Generators are the verbatim images, unreduced; throws
/// RankDeficient when the images fail to span the target space.
inline Quasilattice image(const Quasilattice& q, const FMat& l) {
    Quasilattice out;
    out.ambient_dim = l.rows();
    for (const auto& y : q.generators) out.generators.push_back(mat_vec(l, y));
    validate_quasilattice(out, l.field());
    return out;
}

/// Z-module generators of { q in Q : q in span(W) }. May be empty (trivial
/// intersection). Output is saturated, deduplicated, sign-normalized so the
/// first nonzero coordinate is positive, and sorted.
inline std::vector<FVec> subspace_intersection(const Quasilattice& q, const std::vector<FVec>& w_basis) {
    const auto f = q.generators.front().front().field();
    const int n = q.ambient_dim;
    const int s = static_cast<int>(q.generators.size());
    // Annihilator of W: vectors g with <w_i, g> = 0 for all i.
    std::vector<FVec> ann;
    if (w_basis.empty()) {
        for (int i = 0; i < n; ++i) {
            FVec e = zero_vec(n, f);
            e[i] = FieldElem::one(f);
            ann.push_back(std::move(e));
        }
    } else {
        ann = nullspace(FMat::from_rows(w_basis, n, f));
    }
    if (ann.empty()) return q.generators; // W is the whole space
    // Condition on integer coefficients c: <g, sum c_i Y_i> = 0 for all g.
    FMat cond(static_cast<int>(ann.size()), s, f);
    for (std::size_t r = 0; r < ann.size(); ++r)
        for (int i = 0; i < s; ++i) cond.at(static_cast<int>(r), i) = dot(ann[r], q.generators[i]);
    const int deg = f->degree();
    QMat flat(static_cast<int>(ann.size()) * deg, s);
    for (int r = 0; r < cond.rows(); ++r)
        for (int i = 0; i < s; ++i) {
            const auto& coords = cond.at(r, i).coords();
            for (int t = 0; t < deg; ++t) flat.at(r * deg + t, i) = coords[t];
        }
    const auto [ai, bi] = clear_denominators(flat, std::vector<Rat>(flat.rows, Rat(0)));
    (void)bi;
    const auto kernel = integer_kernel(ai);
    std::vector<FVec> gens;
    for (const auto& c : kernel) {
        FVec v = zero_vec(n, f);
        for (int i = 0; i < s; ++i) {
            if (c[i] == 0) continue;
            const FieldElem ci = FieldElem::rational(f, Rat(c[i]));
            for (int j = 0; j < n; ++j) v[j] += ci * q.generators[i][j];
        }
        if (is_zero_vec(v)) continue;
        for (int j = 0; j < n; ++j) {
            if (v[j].is_zero()) continue;
            if (v[j].sign() < 0)
                for (auto& e : v) e = -e;
            break;
        }
        gens.push_back(std::move(v));
    }
    std::sort(gens.begin(), gens.end(), numeric_lex_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

/// Discreteness test: Q is a lattice iff the Z-rank of the flattened
/// generators equals the rank of the generator matrix over the field.
inline bool is_lattice(const Quasilattice& q) {
    if (q.generators.empty()) return true;
    const auto f = q.generators.front().front().field();
    const int deg = f->degree();
    const QMat flat = detail::flatten_columns(q.generators, q.ambient_dim, deg);
    const int q_rank = rat_rank(flat);
    const int f_rank = detail::field_rank(q.generators, q.ambient_dim, f);
    return q_rank == f_rank;
}

struct SubgroupClass {
    bool closed = false;
    std::vector<FVec> witness; ///< generators of the intersection of Q with k
};

/// K = k/(k cap Q) is closed in the quasitorus iff Q cap k spans k.
inline SubgroupClass classify_subgroup(const Quasilattice& q, const std::vector<FVec>& k_basis) {
    SubgroupClass out;
    out.witness = subspace_intersection(q, k_basis);
    const auto f = q.generators.front().front().field();
    const int r = detail::field_rank(out.witness, q.ambient_dim, f);
    out.closed = (r == static_cast<int>(k_basis.size()));
    return out;
}

/// Module equality of two presentations: mutual containment of generators.
inline bool equivalent(const Quasilattice& a, const Quasilattice& b) {
    if (a.ambient_dim != b.ambient_dim) return false;
    for (const auto& g : a.generators)
        if (!contains(b, g)) return false;
    for (const auto& g : b.generators)
        if (!contains(a, g)) return false;
    return true;
}

/// The standard lattice Z^n.
inline Quasilattice standard_lattice(int n, const FieldPtr& f) {
    Quasilattice q;
    q.ambient_dim = n;
    for (int i = 0; i < n; ++i) {
        FVec e = zero_vec(n, f);
        e[i] = FieldElem::one(f);
        q.generators.push_back(std::move(e));
    }
    return q;
}

} // namespace toriq
