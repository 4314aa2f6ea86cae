#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "toriq/linalg.hpp"
#include "toriq/quasilattice.hpp"

namespace toriq {

/// One closed half-space { mu : <mu, normal> >= offset }.
struct HalfSpace {
    FVec normal;
    FieldElem offset;
};

/// H-representation polyhedron in (R^n)*, coordinates via the standard pairing.
struct Polyhedron {
    int dim_ambient = 0;
    std::vector<HalfSpace> halfspaces;
};

/// Exact face data. Vertices are sorted lexicographically by numeric value;
/// rays are normalized so their first nonzero coordinate is +-1 and sorted.
/// facet_incidence lists, per vertex, the indices of all tight halfspaces
/// with nonzero normal (zero normals are classified by `irredundant`).
/// For a polyhedron containing a line (pointed == false) the vertex, ray and
/// incidence lists are empty; dim is always valid.
struct FaceReport {
    std::vector<FVec> vertices;
    std::vector<FVec> rays;
    std::vector<std::vector<int>> facet_incidence;
    int dim = 0;
    bool pointed = false;
};

struct MinimizeResult {
    bool unbounded = false;
    FieldElem value; ///< meaningful only when !unbounded
};

/// Classification of the halfspace list into an irredundant H-representation.
struct IrredundantResult {
    std::vector<int> kept;                ///< exactly one definer per facet
    std::vector<int> discarded;           ///< strict margin everywhere on P
    std::vector<int> touching_discarded;  ///< tight somewhere but not a facet definer
};

namespace detail {

/// Pointed-space view of a polyhedron: zero normals split off, lineality
/// factored out, everything expressed in quotient coordinates.
struct PolyView {
    int n = 0;                   ///< ambient dimension
    int m = 0;                   ///< quotient dimension (rank of the normals)
    bool pointed = false;        ///< m == n
    std::vector<int> active;           ///< original indices with nonzero normal
    std::vector<int> zero_touching;    ///< zero normal, offset == 0
    std::vector<int> zero_discarded;   ///< zero normal, offset < 0
    std::vector<FVec> lineality;       ///< basis of the common normal kernel
    FMat comp;                   ///< n x m complement basis (columns)
    std::vector<FVec> qnormals;  ///< projected normals, one per active index
    FVec qoffsets;               ///< offsets, one per active index
    // pointed enumeration results (quotient coordinates)
    std::vector<FVec> vertices;
    std::vector<FVec> rays;
    std::vector<std::vector<int>> incidence; ///< tight positions into `active`
    int qdim = 0;                ///< dimension of the quotient polyhedron
    int dim = 0;                 ///< qdim + dim lineality
};

inline void enumerate_combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Normalizes a ray direction: first nonzero coordinate becomes +1 or -1.
inline void normalize_ray(FVec& u) {
    for (const auto& c : u) {
        if (c.is_zero()) continue;
        const int s = c.sign();
        FieldElem scale = (s > 0 ? c : -c).inverse();
        for (auto& x : u) x *= scale;
        return;
    }
}

/// Builds the pointed view and enumerates vertices and extreme rays.
/// Throws EmptyPolyhedron when there is no feasible point.
inline PolyView analyze(const Polyhedron& p, const FieldPtr& f) {
    PolyView v;
    v.n = p.dim_ambient;
    for (std::size_t j = 0; j < p.halfspaces.size(); ++j) {
        const auto& h = p.halfspaces[j];
        if (is_zero_vec(h.normal)) {
            const int s = h.offset.sign();
            if (s > 0) throw EmptyPolyhedron("zero normal with positive offset");
            (s == 0 ? v.zero_touching : v.zero_discarded).push_back(static_cast<int>(j));
        } else {
            v.active.push_back(static_cast<int>(j));
        }
    }

    std::vector<FVec> normals;
    for (int j : v.active) normals.push_back(p.halfspaces[j].normal);
    if (normals.empty()) {
        // whole space (intersected with trivially satisfied constraints)
        v.m = 0;
        v.pointed = (v.n == 0);
        v.qdim = 0;
        v.dim = v.n;
        if (v.n == 0) {
            v.vertices.push_back(FVec{});
            v.incidence.push_back({});
        }
        return v;
    }

    const FMat nmat = FMat::from_rows(normals, v.n, f);
    v.lineality = nullspace(nmat);
    v.m = v.n - static_cast<int>(v.lineality.size());
    v.pointed = v.lineality.empty();

    // Complement of the lineality: independent subset of the normals
    // (row space and null space meet trivially over an ordered field).
    if (v.pointed) {
        v.comp = FMat::identity(v.n, f);
        v.qnormals = normals;
    } else {
        std::vector<FVec> picked;
        FMat probe(0, v.n, f);
        for (const auto& x : normals) {
            std::vector<FVec> trial = picked;
            trial.push_back(x);
            if (rank(FMat::from_rows(trial, v.n, f)) == static_cast<int>(trial.size()))
                picked = std::move(trial);
            if (static_cast<int>(picked.size()) == v.m) break;
        }
        v.comp = FMat::from_columns(picked, v.n, f);
        for (const auto& x : normals) {
            FVec q;
            q.reserve(v.m);
            for (int c = 0; c < v.m; ++c) q.push_back(dot(picked[static_cast<std::size_t>(c)], x));
            v.qnormals.push_back(std::move(q));
        }
    }
    for (int j : v.active) v.qoffsets.push_back(p.halfspaces[j].offset);

    const int m = v.m;
    const int a = static_cast<int>(v.active.size());

    // Vertices: feasible basic solutions of m tight constraints.
    std::map<std::vector<std::vector<Rat>>, FVec> seen;
    enumerate_combinations(a, m, [&](const std::vector<int>& sub) {
        std::vector<FVec> rows;
        for (int i : sub) rows.push_back(v.qnormals[i]);
        const FMat b = FMat::from_rows(rows, m, f);
        FVec rhs;
        for (int i : sub) rhs.push_back(v.qoffsets[i]);
        if (rank(b) < m) return;
        const auto x = solve(b, rhs);
        for (int i = 0; i < a; ++i) {
            const FieldElem margin = dot(*x, v.qnormals[i]) - v.qoffsets[i];
            if (!margin.is_zero() && margin.sign() < 0) return;
        }
        std::vector<std::vector<Rat>> key;
        for (const auto& e : *x) key.push_back(e.coords());
        seen.emplace(std::move(key), *x);
    });
    if (seen.empty()) throw EmptyPolyhedron("no feasible point");
    for (auto& [key, vert] : seen) v.vertices.push_back(vert);
    std::sort(v.vertices.begin(), v.vertices.end(), numeric_lex_less);
    for (const auto& vert : v.vertices) {
        std::vector<int> tight;
        for (int i = 0; i < a; ++i)
            if ((dot(vert, v.qnormals[i]) - v.qoffsets[i]).is_zero()) tight.push_back(i);
        v.incidence.push_back(std::move(tight));
    }

    // Extreme rays: (m-1)-subsets whose normals have a 1-dim kernel that
    // stays on the correct side of every constraint.
    std::map<std::vector<std::vector<Rat>>, FVec> rayset;
    enumerate_combinations(a, m - 1 < 0 ? 0 : m - 1, [&](const std::vector<int>& sub) {
        if (m == 0) return;
        FVec u;
        if (sub.empty()) { // m == 1: the whole line is the candidate kernel
            u = zero_vec(1, f);
            u[0] = FieldElem::one(f);
        } else {
            std::vector<FVec> rows;
            for (int i : sub) rows.push_back(v.qnormals[i]);
            const auto kernel = nullspace(FMat::from_rows(rows, m, f));
            if (kernel.size() != 1) return;
            u = kernel.front();
        }
        int lo = 0, hi = 0;
        for (int i = 0; i < a; ++i) {
            const FieldElem pr = dot(u, v.qnormals[i]);
            if (pr.is_zero()) continue;
            (pr.sign() > 0 ? hi : lo) = 1;
            if (lo && hi) return; // not a recession direction either way
        }
        if (lo) for (auto& c : u) c = -c;
        normalize_ray(u);
        std::vector<std::vector<Rat>> key;
        for (const auto& e : u) key.push_back(e.coords());
        rayset.emplace(std::move(key), u);
    });
    for (auto& [key, ray] : rayset) v.rays.push_back(ray);
    std::sort(v.rays.begin(), v.rays.end(), numeric_lex_less);

    // Implicit equalities: max <mu, X_j> == offset_j, i.e. every vertex tight
    // and every ray orthogonal.
    std::vector<FVec> implicit;
    for (int i = 0; i < a; ++i) {
        bool tight_everywhere = true;
        for (const auto& vert : v.vertices)
            if (!(dot(vert, v.qnormals[i]) - v.qoffsets[i]).is_zero()) {
                tight_everywhere = false;
                break;
            }
        if (tight_everywhere)
            for (const auto& ray : v.rays)
                if (!dot(ray, v.qnormals[i]).is_zero()) {
                    tight_everywhere = false;
                    break;
                }
        if (tight_everywhere) implicit.push_back(v.qnormals[i]);
    }
    v.qdim = m - (implicit.empty() ? 0 : rank(FMat::from_rows(implicit, m, f)));
    v.dim = v.qdim + (v.n - v.m);
    return v;
}

inline FieldPtr poly_field(const Polyhedron& p) {
    for (const auto& h : p.halfspaces) {
        if (!h.normal.empty()) return h.normal.front().field();
        return h.offset.field();
    }
    throw Error("cannot infer field from an empty halfspace list");
}

} // namespace detail

/// Vertex/ray/incidence enumeration via feasible basic solutions.
/// Throws EmptyPolyhedron when P is infeasible.
inline FaceReport enumerate(const Polyhedron& p) {
    const auto f = detail::poly_field(p);
    const auto v = detail::analyze(p, f);
    FaceReport r;
    r.dim = v.dim;
    r.pointed = v.pointed;
    if (!v.pointed) return r;
    r.vertices = v.vertices;
    r.rays = v.rays;
    for (const auto& tight : v.incidence) {
        std::vector<int> orig;
        orig.reserve(tight.size());
        for (int pos : tight) orig.push_back(v.active[pos]);
        r.facet_incidence.push_back(std::move(orig));
    }
    return r;
}

/// Pointed iff the recession cone contains no line; requires P nonempty.
inline bool is_pointed(const Polyhedron& p) { return enumerate(p).pointed; }

/// Simple iff pointed and every vertex is tight on exactly n halfspaces.
inline bool is_simple(const Polyhedron& p) {
    const auto r = enumerate(p);
    if (!r.pointed) return false;
    for (const auto& tight : r.facet_incidence)
        if (static_cast<int>(tight.size()) != p.dim_ambient) return false;
    return true;
}

/// Exact minimum of <mu, c> over P, or Unbounded. Throws EmptyPolyhedron.
inline MinimizeResult minimize(const Polyhedron& p, const FVec& c) {
    const auto f = detail::poly_field(p);
    const auto v = detail::analyze(p, f);
    for (const auto& u : v.lineality)
        if (!dot(u, c).is_zero()) return {true, FieldElem::zero(f)};
    // project c onto quotient coordinates: <comp*y, c> = <y, comp^T c>
    FVec cq;
    cq.reserve(v.m);
    for (int j = 0; j < v.m; ++j) cq.push_back(dot(v.comp.col(j), c));
    for (const auto& ray : v.rays)
        if (dot(ray, cq).sign() < 0) return {true, FieldElem::zero(f)};
    bool first = true;
    FieldElem best = FieldElem::zero(f);
    for (const auto& vert : v.vertices) {
        FieldElem val = dot(vert, cq);
        if (first || val.compare(best) < 0) best = std::move(val);
        first = false;
    }
    return {false, best};
}

/// Irredundant H-representation: exactly one kept definer per facet
/// (first index wins), strictly redundant halfspaces discarded, halfspaces
/// tight somewhere without defining a facet (or duplicating one) classified
/// touching-discarded. Requires P nonempty and pointed.
inline IrredundantResult irredundant(const Polyhedron& p) {
    const auto f = detail::poly_field(p);
    const auto v = detail::analyze(p, f);
    if (!v.pointed) throw UnpointedPolyhedron("irredundant requires a pointed polyhedron");
    IrredundantResult out;
    out.discarded = v.zero_discarded;
    out.touching_discarded = v.zero_touching;
    const int a = static_cast<int>(v.active.size());
    // facet identity: the sets of tight vertices and tight rays
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> facet_of;
    for (int i = 0; i < a; ++i) {
        const int orig = v.active[i];
        std::vector<int> tv, tr;
        for (std::size_t k = 0; k < v.vertices.size(); ++k)
            if ((dot(v.vertices[k], v.qnormals[i]) - v.qoffsets[i]).is_zero()) tv.push_back(static_cast<int>(k));
        if (tv.empty()) {
            out.discarded.push_back(orig);
            continue;
        }
        for (std::size_t k = 0; k < v.rays.size(); ++k)
            if (dot(v.rays[k], v.qnormals[i]).is_zero()) tr.push_back(static_cast<int>(k));
        // affine dimension of the tight face
        std::vector<FVec> span;
        for (std::size_t k = 1; k < tv.size(); ++k)
            span.push_back(sub_vec(v.vertices[tv[k]], v.vertices[tv[0]]));
        for (int k : tr) span.push_back(v.rays[k]);
        const int fdim = span.empty() ? 0 : rank(FMat::from_rows(span, v.m, f));
        if (fdim != v.qdim - 1) {
            out.touching_discarded.push_back(orig);
            continue;
        }
        const auto key = std::make_pair(std::move(tv), std::move(tr));
        if (facet_of.count(key)) {
            out.touching_discarded.push_back(orig);
        } else {
            facet_of.emplace(key, orig);
            out.kept.push_back(orig);
        }
    }
    std::sort(out.kept.begin(), out.kept.end());
    std::sort(out.discarded.begin(), out.discarded.end());
    std::sort(out.touching_discarded.begin(), out.touching_discarded.end());
    return out;
}

/// Smoothness against the standard lattice: at each vertex the tight normals
/// must be primitive integer vectors forming a Z-basis (determinant +-1).
/// Only decidable when Q is Z^n as a module; throws SmoothCheckUnavailable
/// otherwise.
inline bool is_smooth(const Polyhedron& p, const Quasilattice& q) {
    const auto f = detail::poly_field(p);
    if (!equivalent(q, standard_lattice(p.dim_ambient, f)))
        throw SmoothCheckUnavailable("smoothness is only decidable for Q = Z^n");
    const auto r = enumerate(p);
    if (!r.pointed) return false;
    const int n = p.dim_ambient;
    for (const auto& tight : r.facet_incidence) {
        if (static_cast<int>(tight.size()) != n) return false; // not simple
        IMat b(n, n);
        for (int col = 0; col < n; ++col) {
            const auto& x = p.halfspaces[tight[col]].normal;
            Int g = 0;
            for (int i = 0; i < n; ++i) {
                if (!x[i].is_integer()) return false;
                b.at(i, col) = numerator(x[i].rational_value());
                g = gcd_int(g, b.at(i, col));
            }
            if (g != 1) return false; // not primitive
        }
        const Int d = int_det(b);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

} // namespace toriq
