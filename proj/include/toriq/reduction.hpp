#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toriq/delzant.hpp"

namespace toriq {

/// A nontrivial proper subspace k of R^n together with a chosen complement.
/// The quotient map p sends v to its coordinates along the classes of the
/// quotient basis; p_star embeds (R^n/k)* as ker j* in (R^n)*.
struct SubspaceData {
    std::vector<FVec> k_basis;        ///< k independent vectors spanning k
    std::vector<FVec> quotient_basis; ///< n-k vectors, classes form a basis of R^n/k
    FMat p_matrix;                    ///< (n-k) x n, the quotient map
    FMat k_coords;                    ///< k x n, coordinates along k in the chosen basis

    int ambient_dim() const { return p_matrix.cols(); }
    int k_dim() const { return static_cast<int>(k_basis.size()); }

    FVec p(const FVec& v) const { return mat_vec(p_matrix, v); }
    FVec p_star(const FVec& nu) const { return mat_vec(p_matrix.transpose(), nu); }

    /// Builds the maps; auto-selects the quotient basis greedily from the
    /// standard basis when none is supplied. Throws InvalidSubspace.
    static SubspaceData make(int n, std::vector<FVec> k_basis,
                             std::optional<std::vector<FVec>> quotient_basis, const FieldPtr& f) {
        SubspaceData s;
        const int k = static_cast<int>(k_basis.size());
        if (k < 1 || k >= n)
            throw InvalidSubspace("k must satisfy 1 <= dim k < n");
        if (rank(FMat::from_rows(k_basis, n, f)) != k)
            throw InvalidSubspace("k_basis vectors are dependent");
        s.k_basis = std::move(k_basis);
        if (quotient_basis) {
            s.quotient_basis = std::move(*quotient_basis);
            if (static_cast<int>(s.quotient_basis.size()) != n - k)
                throw InvalidSubspace("quotient_basis must have n - k vectors");
        } else {
            for (int i = 0; i < n && static_cast<int>(s.quotient_basis.size()) < n - k; ++i) {
                FVec e = zero_vec(n, f);
                e[i] = FieldElem::one(f);
                std::vector<FVec> trial = s.quotient_basis;
                trial.push_back(e);
                for (const auto& kb : s.k_basis) trial.push_back(kb);
                if (rank(FMat::from_rows(trial, n, f)) == static_cast<int>(trial.size()))
                    s.quotient_basis.push_back(std::move(e));
            }
        }
        std::vector<FVec> cols = s.quotient_basis;
        for (const auto& kb : s.k_basis) cols.push_back(kb);
        const FMat t = FMat::from_columns(cols, n, f);
        const auto tinv = inverse(t);
        if (!tinv)
            throw InvalidSubspace("quotient_basis classes do not complement k");
        s.p_matrix = FMat(n - k, n, f);
        s.k_coords = FMat(k, n, f);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n - k; ++i) s.p_matrix.at(i, j) = tinv->at(i, j);
            for (int i = 0; i < k; ++i) s.k_coords.at(i, j) = tinv->at(n - k + i, j);
        }
        return s;
    }
};

/// Outcome of the exact isotropy criterion: the reduced polyhedron must have
/// dimension n-k, be simple, and be contained in the interior of every
/// non-facet halfspace (each facet having a unique definer).
struct IsotropyReport {
    bool passed = false;
    bool dim_ok = false;
    bool simple_ok = false;
    bool uniqueness_ok = false;
    int dim_found = 0;
    int dim_expected = 0;
    std::optional<FVec> witness_vertex;    ///< a vertex violating simplicity/uniqueness
    std::optional<int> witness_halfspace;  ///< offending original halfspace index
    std::string detail;
};

/// Error carrying the full isotropy report; thrown instead of emitting
/// unproven reduced data.
class IsotropyViolation : public Error {
public:
    IsotropyViolation(IsotropyReport rep, const std::string& msg)
        : Error(msg), report(std::move(rep)) {}
    IsotropyReport report;
};

enum class ReducedKind { Manifold, Orbifold, Quasifold };

inline const char* to_string(ReducedKind k) {
    switch (k) {
        case ReducedKind::Manifold: return "manifold";
        case ReducedKind::Orbifold: return "orbifold";
        default: return "quasifold";
    }
}

/// The reduced triple with its atlas and all certification data.
struct ReductionResult {
    DelzantTriple reduced_triple;       ///< in quotient coordinates
    std::vector<int> kept;              ///< original halfspace indices, ascending
    std::vector<int> discarded;         ///< strictly redundant after projection
    SubgroupClass subgroup;             ///< closedness of K with witness generators
    bool p_lattice_discrete = false;    ///< is_lattice(p(Q))
    IsotropyReport isotropy;
    std::vector<VertexChart> reduced_atlas;
    FVec translation_lift;              ///< the mu_0 used to move the level to 0
    std::optional<ReducedKind> annotation; ///< set by reduce_smooth
};

/// Moves the level xi (coordinates against the duals of k_basis) to 0 by
/// translating the polyhedron by the canonical lift mu_0 vanishing on the
/// quotient basis: offsets become lambda_j - <mu_0, X_j>.
inline std::pair<DelzantTriple, FVec> translate_to_level(const DelzantTriple& t, const SubspaceData& s,
                                                         const FVec& xi) {
    const auto f = detail::poly_field(t.polyhedron);
    const int n = t.polyhedron.dim_ambient;
    FVec lift = zero_vec(n, f);
    for (int i = 0; i < s.k_dim(); ++i)
        for (int j = 0; j < n; ++j) lift[j] += xi[i] * s.k_coords.at(i, j);
    DelzantTriple out = t;
    for (auto& h : out.polyhedron.halfspaces) h.offset -= dot(lift, h.normal);
    return {out, lift};
}

/// The raw reduced system: all d halfspaces with normals p(X_j) in quotient
/// coordinates (zero normals possible). Throws EmptyReduction when the level
/// misses the moment image.
inline Polyhedron reduced_polyhedron(const DelzantTriple& t_at_zero, const SubspaceData& s) {
    Polyhedron out;
    out.dim_ambient = s.ambient_dim() - s.k_dim();
    for (const auto& h : t_at_zero.polyhedron.halfspaces)
        out.halfspaces.push_back({s.p(h.normal), h.offset});
    try {
        (void)enumerate(out);
    } catch (const EmptyPolyhedron&) {
        throw EmptyReduction("the level set is empty: Delta does not meet ker j*");
    }
    return out;
}

/// Exact decidable form of the free-action criterion on the raw reduced
/// system. Simplicity is counted against facet definers so that duplicated
/// or touching halfspaces surface in the uniqueness clause, with witnesses.
inline IsotropyReport isotropy_check(const Polyhedron& raw, int n, int k) {
    IsotropyReport rep;
    rep.dim_expected = n - k;
    const auto fr = enumerate(raw);
    const auto irr = irredundant(raw);
    rep.dim_found = fr.dim;
    rep.dim_ok = (fr.dim == n - k);

    std::vector<bool> kept_flag(raw.halfspaces.size(), false);
    for (int j : irr.kept) kept_flag[j] = true;
    rep.simple_ok = true;
    for (std::size_t v = 0; v < fr.vertices.size(); ++v) {
        // simplicity of the reduced polyhedron itself: facet definers only
        int kept_tight = 0;
        int offender = -1;
        for (int j : fr.facet_incidence[v])
            if (kept_flag[j] && ++kept_tight > fr.dim) offender = j;
        if (kept_tight != fr.dim && rep.simple_ok) {
            rep.simple_ok = false;
            rep.witness_vertex = fr.vertices[v];
            if (offender >= 0) rep.witness_halfspace = offender;
            rep.detail = "a vertex lies on " + std::to_string(kept_tight) + " facets, expected " +
                         std::to_string(fr.dim);
        }
    }

    rep.uniqueness_ok = irr.touching_discarded.empty();
    if (!rep.uniqueness_ok) {
        const int j = irr.touching_discarded.front();
        rep.witness_halfspace = j;
        if (is_zero_vec(raw.halfspaces[j].normal)) {
            rep.detail = "projected normal " + std::to_string(j) + " vanishes with offset 0 (touches everywhere)";
        } else {
            rep.detail = "halfspace " + std::to_string(j) + " touches the reduced polyhedron without defining a facet";
            for (std::size_t v = 0; v < fr.vertices.size(); ++v) {
                const auto& inc = fr.facet_incidence[v];
                if (std::find(inc.begin(), inc.end(), j) != inc.end()) {
                    rep.witness_vertex = fr.vertices[v];
                    break;
                }
            }
        }
    }
    rep.passed = rep.dim_ok && rep.simple_ok && rep.uniqueness_ok;
    return rep;
}

/// Full reduction pipeline: translate, slice, check isotropy, and on success
/// assemble the reduced triple (kept projected halfspaces, p(Q)) with its
/// atlas and the subgroup classification. Throws InvalidTriple,
/// EmptyReduction or IsotropyViolation.
inline ReductionResult reduce(const DelzantTriple& t, const SubspaceData& s, const FVec& xi) {
    const auto vr = validate(t);
    if (!vr.valid) throw InvalidTriple("reduce requires a valid triple");
    const int n = t.polyhedron.dim_ambient;
    const int k = s.k_dim();

    auto [t0, lift] = translate_to_level(t, s, xi);
    const Polyhedron raw = reduced_polyhedron(t0, s);
    IsotropyReport rep = isotropy_check(raw, n, k);
    if (!rep.passed)
        throw IsotropyViolation(rep, "the induced action has positive-dimensional isotropy: " + rep.detail);

    const auto irr = irredundant(raw);
    ReductionResult out;
    out.kept = irr.kept;
    out.discarded = irr.discarded;
    out.isotropy = std::move(rep);
    out.translation_lift = lift;

    out.reduced_triple.polyhedron.dim_ambient = n - k;
    for (int j : out.kept) out.reduced_triple.polyhedron.halfspaces.push_back(raw.halfspaces[j]);
    out.reduced_triple.quasilattice = image(t.quasilattice, s.p_matrix);
    out.subgroup = classify_subgroup(t.quasilattice, s.k_basis);
    out.p_lattice_discrete = is_lattice(out.reduced_triple.quasilattice);

    const auto reduced_vr = validate(out.reduced_triple);
    if (!reduced_vr.valid)
        throw Error("internal error: reduced triple failed validation after a passing isotropy check");
    out.reduced_atlas = atlas(out.reduced_triple);
    return out;
}

/// Reduction of a smooth triple over Z^n, annotated with the reduced space
/// kind: closed subgroup with trivial chart groups gives a manifold, finite
/// nontrivial ones an orbifold, and a non-closed subgroup a quasifold proper.
inline ReductionResult reduce_smooth(const DelzantTriple& t, const SubspaceData& s, const FVec& xi) {
    const auto vr = validate(t);
    if (!vr.valid || !vr.smooth.has_value() || !*vr.smooth)
        throw InvalidTriple("reduce_smooth requires a smooth triple over Z^n");
    ReductionResult out = reduce(t, s, xi);
    if (!out.subgroup.closed) {
        out.annotation = ReducedKind::Quasifold;
    } else {
        bool all_trivial = true;
        for (const auto& ch : out.reduced_atlas) all_trivial = all_trivial && ch.gamma.is_trivial;
        out.annotation = all_trivial ? ReducedKind::Manifold : ReducedKind::Orbifold;
    }
    return out;
}

} // namespace toriq
