#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toriq/polyhedron.hpp"

namespace toriq {

/// Input triple: a polyhedron with its chosen normals (the halfspace list)
/// and a quasilattice containing them.
struct DelzantTriple {
    Polyhedron polyhedron;
    Quasilattice quasilattice;
};

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    bool valid = false;
    std::vector<CheckItem> items;
    std::optional<bool> smooth; ///< present only when decidable (Q = Z^n)
};

/// Data of the construction: the projection pi (columns X_j), an exact basis
/// of its kernel, and the offset covector lambda.
struct ConstructionData {
    FMat pi;                     ///< n x d
    std::vector<FVec> ker_basis; ///< basis of ker(pi), vectors in R^d
    FVec lambda;                 ///< (lambda_1, ..., lambda_d)
};

/// Finite presentation of the chart group at a vertex: generators are the
/// classes of B^-1 Y_i modulo Z^n (nonzero representatives in [0,1)^n,
/// deduplicated and sorted). The group is finite iff every coordinate is
/// rational; its order is then the lattice index of Z^n in B^-1 Q.
struct DiscreteGroupPresentation {
    int rank_n = 0;
    std::vector<FVec> generators;
    bool is_trivial = false;
    bool is_finite = false;
    std::optional<Int> order; ///< set only when finite
};

/// Affine form  sum_h coeffs[h] * |z_h|^2 + constant  (> 0 on the chart).
struct ChartInequality {
    int j = 0; ///< original halfspace index of the non-tight facet
    FVec coeffs;
    FieldElem constant;
};

/// One chart of the atlas, indexed by a vertex. `tight` holds the n facet
/// indices at the vertex in ascending original order; chart coordinate h
/// corresponds to tight[h]. a_coeffs row r solves
/// X_{nontight[r]} = sum_h a_coeffs(r,h) X_{tight[h]} exactly.
struct VertexChart {
    FVec vertex;
    std::vector<int> tight;
    std::vector<int> nontight;
    FMat a_coeffs;
    std::vector<ChartInequality> inequalities;
    DiscreteGroupPresentation gamma;
};

/// Chart group of a tight normal basis B (columns) against Q, via the
/// identification of N cap [(S^1)^n x (1)^(d-n)] with (B^-1 Q) / Z^n.
inline DiscreteGroupPresentation gamma_group(const FMat& b, const Quasilattice& q) {
    const auto f = b.field();
    const int n = b.rows();
    const auto binv = inverse(b);
    if (!binv) throw SingularTightSet("tight normal matrix is singular");
    DiscreteGroupPresentation g;
    g.rank_n = n;
    bool all_rational = true;
    std::vector<FVec> reduced;
    for (const auto& y : q.generators) {
        FVec im = mat_vec(*binv, y);
        FVec red;
        red.reserve(n);
        bool zero = true;
        for (auto& e : im) {
            FieldElem r = e.mod1();
            if (!r.is_zero()) zero = false;
            if (!r.is_rational()) all_rational = false;
            red.push_back(std::move(r));
        }
        if (!zero) reduced.push_back(std::move(red));
    }
    std::sort(reduced.begin(), reduced.end(), numeric_lex_less);
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
    g.generators = std::move(reduced);
    g.is_trivial = g.generators.empty();
    g.is_finite = g.is_trivial || all_rational;
    if (g.is_finite) {
        if (g.is_trivial) {
            g.order = Int(1);
        } else {
            // index [L : Z^n] for L = Z^n + sum Z g_i, via HNF determinant
            Int m = 1;
            for (const auto& gen : g.generators)
                for (const auto& e : gen) m = lcm_int(m, denominator(e.rational_value()));
            IMat lat(n, n + static_cast<int>(g.generators.size()) * 1);
            for (int i = 0; i < n; ++i) lat.at(i, i) = m;
            for (std::size_t k = 0; k < g.generators.size(); ++k)
                for (int i = 0; i < n; ++i) {
                    const Rat scaled = g.generators[k][i].rational_value() * Rat(m);
                    lat.at(i, n + static_cast<int>(k)) = numerator(scaled);
                }
            const auto hn = hnf(lat);
            Int detH = 1;
            int c = 0;
            for (int r = 0; r < n && c < lat.cols; ++r)
                if (hn.h.at(r, c) != 0) {
                    detH *= hn.h.at(r, c);
                    ++c;
                }
            Int mn = 1;
            for (int i = 0; i < n; ++i) mn *= m;
            g.order = mn / detH;
        }
    }
    return g;
}

/// Itemized validation of the construction hypotheses. Never throws on bad
/// input; every failed hypothesis becomes a diagnostic item. Smoothness is
/// reported whenever Q is the standard lattice as a module.
inline ValidationReport validate(const DelzantTriple& t) {
    ValidationReport rep;
    auto add = [&rep](const std::string& name, bool ok, std::string detail = "") {
        rep.items.push_back({name, ok, std::move(detail)});
    };
    const int n = t.polyhedron.dim_ambient;
    add("ambient-dimension", n >= 1, n >= 1 ? "" : "ambient dimension must be >= 1");
    bool normals_ok = !t.polyhedron.halfspaces.empty();
    for (const auto& h : t.polyhedron.halfspaces)
        if (is_zero_vec(h.normal)) normals_ok = false;
    add("normals-nonzero", normals_ok, normals_ok ? "" : "every halfspace needs a nonzero normal");
    if (!normals_ok || n < 1) {
        rep.valid = false;
        return rep;
    }
    const auto f = detail::poly_field(t.polyhedron);

    bool lattice_ok = true;
    try {
        validate_quasilattice(t.quasilattice, f);
    } catch (const RankDeficient& e) {
        lattice_ok = false;
        add("quasilattice-spans", false, e.what());
    }
    if (lattice_ok) add("quasilattice-spans", true);

    std::optional<FaceReport> fr;
    try {
        fr = enumerate(t.polyhedron);
        add("nonempty", true);
    } catch (const EmptyPolyhedron& e) {
        add("nonempty", false, e.what());
    }
    if (fr) {
        add("full-dimensional", fr->dim == n,
            fr->dim == n ? "" : "dim = " + std::to_string(fr->dim) + ", expected " + std::to_string(n));
        add("pointed", fr->pointed, fr->pointed ? "" : "polyhedron contains a line");
        bool simple = fr->pointed;
        std::string sdetail;
        if (fr->pointed)
            for (const auto& tight : fr->facet_incidence)
                if (static_cast<int>(tight.size()) != n) {
                    simple = false;
                    sdetail = "a vertex lies on " + std::to_string(tight.size()) + " facets";
                    break;
                }
        add("simple", simple, sdetail);
    }
    if (lattice_ok) {
        bool member_ok = true;
        std::string detail;
        for (std::size_t j = 0; j < t.polyhedron.halfspaces.size(); ++j)
            if (!contains(t.quasilattice, t.polyhedron.halfspaces[j].normal)) {
                member_ok = false;
                detail += (detail.empty() ? "normal " : ", ") + std::to_string(j);
            }
        add("quasirational", member_ok, member_ok ? "" : detail + " not in Q");
    }
    rep.valid = true;
    for (const auto& item : rep.items) rep.valid = rep.valid && item.passed;
    if (rep.valid && equivalent(t.quasilattice, standard_lattice(n, f)))
        rep.smooth = is_smooth(t.polyhedron, t.quasilattice);
    return rep;
}

/// The projection pi, its kernel and the offset covector. Requires a valid
/// triple (throws InvalidTriple otherwise).
inline ConstructionData construction(const DelzantTriple& t) {
    const auto vr = validate(t);
    if (!vr.valid) throw InvalidTriple("construction requires a valid triple");
    const auto f = detail::poly_field(t.polyhedron);
    const int n = t.polyhedron.dim_ambient;
    const int d = static_cast<int>(t.polyhedron.halfspaces.size());
    ConstructionData c{FMat(n, d, f), {}, {}};
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < n; ++i) c.pi.at(i, j) = t.polyhedron.halfspaces[j].normal[i];
        c.lambda.push_back(t.polyhedron.halfspaces[j].offset);
    }
    c.ker_basis = nullspace(c.pi);
    return c;
}

/// One chart per vertex, in lexicographic vertex order. Requires a valid
/// triple.
inline std::vector<VertexChart> atlas(const DelzantTriple& t) {
    const auto vr = validate(t);
    if (!vr.valid) throw InvalidTriple("atlas requires a valid triple");
    const auto f = detail::poly_field(t.polyhedron);
    const int n = t.polyhedron.dim_ambient;
    const int d = static_cast<int>(t.polyhedron.halfspaces.size());
    const auto fr = enumerate(t.polyhedron);
    std::vector<VertexChart> charts;
    for (std::size_t k = 0; k < fr.vertices.size(); ++k) {
        VertexChart ch;
        ch.vertex = fr.vertices[k];
        ch.tight = fr.facet_incidence[k]; // ascending already
        for (int j = 0; j < d; ++j)
            if (std::find(ch.tight.begin(), ch.tight.end(), j) == ch.tight.end()) ch.nontight.push_back(j);
        std::vector<FVec> bcols;
        for (int j : ch.tight) bcols.push_back(t.polyhedron.halfspaces[j].normal);
        const FMat b = FMat::from_columns(bcols, n, f);
        ch.a_coeffs = FMat(static_cast<int>(ch.nontight.size()), n, f);
        for (std::size_t r = 0; r < ch.nontight.size(); ++r) {
            const int j = ch.nontight[r];
            const auto arow = solve(b, t.polyhedron.halfspaces[j].normal);
            if (!arow) throw SingularTightSet("tight normals do not span at a vertex");
            for (int h = 0; h < n; ++h) ch.a_coeffs.at(static_cast<int>(r), h) = (*arow)[h];
            ChartInequality iq;
            iq.j = j;
            iq.coeffs = *arow;
            iq.constant = -t.polyhedron.halfspaces[j].offset;
            for (int h = 0; h < n; ++h)
                iq.constant += (*arow)[h] * t.polyhedron.halfspaces[ch.tight[h]].offset;
            ch.inequalities.push_back(std::move(iq));
        }
        ch.gamma = gamma_group(b, t.quasilattice);
        charts.push_back(std::move(ch));
    }
    return charts;
}

} // namespace toriq
