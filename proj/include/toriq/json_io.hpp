#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toriq/numlab.hpp"
#include "toriq/reduction.hpp"

namespace toriq::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// field elements: degree-1 fields serialize as a single "p/q" string,
// higher degrees as arrays of power-basis coordinates ["p/q", ...].

inline Json to_json(const FieldElem& e) {
    if (e.field()->degree() == 1) return rat_to_string(e.coords()[0]);
    Json arr = Json::array();
    for (const auto& c : e.coords()) arr.push_back(rat_to_string(c));
    return arr;
}

inline Json to_json(const FVec& v) {
    Json arr = Json::array();
    for (const auto& e : v) arr.push_back(to_json(e));
    return arr;
}

inline Rat parse_rat_at(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw ParseError(path + ": expected a rational as \"p/q\" or integer");
}

inline FieldElem parse_elem(const Json& j, const FieldPtr& f, const std::string& path) {
    if (j.is_array()) {
        if (static_cast<int>(j.size()) > f->degree())
            throw ParseError(path + ": element has more coordinates than the field degree");
        std::vector<Rat> coords;
        for (std::size_t i = 0; i < j.size(); ++i)
            coords.push_back(parse_rat_at(j[i], path + "[" + std::to_string(i) + "]"));
        return FieldElem::from_coords(f, std::move(coords));
    }
    return FieldElem::rational(f, parse_rat_at(j, path));
}

inline FVec parse_fvec(const Json& j, const FieldPtr& f, int expect_len, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array of field elements");
    if (expect_len >= 0 && static_cast<int>(j.size()) != expect_len)
        throw ParseError(path + ": expected " + std::to_string(expect_len) + " entries, got " +
                         std::to_string(j.size()));
    FVec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_elem(j[i], f, path + "[" + std::to_string(i) + "]"));
    return v;
}

// ---------------------------------------------------------------------------
// field specification

inline FieldPtr parse_field(const Json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("min_poly") || !j.contains("interval"))
        throw ParseError(path + ": expected {\"min_poly\": [...], \"interval\": [lo, hi]}");
    std::vector<Int> poly;
    for (std::size_t i = 0; i < j["min_poly"].size(); ++i) {
        const auto& c = j["min_poly"][i];
        if (c.is_number_integer())
            poly.push_back(Int(c.get<long long>()));
        else if (c.is_string())
            poly.push_back(Int(c.get<std::string>()));
        else
            throw ParseError(path + ".min_poly[" + std::to_string(i) + "]: expected an integer");
    }
    const auto& iv = j["interval"];
    if (!iv.is_array() || iv.size() != 2) throw ParseError(path + ".interval: expected [lo, hi]");
    try {
        return Field::make(std::move(poly), parse_rat_at(iv[0], path + ".interval[0]"),
                           parse_rat_at(iv[1], path + ".interval[1]"));
    } catch (const InvalidField& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline Json to_json_field(const FieldPtr& f) {
    Json j;
    Json poly = Json::array();
    for (const auto& c : f->min_poly()) poly.push_back(c.str());
    j["min_poly"] = poly;
    const auto [lo, hi] = f->spec_interval();
    j["interval"] = Json::array({rat_to_string(lo), rat_to_string(hi)});
    return j;
}

// ---------------------------------------------------------------------------
// geometry

inline Json to_json(const Polyhedron& p) {
    Json j;
    j["dim"] = p.dim_ambient;
    Json hs = Json::array();
    for (const auto& h : p.halfspaces) {
        Json hj;
        hj["normal"] = to_json(h.normal);
        hj["offset"] = to_json(h.offset);
        hs.push_back(std::move(hj));
    }
    j["halfspaces"] = std::move(hs);
    return j;
}

inline Polyhedron parse_polyhedron(const Json& j, const FieldPtr& f, const std::string& path) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("halfspaces"))
        throw ParseError(path + ": expected {\"dim\": n, \"halfspaces\": [...]}");
    Polyhedron p;
    p.dim_ambient = j["dim"].get<int>();
    for (std::size_t i = 0; i < j["halfspaces"].size(); ++i) {
        const auto& hj = j["halfspaces"][i];
        const std::string hp = path + ".halfspaces[" + std::to_string(i) + "]";
        if (!hj.is_object() || !hj.contains("normal") || !hj.contains("offset"))
            throw ParseError(hp + ": expected {\"normal\": [...], \"offset\": q}");
        p.halfspaces.push_back({parse_fvec(hj["normal"], f, p.dim_ambient, hp + ".normal"),
                                parse_elem(hj["offset"], f, hp + ".offset")});
    }
    return p;
}

inline Json to_json(const Quasilattice& q) {
    Json j;
    Json gens = Json::array();
    for (const auto& g : q.generators) gens.push_back(to_json(g));
    j["generators"] = std::move(gens);
    return j;
}

inline Quasilattice parse_quasilattice(const Json& j, const FieldPtr& f, int n, const std::string& path) {
    if (!j.is_object() || !j.contains("generators"))
        throw ParseError(path + ": expected {\"generators\": [...]}");
    Quasilattice q;
    q.ambient_dim = n;
    for (std::size_t i = 0; i < j["generators"].size(); ++i)
        q.generators.push_back(
            parse_fvec(j["generators"][i], f, n, path + ".generators[" + std::to_string(i) + "]"));
    return q;
}

inline Json to_json(const DelzantTriple& t) {
    Json j;
    j["polyhedron"] = to_json(t.polyhedron);
    j["quasilattice"] = to_json(t.quasilattice);
    return j;
}

inline DelzantTriple parse_triple(const Json& j, const FieldPtr& f, const std::string& path) {
    if (!j.is_object() || !j.contains("polyhedron") || !j.contains("quasilattice"))
        throw ParseError(path + ": expected {\"polyhedron\": ..., \"quasilattice\": ...}");
    DelzantTriple t;
    t.polyhedron = parse_polyhedron(j["polyhedron"], f, path + ".polyhedron");
    t.quasilattice =
        parse_quasilattice(j["quasilattice"], f, t.polyhedron.dim_ambient, path + ".quasilattice");
    return t;
}

// ---------------------------------------------------------------------------
// documents

struct SubspaceRequest {
    std::vector<FVec> k_basis;
    std::optional<std::vector<FVec>> quotient_basis;
};

struct ReductionRequest {
    std::string triple;
    std::string subspace;
    std::optional<FVec> level; ///< coordinates against the duals of k_basis
    bool smooth = false;       ///< run the smooth-case variant with annotation
};

struct Document {
    FieldPtr field;
    std::map<std::string, DelzantTriple> triples;
    std::map<std::string, SubspaceRequest> subspaces;
    std::map<std::string, ReductionRequest> reductions;
};

inline Document parse_document(const Json& j) {
    if (!j.is_object() || !j.contains("field"))
        throw ParseError("$: document needs a \"field\" entry");
    Document doc;
    doc.field = parse_field(j["field"], "$.field");
    if (j.contains("triples"))
        for (const auto& [name, tj] : j["triples"].items())
            doc.triples.emplace(name, parse_triple(tj, doc.field, "$.triples." + name));
    if (j.contains("subspaces"))
        for (const auto& [name, sj] : j["subspaces"].items()) {
            const std::string path = "$.subspaces." + name;
            if (!sj.is_object() || !sj.contains("k_basis"))
                throw ParseError(path + ": expected {\"k_basis\": [...]}");
            SubspaceRequest req;
            for (std::size_t i = 0; i < sj["k_basis"].size(); ++i)
                req.k_basis.push_back(
                    parse_fvec(sj["k_basis"][i], doc.field, -1, path + ".k_basis[" + std::to_string(i) + "]"));
            if (sj.contains("quotient_basis")) {
                std::vector<FVec> qb;
                for (std::size_t i = 0; i < sj["quotient_basis"].size(); ++i)
                    qb.push_back(parse_fvec(sj["quotient_basis"][i], doc.field, -1,
                                            path + ".quotient_basis[" + std::to_string(i) + "]"));
                req.quotient_basis = std::move(qb);
            }
            doc.subspaces.emplace(name, std::move(req));
        }
    if (j.contains("reductions"))
        for (const auto& [name, rj] : j["reductions"].items()) {
            const std::string path = "$.reductions." + name;
            if (!rj.is_object() || !rj.contains("triple") || !rj.contains("subspace"))
                throw ParseError(path + ": expected {\"triple\": name, \"subspace\": name}");
            ReductionRequest req;
            req.triple = rj["triple"].get<std::string>();
            req.subspace = rj["subspace"].get<std::string>();
            if (!doc.triples.count(req.triple))
                throw ParseError(path + ".triple: no triple named '" + req.triple + "'");
            if (!doc.subspaces.count(req.subspace))
                throw ParseError(path + ".subspace: no subspace named '" + req.subspace + "'");
            if (rj.contains("level"))
                req.level = parse_fvec(rj["level"], doc.field, -1, path + ".level");
            if (rj.contains("smooth")) req.smooth = rj["smooth"].get<bool>();
            doc.reductions.emplace(name, std::move(req));
        }
    return doc;
}

// ---------------------------------------------------------------------------
// result serialization

inline Json to_json(const ValidationReport& r) {
    Json j;
    j["valid"] = r.valid;
    if (r.smooth) j["smooth"] = *r.smooth;
    Json items = Json::array();
    for (const auto& it : r.items) {
        Json ij;
        ij["check"] = it.name;
        ij["passed"] = it.passed;
        if (!it.detail.empty()) ij["detail"] = it.detail;
        items.push_back(std::move(ij));
    }
    j["checks"] = std::move(items);
    return j;
}

inline Json to_json(const DiscreteGroupPresentation& g) {
    Json j;
    Json gens = Json::array();
    for (const auto& v : g.generators) gens.push_back(to_json(v));
    j["generators"] = std::move(gens);
    j["is_trivial"] = g.is_trivial;
    j["is_finite"] = g.is_finite;
    if (g.order) j["order"] = g.order->str();
    return j;
}

inline Json to_json(const VertexChart& ch) {
    Json j;
    j["vertex"] = to_json(ch.vertex);
    j["tight"] = ch.tight;
    j["nontight"] = ch.nontight;
    Json rows = Json::array();
    for (int r = 0; r < ch.a_coeffs.rows(); ++r) rows.push_back(to_json(ch.a_coeffs.row(r)));
    j["a_coeffs"] = std::move(rows);
    Json iqs = Json::array();
    for (const auto& iq : ch.inequalities) {
        Json ij;
        ij["j"] = iq.j;
        ij["coeffs"] = to_json(iq.coeffs);
        ij["constant"] = to_json(iq.constant);
        iqs.push_back(std::move(ij));
    }
    j["inequalities"] = std::move(iqs);
    j["gamma"] = to_json(ch.gamma);
    return j;
}

inline Json to_json(const std::vector<VertexChart>& charts) {
    Json arr = Json::array();
    for (const auto& ch : charts) arr.push_back(to_json(ch));
    return arr;
}

inline Json to_json(const IsotropyReport& r) {
    Json j;
    j["passed"] = r.passed;
    j["dim_check"] = r.dim_ok;
    j["simple_check"] = r.simple_ok;
    j["uniqueness_check"] = r.uniqueness_ok;
    j["dim_found"] = r.dim_found;
    j["dim_expected"] = r.dim_expected;
    if (r.witness_vertex) j["witness_vertex"] = to_json(*r.witness_vertex);
    if (r.witness_halfspace) j["witness_halfspace"] = *r.witness_halfspace;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline Json to_json(const SubspaceData& s) {
    Json j;
    Json kb = Json::array();
    for (const auto& v : s.k_basis) kb.push_back(to_json(v));
    j["k_basis"] = std::move(kb);
    Json qb = Json::array();
    for (const auto& v : s.quotient_basis) qb.push_back(to_json(v));
    j["quotient_basis"] = std::move(qb);
    return j;
}

inline Json to_json(const ReductionResult& r, const SubspaceData& s) {
    Json j;
    j["reduced_triple"] = to_json(r.reduced_triple);
    j["kept"] = r.kept;
    j["discarded"] = r.discarded;
    Json sg;
    sg["class"] = r.subgroup.closed ? "Closed" : "NotClosed";
    Json wit = Json::array();
    for (const auto& w : r.subgroup.witness) wit.push_back(to_json(w));
    sg["witness_generators"] = std::move(wit);
    j["subgroup"] = std::move(sg);
    j["p_lattice_is_lattice"] = r.p_lattice_discrete;
    j["isotropy"] = to_json(r.isotropy);
    j["reduced_atlas"] = to_json(r.reduced_atlas);
    j["translation_lift"] = to_json(r.translation_lift);
    j["subspace"] = to_json(s);
    if (r.annotation) j["annotation"] = to_string(*r.annotation);
    return j;
}

inline Json to_json(const numlab::SampleReport& r) {
    Json j;
    j["seed"] = r.seed;
    j["tol"] = r.tol;
    j["requested"] = r.requested;
    j["accepted"] = r.accepted;
    j["max_abs_psi"] = r.max_abs_psi;
    j["max_violation"] = r.max_violation;
    j["max_zeroset_residual"] = r.max_zeroset_residual;
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        Json fj;
        fj["chart"] = f.chart_index;
        fj["sample"] = f.sample_index;
        fj["reason"] = f.reason;
        fj["value"] = f.value;
        fails.push_back(std::move(fj));
    }
    j["failures"] = std::move(fails);
    return j;
}

} // namespace toriq::io
