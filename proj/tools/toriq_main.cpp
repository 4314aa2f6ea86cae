// toriq: exact modelling of polyhedral triples over a real algebraic number
// field, with nonrational symplectic reduction and a numerical lab.
//
// Exit codes: 0 success, 1 validation failure, 2 isotropy violation,
// 3 I/O or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "toriq/toriq.hpp"

namespace {

using toriq::io::Json;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw toriq::ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw toriq::ParseError(std::string("malformed JSON: ") + e.what());
    }
}

toriq::io::Document load_document(const std::string& path) {
    return toriq::io::parse_document(load_json(path));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw toriq::ParseError("cannot write '" + out_path + "'");
    out << text;
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

const toriq::DelzantTriple& pick_triple(const toriq::io::Document& doc, const std::string& name) {
    const auto it = doc.triples.find(name);
    if (it == doc.triples.end()) throw toriq::ParseError("no triple named '" + name + "'");
    return it->second;
}

toriq::SubspaceData pick_subspace(const toriq::io::Document& doc, const std::string& name, int n) {
    const auto it = doc.subspaces.find(name);
    if (it == doc.subspaces.end()) throw toriq::ParseError("no subspace named '" + name + "'");
    return toriq::SubspaceData::make(n, it->second.k_basis, it->second.quotient_basis, doc.field);
}

toriq::FVec parse_level(const std::string& text, const toriq::FieldPtr& f, int k) {
    if (text.empty()) return toriq::FVec(k, toriq::FieldElem::zero(f));
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw toriq::ParseError(std::string("--level: malformed JSON: ") + e.what());
    }
    return toriq::io::parse_fvec(j, f, k, "--level");
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("TORIQ_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

int run(int argc, char** argv) {
    CLI::App app{"exact toric triples, reduction and a numerical lab"};
    app.require_subcommand(1);

    std::string path, triple_name, subspace_name, reduction_name, level_text, out_path, what;
    bool smooth = false;
    int count = 1000;
    std::uint64_t seed = 1;
    double tol = 1e-9, radius = 4.0;

    auto* c_validate = app.add_subcommand("validate", "validate the triples of a document");
    c_validate->add_option("path", path)->required();
    c_validate->add_option("--triple", triple_name, "validate a single triple");
    c_validate->add_option("--out", out_path, "write the machine-readable report here");

    auto* c_reduce = app.add_subcommand("reduce", "reduce a triple by a subspace");
    c_reduce->add_option("path", path)->required();
    c_reduce->add_option("--triple", triple_name);
    c_reduce->add_option("--subspace", subspace_name);
    c_reduce->add_option("--reduction", reduction_name, "use a named reduction request");
    c_reduce->add_option("--level", level_text, "level as a JSON array against the k-basis duals");
    c_reduce->add_flag("--smooth", smooth, "smooth-case reduction with kind annotation");
    c_reduce->add_option("--out", out_path);

    auto* c_atlas = app.add_subcommand("atlas", "charts and chart groups of a triple");
    c_atlas->add_option("path", path)->required();
    c_atlas->add_option("--triple", triple_name)->required();
    c_atlas->add_option("--out", out_path);

    auto* c_classify = app.add_subcommand("classify", "closedness of the subgroup cut out by a subspace");
    c_classify->add_option("path", path)->required();
    c_classify->add_option("--triple", triple_name)->required();
    c_classify->add_option("--subspace", subspace_name)->required();
    c_classify->add_option("--out", out_path);

    auto* c_sample = app.add_subcommand("sample", "seeded level-set sampling report");
    c_sample->add_option("path", path)->required();
    c_sample->add_option("--triple", triple_name)->required();
    c_sample->add_option("--count", count, "samples per chart");
    c_sample->add_option("--seed", seed, "RNG seed (TORIQ_SEED overrides)");
    c_sample->add_option("--tol", tol);
    c_sample->add_option("--radius", radius, "polydisc radius cap");
    c_sample->add_option("--out", out_path);

    auto* c_render = app.add_subcommand("render", "SVG picture of a polyhedron or reduction");
    c_render->add_option("path", path)->required();
    c_render->add_option("--what", what)->required()->check(CLI::IsMember({"polyhedron", "reduction"}));
    c_render->add_option("--triple", triple_name)->required();
    c_render->add_option("--subspace", subspace_name);
    c_render->add_option("--level", level_text);
    c_render->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    if (c_validate->parsed()) {
        const auto doc = load_document(path);
        Json report = Json::object();
        bool all_ok = true;
        for (const auto& [name, triple] : doc.triples) {
            if (!triple_name.empty() && name != triple_name) continue;
            const auto vr = toriq::validate(triple);
            report[name] = toriq::io::to_json(vr);
            all_ok = all_ok && vr.valid;
            std::string line = name + ": " + (vr.valid ? "valid" : "invalid");
            if (vr.smooth) line += *vr.smooth ? ", smooth" : ", not smooth";
            std::cout << line << "\n";
            for (const auto& item : vr.items)
                if (!item.passed) std::cout << "  failed " << item.name << ": " << item.detail << "\n";
        }
        if (!triple_name.empty() && !doc.triples.count(triple_name))
            throw toriq::ParseError("no triple named '" + triple_name + "'");
        if (!out_path.empty()) emit_json(report, out_path);
        return all_ok ? 0 : 1;
    }

    if (c_reduce->parsed()) {
        const auto doc = load_document(path);
        toriq::FVec level;
        if (!reduction_name.empty()) {
            const auto it = doc.reductions.find(reduction_name);
            if (it == doc.reductions.end())
                throw toriq::ParseError("no reduction request named '" + reduction_name + "'");
            triple_name = it->second.triple;
            subspace_name = it->second.subspace;
            smooth = smooth || it->second.smooth;
            if (it->second.level) level = *it->second.level;
        }
        if (triple_name.empty() || subspace_name.empty())
            throw toriq::ParseError("reduce needs --reduction or both --triple and --subspace");
        const auto& triple = pick_triple(doc, triple_name);
        const int n = triple.polyhedron.dim_ambient;
        const auto sub = pick_subspace(doc, subspace_name, n);
        if (level.empty()) level = parse_level(level_text, doc.field, sub.k_dim());
        try {
            const auto red = smooth ? toriq::reduce_smooth(triple, sub, level)
                                    : toriq::reduce(triple, sub, level);
            emit_json(toriq::io::to_json(red, sub), out_path);
            if (!out_path.empty()) {
                std::cout << "reduced " << triple_name << " by " << subspace_name << ": kept "
                          << red.kept.size() << " halfspaces, subgroup "
                          << (red.subgroup.closed ? "Closed" : "NotClosed");
                if (red.annotation) std::cout << ", " << to_string(*red.annotation);
                std::cout << "\n";
            }
            return 0;
        } catch (const toriq::IsotropyViolation& e) {
            std::cerr << "isotropy violation: " << e.report.detail << "\n";
            emit_json(toriq::io::to_json(e.report), out_path);
            return 2;
        }
    }

    if (c_atlas->parsed()) {
        const auto doc = load_document(path);
        const auto charts = toriq::atlas(pick_triple(doc, triple_name));
        emit_json(toriq::io::to_json(charts), out_path);
        return 0;
    }

    if (c_classify->parsed()) {
        const auto doc = load_document(path);
        const auto& triple = pick_triple(doc, triple_name);
        const auto sub = pick_subspace(doc, subspace_name, triple.polyhedron.dim_ambient);
        const auto cls = toriq::classify_subgroup(triple.quasilattice, sub.k_basis);
        Json j;
        j["class"] = cls.closed ? "Closed" : "NotClosed";
        Json wit = Json::array();
        for (const auto& w : cls.witness) wit.push_back(toriq::io::to_json(w));
        j["witness_generators"] = std::move(wit);
        emit_json(j, out_path);
        return 0;
    }

    if (c_sample->parsed()) {
        const auto doc = load_document(path);
        const auto& triple = pick_triple(doc, triple_name);
        const auto charts = toriq::atlas(triple);
        const auto rep =
            toriq::numlab::run_sample_report(triple, charts, count, radius, effective_seed(seed), tol);
        emit_json(toriq::io::to_json(rep), out_path);
        return rep.failures.empty() ? 0 : 1;
    }

    if (c_render->parsed()) {
        const auto doc = load_document(path);
        const auto& triple = pick_triple(doc, triple_name);
        if (what == "polyhedron") {
            const auto irr = toriq::irredundant(triple.polyhedron);
            emit(toriq::svg::render_polyhedron(triple.polyhedron, &irr), out_path);
            return 0;
        }
        if (subspace_name.empty())
            throw toriq::ParseError("render --what reduction needs --subspace");
        const auto sub = pick_subspace(doc, subspace_name, triple.polyhedron.dim_ambient);
        const auto level = parse_level(level_text, doc.field, sub.k_dim());
        const auto red = toriq::reduce(triple, sub, level);
        const auto [translated, lift] = toriq::translate_to_level(triple, sub, level);
        emit(toriq::svg::render_reduction(translated, sub, red), out_path);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const toriq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const toriq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
