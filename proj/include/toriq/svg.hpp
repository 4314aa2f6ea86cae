#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "toriq/reduction.hpp"

namespace toriq::svg {

namespace detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct Box {
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;

    void grow(double x, double y) {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }

    void pad() {
        const double dx = std::max(xhi - xlo, 1.0) * 0.25;
        const double dy = std::max(yhi - ylo, 1.0) * 0.25;
        xlo -= dx;
        xhi += dx;
        ylo -= dy;
        yhi += dy;
    }
};

/// Fixed 640x640 canvas with margins; world y points up.
class Canvas {
public:
    Canvas(Box box) : box_(box) {
        const double w = box_.xhi - box_.xlo, h = box_.yhi - box_.ylo;
        scale_ = std::min((size_ - 2 * margin_) / w, (size_ - 2 * margin_) / h);
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
                 "viewBox=\"0 0 640 640\">\n";
        body_ += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    }

    double sx(double x) const { return margin_ + (x - box_.xlo) * scale_; }
    double sy(double y) const { return size_ - margin_ - (y - box_.ylo) * scale_; }

    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        body_ += "<line x1=\"" + num(sx(x1)) + "\" y1=\"" + num(sy(y1)) + "\" x2=\"" + num(sx(x2)) +
                 "\" y2=\"" + num(sy(y2)) + "\" " + style + "/>\n";
    }

    /// Clips the line through p with direction v to the world box and draws it.
    void clipped_line(double px, double py, double vx, double vy, const std::string& style) {
        double tmin = -1e18, tmax = 1e18;
        auto clip = [&](double p, double v, double lo, double hi) {
            if (std::abs(v) < 1e-12) return p >= lo && p <= hi;
            const double t1 = (lo - p) / v, t2 = (hi - p) / v;
            tmin = std::max(tmin, std::min(t1, t2));
            tmax = std::min(tmax, std::max(t1, t2));
            return true;
        };
        if (!clip(px, vx, box_.xlo, box_.xhi)) return;
        if (!clip(py, vy, box_.ylo, box_.yhi)) return;
        if (tmin >= tmax) return;
        line(px + tmin * vx, py + tmin * vy, px + tmax * vx, py + tmax * vy, style);
    }

    void dot(double x, double y, const std::string& fill) {
        body_ += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"4\" fill=\"" + fill +
                 "\"/>\n";
    }

    void label(double x, double y, const std::string& text) {
        body_ += "<text x=\"" + num(sx(x) + 6) + "\" y=\"" + num(sy(y) - 6) +
                 "\" font-size=\"13\" font-family=\"monospace\">" + text + "</text>\n";
    }

    std::string finish() && { return std::move(body_) + "</svg>\n"; }

private:
    Box box_;
    double size_ = 640, margin_ = 60, scale_ = 1;
    std::string body_;
};

inline const char* kSolid = "stroke=\"black\" stroke-width=\"1.5\"";
inline const char* kDashed = "stroke=\"gray\" stroke-width=\"1.2\" stroke-dasharray=\"7 5\"";
inline const char* kDotted = "stroke=\"gray\" stroke-width=\"1.2\" stroke-dasharray=\"2 4\"";
inline const char* kSubspace = "stroke=\"crimson\" stroke-width=\"1.5\" stroke-dasharray=\"10 4\"";
inline const char* kReduced = "stroke=\"royalblue\" stroke-width=\"4\"";

inline std::vector<std::vector<double>> float_vertices(const FaceReport& fr) {
    std::vector<std::vector<double>> out;
    for (const auto& v : fr.vertices) {
        std::vector<double> p;
        for (const auto& e : v) p.push_back(to_float(e));
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace detail

/// Deterministic picture of a pointed polyhedron of ambient dimension <= 2:
/// facet boundary lines, styled by an optional kept/discarded classification,
/// with vertices as dots. Throws DimensionUnsupported above dimension 2.
inline std::string render_polyhedron(const Polyhedron& p, const IrredundantResult* classes = nullptr) {
    const int n = p.dim_ambient;
    if (n < 1 || n > 2) throw DimensionUnsupported("rendering supports ambient dimension 1 or 2");
    const auto fr = enumerate(p);
    detail::Box box;
    const auto verts = detail::float_vertices(fr);
    bool first = true;
    for (const auto& v : verts) {
        const double x = v[0], y = n == 2 ? v[1] : 0.0;
        if (first) {
            box.xlo = box.xhi = x;
            box.ylo = box.yhi = y;
            first = false;
        }
        box.grow(x, y);
    }
    box.grow(0, 0);
    box.pad();
    detail::Canvas canvas(box);

    auto style_of = [&](int j) {
        if (!classes) return detail::kSolid;
        if (std::find(classes->kept.begin(), classes->kept.end(), j) != classes->kept.end())
            return detail::kSolid;
        if (std::find(classes->touching_discarded.begin(), classes->touching_discarded.end(), j) !=
            classes->touching_discarded.end())
            return detail::kDotted;
        return detail::kDashed;
    };

    for (std::size_t j = 0; j < p.halfspaces.size(); ++j) {
        const auto& h = p.halfspaces[j];
        if (is_zero_vec(h.normal)) continue;
        const double lam = to_float(h.offset);
        if (n == 1) {
            const double nx = to_float(h.normal[0]);
            canvas.line(lam / nx, -0.15, lam / nx, 0.15, style_of(static_cast<int>(j)));
        } else {
            const double nx = to_float(h.normal[0]), ny = to_float(h.normal[1]);
            const double nn = nx * nx + ny * ny;
            canvas.clipped_line(lam * nx / nn, lam * ny / nn, -ny, nx, style_of(static_cast<int>(j)));
        }
    }
    if (n == 1) canvas.line(box.xlo, 0, box.xhi, 0, detail::kDotted);
    for (const auto& v : verts) canvas.dot(v[0], n == 2 ? v[1] : 0.0, "black");
    return std::move(canvas).finish();
}

/// Reduction picture: the translated polyhedron with kept facets solid and
/// discarded ones dashed, the line ker j* overlaid, and the reduced
/// polyhedron pushed back through p* as a bold segment.
inline std::string render_reduction(const DelzantTriple& t_translated, const SubspaceData& s,
                                    const ReductionResult& red) {
    const int n = t_translated.polyhedron.dim_ambient;
    if (n != 2 || s.k_dim() != 1)
        throw DimensionUnsupported("reduction rendering needs n = 2 and dim k = 1");
    const auto fr = enumerate(t_translated.polyhedron);
    detail::Box box;
    const auto verts = detail::float_vertices(fr);
    bool first = true;
    for (const auto& v : verts) {
        if (first) {
            box.xlo = box.xhi = v[0];
            box.ylo = box.yhi = v[1];
            first = false;
        }
        box.grow(v[0], v[1]);
    }
    box.grow(0, 0);
    std::vector<std::vector<double>> pushed;
    for (const auto& ch : red.reduced_atlas) {
        const auto e = s.p_star(ch.vertex);
        pushed.push_back({to_float(e[0]), to_float(e[1])});
        box.grow(pushed.back()[0], pushed.back()[1]);
    }
    box.pad();
    detail::Canvas canvas(box);

    for (std::size_t j = 0; j < t_translated.polyhedron.halfspaces.size(); ++j) {
        const auto& h = t_translated.polyhedron.halfspaces[j];
        const double nx = to_float(h.normal[0]), ny = to_float(h.normal[1]);
        const double lam = to_float(h.offset);
        const double nn = nx * nx + ny * ny;
        const bool kept = std::find(red.kept.begin(), red.kept.end(), static_cast<int>(j)) != red.kept.end();
        canvas.clipped_line(lam * nx / nn, lam * ny / nn, -ny, nx,
                            kept ? detail::kSolid : detail::kDashed);
    }
    // ker j*: the moment values killed by the subgroup pairing
    const double kx = to_float(s.k_basis[0][0]), ky = to_float(s.k_basis[0][1]);
    canvas.clipped_line(0.0, 0.0, -ky, kx, detail::kSubspace);
    for (std::size_t i = 1; i < pushed.size(); ++i)
        canvas.line(pushed[i - 1][0], pushed[i - 1][1], pushed[i][0], pushed[i][1], detail::kReduced);
    for (const auto& pt : pushed) canvas.dot(pt[0], pt[1], "royalblue");
    for (const auto& v : verts) canvas.dot(v[0], v[1], "black");
    return std::move(canvas).finish();
}

} // namespace toriq::svg
