#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "toriq/reduction.hpp"

namespace toriq::numlab {

using Cx = std::complex<double>;

/// Deterministic RNG with a fixed algorithm: mt19937_64 outputs mapped to
/// [0,1) doubles by taking the top 53 bits. Identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform over the closed disc of the given radius.
    Cx disc(double radius) {
        const double r = radius * std::sqrt(u01());
        const double t = 2.0 * M_PI * u01();
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    std::mt19937_64 gen_;
};

/// Per-chart sampling stream: the chart seed is derived from the run seed by
/// a splitmix64 step on (seed, chart index); embedded in reports.
inline std::uint64_t chart_seed(std::uint64_t seed, int chart_index) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(chart_index + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

struct LevelSetPoint {
    std::vector<Cx> z;   ///< full d-tuple in original halfspace order
    int chart_index = 0;
    std::uint64_t seed = 0;
};

struct SampleFailure {
    int chart_index = 0;
    int sample_index = 0;
    std::string reason;
    double value = 0.0;
};

struct SampleReport {
    std::uint64_t seed = 0;
    double tol = 0.0;
    int requested = 0;
    int accepted = 0;
    double max_abs_psi = 0.0;       ///< worst level-set residual |Psi(z)|
    double max_violation = 0.0;     ///< worst signed violation of Delta-membership
    double max_zeroset_residual = 0.0;
    std::vector<SampleFailure> failures;
};

namespace detail {

inline std::vector<double> fvec_to_doubles(const FVec& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(to_float(e));
    return out;
}

/// Solves a dense square system with partial pivoting; returns false when
/// the pivot collapses numerically.
inline bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int pr = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a[i][c]) > std::abs(a[pr][c])) pr = i;
        if (std::abs(a[pr][c]) < 1e-14) return false;
        std::swap(a[pr], a[c]);
        std::swap(b[pr], b[c]);
        for (int i = c + 1; i < n; ++i) {
            const double f = a[i][c] / a[c][c];
            if (f == 0.0) continue;
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return true;
}

/// Floatified construction data of a triple.
struct NumData {
    int n = 0, d = 0;
    std::vector<std::vector<double>> normals; ///< d rows of length n
    std::vector<double> lambda;
    std::vector<std::vector<double>> ker;     ///< basis of ker(pi)
};

inline NumData numify(const DelzantTriple& t) {
    NumData nd;
    nd.n = t.polyhedron.dim_ambient;
    nd.d = static_cast<int>(t.polyhedron.halfspaces.size());
    for (const auto& h : t.polyhedron.halfspaces) {
        nd.normals.push_back(fvec_to_doubles(h.normal));
        nd.lambda.push_back(to_float(h.offset));
    }
    const auto cons = construction(t);
    for (const auto& kv : cons.ker_basis) nd.ker.push_back(fvec_to_doubles(kv));
    return nd;
}

} // namespace detail

/// J(z) = (|z_1|^2 + lambda_1, ..., |z_d|^2 + lambda_d).
inline std::vector<double> j_map(const detail::NumData& nd, const std::vector<Cx>& z) {
    std::vector<double> out(nd.d);
    for (int j = 0; j < nd.d; ++j) out[j] = std::norm(z[j]) + nd.lambda[j];
    return out;
}

/// Psi(z): J(z) paired against the kernel basis. Zero on the level set.
inline std::vector<double> psi(const detail::NumData& nd, const std::vector<Cx>& z) {
    const auto jz = j_map(nd, z);
    std::vector<double> out;
    out.reserve(nd.ker.size());
    for (const auto& kv : nd.ker) {
        double s = 0.0;
        for (int j = 0; j < nd.d; ++j) s += jz[j] * kv[j];
        out.push_back(s);
    }
    return out;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Rejection-samples the chart polydisc and completes each accepted point to
/// the level set with the square-root formula. Deterministic in the seed.
/// Throws ChartStarved when the acceptance rate falls below 1e-3.
inline std::vector<LevelSetPoint> sample_level_set(const DelzantTriple& t, const std::vector<VertexChart>& charts,
                                                   int chart_index, int count, double radius_cap,
                                                   std::uint64_t seed) {
    const auto nd = detail::numify(t);
    const auto& ch = charts[chart_index];
    const int nc = static_cast<int>(ch.tight.size());
    const int nt = static_cast<int>(ch.nontight.size());
    std::vector<std::vector<double>> arows;
    for (int r = 0; r < nt; ++r) {
        std::vector<double> row(nc);
        for (int h = 0; h < nc; ++h) row[h] = to_float(ch.a_coeffs.at(r, h));
        arows.push_back(std::move(row));
    }
    Rng rng(seed);
    std::vector<LevelSetPoint> points;
    long attempts = 0;
    while (static_cast<int>(points.size()) < count) {
        ++attempts;
        if (attempts >= 1000 && static_cast<double>(points.size()) < 1e-3 * static_cast<double>(attempts))
            throw ChartStarved("chart acceptance rate below 1e-3; adjust radius_cap");
        std::vector<Cx> zc(nc);
        for (int h = 0; h < nc; ++h) zc[h] = rng.disc(radius_cap);
        bool ok = true;
        std::vector<double> q(nt);
        for (int r = 0; r < nt && ok; ++r) {
            double s = -nd.lambda[ch.nontight[r]];
            for (int h = 0; h < nc; ++h) s += arows[r][h] * (std::norm(zc[h]) + nd.lambda[ch.tight[h]]);
            q[r] = s;
            ok = s > 0.0;
        }
        if (!ok) continue;
        LevelSetPoint pt;
        pt.chart_index = chart_index;
        pt.seed = seed;
        pt.z.assign(nd.d, Cx(0.0, 0.0));
        for (int h = 0; h < nc; ++h) pt.z[ch.tight[h]] = zc[h];
        for (int r = 0; r < nt; ++r) pt.z[ch.nontight[r]] = Cx(std::sqrt(q[r]), 0.0);
        points.push_back(std::move(pt));
    }
    return points;
}

/// Moment value of a level-set point: least-squares solve of pi^* mu = J(z).
/// Throws ResidualTooLarge when the solve residual exceeds 10*tol.
inline std::vector<double> moment_map(const DelzantTriple& t, const std::vector<Cx>& z, double tol = 1e-9) {
    const auto nd = detail::numify(t);
    const auto jz = j_map(nd, z);
    // normal equations: (M^T M) mu = M^T J with M rows = normals
    std::vector<std::vector<double>> a(nd.n, std::vector<double>(nd.n, 0.0));
    std::vector<double> b(nd.n, 0.0);
    for (int j = 0; j < nd.d; ++j)
        for (int r = 0; r < nd.n; ++r) {
            b[r] += nd.normals[j][r] * jz[j];
            for (int c = 0; c < nd.n; ++c) a[r][c] += nd.normals[j][r] * nd.normals[j][c];
        }
    std::vector<double> mu;
    if (!detail::solve_dense(a, b, mu)) throw ResidualTooLarge("moment solve is singular");
    double res = 0.0;
    for (int j = 0; j < nd.d; ++j) {
        double s = -jz[j];
        for (int r = 0; r < nd.n; ++r) s += nd.normals[j][r] * mu[r];
        res = std::max(res, std::abs(s));
    }
    if (res > 10.0 * tol) throw ResidualTooLarge("moment residual " + std::to_string(res));
    return mu;
}

/// Moment of the subgroup action: pairings of the moment value against the
/// k-basis.
inline std::vector<double> k_moment(const DelzantTriple& t, const SubspaceData& s, const std::vector<Cx>& z,
                                    double tol = 1e-9) {
    const auto mu = moment_map(t, z, tol);
    std::vector<double> out;
    for (const auto& kb : s.k_basis) {
        const auto kf = detail::fvec_to_doubles(kb);
        double v = 0.0;
        for (std::size_t i = 0; i < kf.size(); ++i) v += kf[i] * mu[i];
        out.push_back(v);
    }
    return out;
}

namespace detail {

/// Exact a-rows of the discarded halfspaces against the tight basis of a
/// reduced chart, floatified: p(X_j) = sum_h a_jh p(X_tight_h).
inline std::vector<std::vector<double>> discarded_a_rows(const DelzantTriple& t, const SubspaceData& s,
                                                         const ReductionResult& red, int chart_index) {
    const auto f = toriq::detail::poly_field(t.polyhedron);
    const auto& ch = red.reduced_atlas[chart_index];
    std::vector<FVec> bcols;
    for (int tpos : ch.tight)
        bcols.push_back(red.reduced_triple.polyhedron.halfspaces[tpos].normal);
    const FMat b = FMat::from_columns(bcols, red.reduced_triple.polyhedron.dim_ambient, f);
    std::vector<std::vector<double>> rows;
    for (int j : red.discarded) {
        const auto arow = solve(b, s.p(t.polyhedron.halfspaces[j].normal));
        if (!arow) throw SingularTightSet("reduced tight basis is singular");
        rows.push_back(fvec_to_doubles(*arow));
    }
    return rows;
}

/// Translated offsets lambda_j - <lift, X_j> as doubles.
inline std::vector<double> translated_lambda(const DelzantTriple& t, const ReductionResult& red) {
    std::vector<double> out;
    for (const auto& h : t.polyhedron.halfspaces)
        out.push_back(to_float(h.offset - dot(red.translation_lift, h.normal)));
    return out;
}

} // namespace detail

struct NormalForm {
    std::vector<Cx> z;          ///< the rotated full tuple
    std::vector<Cx> truncation; ///< its kept coordinates, ascending kept order
};

/// Rotates a point of the reduced level set by an element of the k-action so
/// that every discarded coordinate lands on [0, inf); moduli are preserved
/// and the trailing imaginary parts are set to zero exactly.
/// Throws ZeroCoordinate when a discarded coordinate is too small for its
/// phase to be defined.
inline NormalForm normal_form(const DelzantTriple& t, const SubspaceData& s, const ReductionResult& red,
                              const std::vector<Cx>& z, double tol = 1e-9, int chart_index = 0) {
    {
        const auto km = k_moment(t, s, z, tol);
        if (max_abs(km) > 10.0 * tol)
            throw ResidualTooLarge("point is not on the reduced level set");
    }
    const auto arows = detail::discarded_a_rows(t, s, red, chart_index);
    const auto& ch = red.reduced_atlas[chart_index];
    const int d = static_cast<int>(t.polyhedron.halfspaces.size());
    std::vector<double> phase(d, 0.0);
    for (std::size_t r = 0; r < red.discarded.size(); ++r) {
        const int j = red.discarded[r];
        if (std::abs(z[j]) <= tol)
            throw ZeroCoordinate("discarded coordinate " + std::to_string(j) + " vanishes; phase undefined");
        const double rj = -std::arg(z[j]) / (2.0 * M_PI);
        phase[j] += rj;
        for (std::size_t h = 0; h < ch.tight.size(); ++h)
            phase[red.kept[ch.tight[h]]] -= rj * arows[r][h];
    }
    NormalForm nf;
    nf.z.resize(d);
    for (int i = 0; i < d; ++i) {
        const double a = 2.0 * M_PI * phase[i];
        nf.z[i] = z[i] * Cx(std::cos(a), std::sin(a));
    }
    for (int j : red.discarded) nf.z[j] = Cx(std::abs(nf.z[j]), 0.0);
    for (int i : red.kept) nf.truncation.push_back(nf.z[i]);
    return nf;
}

namespace detail {

/// Integer-combination phase candidates over a generator set, L1-bounded;
/// every word has length m (the zero word alone when there are no generators).
inline void phase_words(const std::vector<std::vector<double>>& gens, int m, int bound, std::size_t cap,
                        std::vector<std::vector<double>>& out) {
    std::vector<double> cur(m, 0.0);
    std::vector<std::vector<double>> acc{cur};
    std::function<void(std::size_t, int)> rec = [&](std::size_t gi, int budget) {
        if (acc.size() >= cap) return;
        if (gi == gens.size()) return;
        rec(gi + 1, budget);
        std::vector<double> saved = cur;
        for (int step = 1; step <= budget; ++step) {
            for (int sgn : {+1, -1}) {
                for (int i = 0; i < m; ++i) cur[i] = saved[i] + sgn * step * gens[gi][i];
                acc.push_back(cur);
                if (acc.size() >= cap) { cur = saved; return; }
                rec(gi + 1, budget - step);
            }
        }
        cur = saved;
    };
    rec(0, bound);
    out = std::move(acc);
}

} // namespace detail

/// Surjectivity/injectivity probe of the identification between the reduced
/// orbit space and the reduced Delzant space: lifts a reduced level-set point
/// by the square-root formula, scrambles the discarded phases with a seeded
/// k-action, recovers the normal form, and returns the distance between the
/// original and recovered reduced coordinates after optimal alignment over
/// chart-group phase words (L1 word length <= 8, a documented search bound).
inline double g_round_trip(const DelzantTriple& t, const SubspaceData& s, const ReductionResult& red,
                           const std::vector<Cx>& z_reduced, std::uint64_t seed, double tol = 1e-9,
                           int chart_index = 0) {
    const auto arows = detail::discarded_a_rows(t, s, red, chart_index);
    const auto lam = detail::translated_lambda(t, red);
    const auto& ch = red.reduced_atlas[chart_index];
    const int d = static_cast<int>(t.polyhedron.halfspaces.size());
    std::vector<Cx> z(d, Cx(0.0, 0.0));
    for (std::size_t i = 0; i < red.kept.size(); ++i) z[red.kept[i]] = z_reduced[i];
    for (std::size_t r = 0; r < red.discarded.size(); ++r) {
        const int j = red.discarded[r];
        double q = -lam[j];
        for (std::size_t h = 0; h < ch.tight.size(); ++h) {
            const int orig = red.kept[ch.tight[h]];
            q += arows[r][h] * (std::norm(z[orig]) + lam[orig]);
        }
        z[j] = Cx(std::sqrt(std::max(q, 0.0)), 0.0);
    }
    // scramble with a seeded element of the k-action (R_j phase directions)
    Rng rng(seed);
    std::vector<double> phase(d, 0.0);
    for (std::size_t r = 0; r < red.discarded.size(); ++r) {
        const double rj = rng.u01();
        phase[red.discarded[r]] += rj;
        for (std::size_t h = 0; h < ch.tight.size(); ++h)
            phase[red.kept[ch.tight[h]]] -= rj * arows[r][h];
    }
    for (int i = 0; i < d; ++i) {
        const double a = 2.0 * M_PI * phase[i];
        z[i] *= Cx(std::cos(a), std::sin(a));
    }

    const auto nf = normal_form(t, s, red, z, tol, chart_index);

    // alignment phases: chart group generators plus the discarded a-rows
    // (the elements reachable by whole phase wraps)
    std::vector<std::vector<double>> gens;
    for (const auto& g : ch.gamma.generators) gens.push_back(detail::fvec_to_doubles(g));
    for (const auto& row : arows) {
        std::vector<double> neg(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) neg[i] = -row[i];
        gens.push_back(std::move(neg));
    }
    std::vector<std::vector<double>> words;
    detail::phase_words(gens, static_cast<int>(ch.tight.size()), 8, 20000, words);

    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : words) {
        std::vector<Cx> cand = nf.truncation;
        for (std::size_t h = 0; h < ch.tight.size(); ++h) {
            const double a = 2.0 * M_PI * w[h];
            cand[ch.tight[h]] *= Cx(std::cos(a), std::sin(a));
        }
        double dist = 0.0;
        for (std::size_t i = 0; i < cand.size(); ++i) dist = std::max(dist, std::abs(cand[i] - z_reduced[i]));
        best = std::min(best, dist);
    }
    return best;
}

/// Max residual of the level-set identity |z_j|^2 = sum_h a_jh(|z_h|^2 +
/// lambda_h) - lambda_j over the non-tight indices of the originating chart.
inline double zeroset_residual(const DelzantTriple& t, const std::vector<VertexChart>& charts,
                               const LevelSetPoint& pt) {
    const auto nd = detail::numify(t);
    const auto& ch = charts[pt.chart_index];
    double worst = 0.0;
    for (std::size_t r = 0; r < ch.nontight.size(); ++r) {
        const int j = ch.nontight[r];
        double s = -nd.lambda[j];
        for (std::size_t h = 0; h < ch.tight.size(); ++h)
            s += to_float(ch.a_coeffs.at(static_cast<int>(r), static_cast<int>(h))) *
                 (std::norm(pt.z[ch.tight[h]]) + nd.lambda[ch.tight[h]]);
        worst = std::max(worst, std::abs(std::norm(pt.z[j]) - s));
    }
    return worst;
}

/// Samples every chart `count` times and verifies the level-set identities
/// and Delta-membership of the moment values; failures are itemized.
inline SampleReport run_sample_report(const DelzantTriple& t, const std::vector<VertexChart>& charts,
                                      int count, double radius_cap, std::uint64_t seed, double tol = 1e-9) {
    const auto nd = detail::numify(t);
    SampleReport rep;
    rep.seed = seed;
    rep.tol = tol;
    rep.requested = count * static_cast<int>(charts.size());
    for (int c = 0; c < static_cast<int>(charts.size()); ++c) {
        const auto pts = sample_level_set(t, charts, c, count, radius_cap, chart_seed(seed, c));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            ++rep.accepted;
            const double apsi = max_abs(psi(nd, pts[i].z));
            rep.max_abs_psi = std::max(rep.max_abs_psi, apsi);
            if (apsi > tol)
                rep.failures.push_back({c, static_cast<int>(i), "level-set residual", apsi});
            const double zr = zeroset_residual(t, charts, pts[i]);
            rep.max_zeroset_residual = std::max(rep.max_zeroset_residual, zr);
            if (zr > tol)
                rep.failures.push_back({c, static_cast<int>(i), "zero-set identity residual", zr});
            try {
                const auto mu = moment_map(t, pts[i].z, tol);
                double viol = -std::numeric_limits<double>::infinity();
                for (int j = 0; j < nd.d; ++j) {
                    double margin = -nd.lambda[j];
                    for (int r = 0; r < nd.n; ++r) margin += nd.normals[j][r] * mu[r];
                    viol = std::max(viol, -margin);
                }
                rep.max_violation = std::max(rep.max_violation, viol);
                if (viol > tol)
                    rep.failures.push_back({c, static_cast<int>(i), "moment image outside Delta", viol});
            } catch (const ResidualTooLarge& e) {
                rep.failures.push_back({c, static_cast<int>(i), e.what(), 0.0});
            }
        }
    }
    return rep;
}

} // namespace toriq::numlab
