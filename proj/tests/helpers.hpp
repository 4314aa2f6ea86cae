#pragma once

#include <string>
#include <vector>

#include "toriq/toriq.hpp"

namespace th {

using namespace toriq;

inline FieldPtr sqrt2_field() { return Field::make({Int(-2), Int(0), Int(1)}, Rat(1), Rat(2)); }
inline FieldPtr rat_field() { return Field::rationals(); }

/// Rational element from "p/q" text or integer.
inline FieldElem fe(const FieldPtr& f, const std::string& s) {
    return FieldElem::rational(f, parse_rat(s));
}
inline FieldElem fe(const FieldPtr& f, long v) { return FieldElem::rational(f, Rat(v)); }

inline FVec fvs(const FieldPtr& f, const std::vector<std::string>& parts) {
    FVec v;
    for (const auto& s : parts) v.push_back(fe(f, s));
    return v;
}
inline FVec fv(const FieldPtr& f, const std::vector<long>& parts) {
    FVec v;
    for (long s : parts) v.push_back(fe(f, s));
    return v;
}

inline Polyhedron poly(int n, std::vector<HalfSpace> hs) { return {n, std::move(hs)}; }

/// [-1, inf) x [0, 1] with its standard normals.
inline DelzantTriple strip_triple(const FieldPtr& f) {
    Polyhedron p = poly(2, {{fv(f, {1L, 0L}), fe(f, -1L)},
                            {fv(f, {0L, 1L}), fe(f, 0L)},
                            {fv(f, {0L, -1L}), fe(f, -1L)}});
    return {p, standard_lattice(2, f)};
}

/// [0,1] with normals {1, -1} and quasilattice Z + alpha Z.
inline DelzantTriple quasisphere_triple(const FieldPtr& f) {
    Polyhedron p = poly(1, {{fv(f, {1L}), fe(f, 0L)}, {fv(f, {-1L}), fe(f, -1L)}});
    Quasilattice q;
    q.ambient_dim = 1;
    q.generators = {FVec{FieldElem::one(f)}, FVec{FieldElem::alpha(f)}};
    return {p, q};
}

/// The standard simplex triple {x >= 0, y >= 0, -x-y >= -1} over Z^2.
inline DelzantTriple cp2_triple(const FieldPtr& f) {
    Polyhedron p = poly(2, {{fv(f, {1L, 0L}), fe(f, 0L)},
                            {fv(f, {0L, 1L}), fe(f, 0L)},
                            {fv(f, {-1L, -1L}), fe(f, -1L)}});
    return {p, standard_lattice(2, f)};
}

/// Unit square over Z^2.
inline DelzantTriple square_triple(const FieldPtr& f) {
    Polyhedron p = poly(2, {{fv(f, {1L, 0L}), fe(f, 0L)},
                            {fv(f, {0L, 1L}), fe(f, 0L)},
                            {fv(f, {-1L, 0L}), fe(f, -1L)},
                            {fv(f, {0L, -1L}), fe(f, -1L)}});
    return {p, standard_lattice(2, f)};
}

inline bool vec_eq(const FVec& a, const FVec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

/// Simple deterministic generator for random exact data in tests.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : x_(seed ? seed : 1) {}

    std::uint64_t next() {
        x_ ^= x_ << 13;
        x_ ^= x_ >> 7;
        x_ ^= x_ << 17;
        return x_;
    }

    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rat rat(long span, long den_max) {
        const long d = range(1, den_max);
        return Rat(range(-span, span), d);
    }

private:
    std::uint64_t x_;
};

} // namespace th
