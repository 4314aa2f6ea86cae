#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "toriq/rational.hpp"

namespace toriq {

namespace polyq {

/// Dense univariate polynomial over Q, ascending coefficients.
using Poly = std::vector<Rat>;

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(Int(i)));
    trim(d);
    return d;
}

inline Rat eval(const Poly& p, const Rat& x) {
    Rat v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

/// Remainder of a by b (b nonzero).
inline Poly rem(Poly a, const Poly& b) {
    trim(a);
    while (!a.empty() && degree(a) >= degree(b)) {
        const Rat c = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        trim(a);
    }
    return a;
}

/// Quotient and remainder.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q(a.size(), Rat(0));
    while (degree(a) >= degree(b) && !a.empty()) {
        const Rat c = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

/// Horner evaluation over an interval [lo, hi]; returns an enclosure of
/// the value range (valid for any coefficient signs).
inline std::pair<Rat, Rat> eval_interval(const Poly& p, const Rat& lo, const Rat& hi) {
    Rat vl = 0, vh = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const Rat a = vl * lo, b = vl * hi, c = vh * lo, d = vh * hi;
        vl = std::min(std::min(a, b), std::min(c, d)) + *it;
        vh = std::max(std::max(a, b), std::max(c, d)) + *it;
    }
    return {vl, vh};
}

/// Sturm chain of p (p assumed nonconstant).
inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(p);
    chain.push_back(derivative(p));
    while (degree(chain.back()) >= 1) {
        Poly r = rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        const int s = sign(eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

/// Number of distinct real roots in the open interval (lo, hi);
/// requires p(lo) != 0 and p(hi) != 0.
inline int count_roots(const std::vector<Poly>& chain, const Rat& lo, const Rat& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

} // namespace polyq

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A real algebraic number field Q(alpha): alpha is the unique root of an
/// integer minimal polynomial inside a rational isolating interval. The
/// isolating interval is refined lazily (and cached) as sign queries demand;
/// refinement is internally synchronized, everything else is immutable.
class Field : public std::enable_shared_from_this<Field> {
public:
    /// Validates the spec (squarefree polynomial, interval isolating exactly
    /// one root with a sign change) and builds the power-basis reduction
    /// table. Throws InvalidField.
    static FieldPtr make(std::vector<Int> min_poly, Rat lo, Rat hi) {
        return FieldPtr(new Field(std::move(min_poly), std::move(lo), std::move(hi)));
    }

    /// Plain rationals as the degenerate degree-1 field Q(0).
    static FieldPtr rationals() { return make({Int(0), Int(1)}, Rat(-1), Rat(1)); }

    int degree() const { return deg_; }
    const std::vector<Int>& min_poly() const { return ipoly_; }
    std::pair<Rat, Rat> spec_interval() const { return {lo0_, hi0_}; }

    /// alpha^(degree+t) expressed in the power basis, t = 0 .. degree-2.
    const std::vector<std::vector<Rat>>& power_reductions() const { return red_; }

    /// Sign of c0 + c1*alpha + ... evaluated at the real root. Exact and
    /// total; refines the cached isolating interval as needed.
    int sign_of(const std::vector<Rat>& coords) const {
        int top = static_cast<int>(coords.size()) - 1;
        while (top >= 0 && coords[top] == 0) --top;
        if (top < 0) return 0;
        if (top == 0) return sign(coords[0]);
        polyq::Poly e(coords.begin(), coords.begin() + top + 1);
        std::lock_guard<std::mutex> lock(mu_);
        for (int iter = 0; iter < kMaxRefine; ++iter) {
            const auto [vl, vh] = polyq::eval_interval(e, lo_, hi_);
            if (sign(vl) > 0) return +1;
            if (sign(vh) < 0) return -1;
            refine_locked();
        }
        throw InvalidField("sign refinement did not converge; min_poly is likely reducible");
    }

    /// Rational approximation with |result - value| <= 2^(-bits) * max(1, |value|).
    Rat approx(const std::vector<Rat>& coords, unsigned bits) const {
        int top = static_cast<int>(coords.size()) - 1;
        while (top >= 0 && coords[top] == 0) --top;
        if (top < 0) return Rat(0);
        if (top == 0) return coords[0];
        polyq::Poly e(coords.begin(), coords.begin() + top + 1);
        const Rat eps = pow2_neg(bits + 1);
        std::lock_guard<std::mutex> lock(mu_);
        for (int iter = 0; iter < kMaxRefine; ++iter) {
            const auto [vl, vh] = polyq::eval_interval(e, lo_, hi_);
            const Rat width = vh - vl;
            Rat allowance = eps;
            if (sign(vl) > 0)
                allowance = std::max(allowance, Rat(eps * vl));
            else if (sign(vh) < 0)
                allowance = std::max(allowance, Rat(-eps * vh));
            if (width <= allowance) return (vl + vh) / 2;
            refine_locked();
        }
        throw InvalidField("interval refinement did not converge");
    }

private:
    static constexpr int kMaxRefine = 4096;

    Field(std::vector<Int> min_poly, Rat lo, Rat hi)
        : ipoly_(std::move(min_poly)), lo0_(lo), hi0_(hi), lo_(lo), hi_(std::move(hi)) {
        while (!ipoly_.empty() && ipoly_.back() == 0) ipoly_.pop_back();
        deg_ = static_cast<int>(ipoly_.size()) - 1;
        if (deg_ < 1) throw InvalidField("min_poly must have degree >= 1");
        if (!(lo_ < hi_)) throw InvalidField("isolating interval is empty");
        poly_.assign(ipoly_.size(), Rat(0));
        for (std::size_t i = 0; i < ipoly_.size(); ++i) poly_[i] = Rat(ipoly_[i]);
        if (polyq::eval(poly_, lo_) == 0 || polyq::eval(poly_, hi_) == 0)
            throw InvalidField("isolating interval endpoints must not be roots");
        const auto chain = polyq::sturm_chain(poly_);
        if (polyq::degree(chain.back()) > 0)
            throw InvalidField("min_poly must be squarefree");
        if (polyq::count_roots(chain, lo_, hi_) != 1)
            throw InvalidField("isolating interval must contain exactly one root");
        sign_lo_ = sign(polyq::eval(poly_, lo_));
        // A single simple root forces a sign change across the interval.
        if (sign_lo_ * sign(polyq::eval(poly_, hi_)) >= 0)
            throw InvalidField("no sign change across the isolating interval");
        build_reductions();
    }

    void build_reductions() {
        // alpha^deg = -(c0 + ... + c_{deg-1} alpha^{deg-1}) / c_deg, then shift.
        std::vector<Rat> base(deg_);
        for (int i = 0; i < deg_; ++i) base[i] = -poly_[i] / poly_[deg_];
        red_.push_back(base);
        for (int t = 1; t <= deg_ - 2; ++t) {
            const auto& prev = red_.back();
            std::vector<Rat> next(deg_, Rat(0));
            for (int i = 0; i < deg_ - 1; ++i) next[i + 1] = prev[i];
            const Rat carry = prev[deg_ - 1];
            if (carry != 0)
                for (int i = 0; i < deg_; ++i) next[i] += carry * base[i];
            red_.push_back(std::move(next));
        }
    }

    void refine_locked() const {
        const Rat mid = (lo_ + hi_) / 2;
        const int s = sign(polyq::eval(poly_, mid));
        if (s == 0) throw InvalidField("min_poly has a rational root inside the interval; reducible");
        if (s == sign_lo_)
            lo_ = mid;
        else
            hi_ = mid;
    }

    std::vector<Int> ipoly_;
    polyq::Poly poly_;
    int deg_ = 0;
    int sign_lo_ = 0;
    Rat lo0_, hi0_;
    mutable std::mutex mu_;
    mutable Rat lo_, hi_;
    std::vector<std::vector<Rat>> red_;
};

/// An element of the ambient field, stored in the power basis
/// 1, alpha, ..., alpha^(D-1). Value semantics; equality is coordinate
/// equality (the representation is unique).
class FieldElem {
public:
    FieldElem() = default;

    static FieldElem zero(const FieldPtr& f) { return FieldElem(f, std::vector<Rat>(f->degree(), Rat(0))); }

    static FieldElem rational(const FieldPtr& f, Rat q) {
        std::vector<Rat> c(f->degree(), Rat(0));
        c[0] = std::move(q);
        return FieldElem(f, std::move(c));
    }

    static FieldElem one(const FieldPtr& f) { return rational(f, Rat(1)); }

    /// The generator alpha itself (reduced if the field has degree 1).
    static FieldElem alpha(const FieldPtr& f) {
        if (f->degree() == 1) {
            std::vector<Rat> c(1);
            c[0] = f->power_reductions()[0][0];
            return FieldElem(f, std::move(c));
        }
        std::vector<Rat> c(f->degree(), Rat(0));
        c[1] = 1;
        return FieldElem(f, std::move(c));
    }

    /// From power-basis coordinates, size <= D (padded with zeros).
    static FieldElem from_coords(const FieldPtr& f, std::vector<Rat> c) {
        if (static_cast<int>(c.size()) > f->degree())
            throw InvalidField("coordinate vector longer than field degree");
        c.resize(f->degree(), Rat(0));
        return FieldElem(f, std::move(c));
    }

    const FieldPtr& field() const { return f_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// The rational value; only meaningful when is_rational().
    const Rat& rational_value() const { return c_[0]; }

    bool is_integer() const { return is_rational() && denominator(c_[0]) == 1; }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        a.check(b);
        std::vector<Rat> c(a.c_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
        return FieldElem(a.f_, std::move(c));
    }

    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        a.check(b);
        std::vector<Rat> c(a.c_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
        return FieldElem(a.f_, std::move(c));
    }

    FieldElem operator-() const {
        std::vector<Rat> c(c_);
        for (auto& x : c) x = -x;
        return FieldElem(f_, std::move(c));
    }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        a.check(b);
        const int d = a.f_->degree();
        if (d == 1) {
            std::vector<Rat> c{a.c_[0] * b.c_[0]};
            return FieldElem(a.f_, std::move(c));
        }
        std::vector<Rat> prod(2 * d - 1, Rat(0));
        for (int i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        const auto& red = a.f_->power_reductions();
        std::vector<Rat> c(prod.begin(), prod.begin() + d);
        for (int t = 0; t <= d - 2; ++t) {
            const Rat& carry = prod[d + t];
            if (carry == 0) continue;
            for (int i = 0; i < d; ++i) c[i] += carry * red[t][i];
        }
        return FieldElem(a.f_, std::move(c));
    }

    FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
    FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
    FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }

    /// Multiplicative inverse via extended Euclid in Q[x] modulo min_poly.
    FieldElem inverse() const {
        if (is_zero()) throw InvalidField("division by zero field element");
        const int d = f_->degree();
        if (d == 1) {
            std::vector<Rat> c{Rat(1) / c_[0]};
            return FieldElem(f_, std::move(c));
        }
        polyq::Poly p(f_->min_poly().size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = Rat(f_->min_poly()[i]);
        polyq::Poly e(c_);
        polyq::trim(e);
        // Invariants: r0 = s0*e mod p, r1 = s1*e mod p.
        polyq::Poly r0 = p, r1 = e;
        polyq::Poly s0{Rat(0)}, s1{Rat(1)};
        while (polyq::degree(r1) > 0) {
            auto [q, r] = polyq::divmod(r0, r1);
            polyq::Poly s2(std::max(s0.size(), q.size() + s1.size()), Rat(0));
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            polyq::trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty())
            throw InvalidField("element has no inverse; min_poly is reducible");
        std::vector<Rat> inv(d, Rat(0));
        for (std::size_t i = 0; i < s1.size() && i < static_cast<std::size_t>(d); ++i)
            inv[i] = s1[i] / r1[0];
        return FieldElem(f_, std::move(inv));
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    /// Exact sign of the real value.
    int sign() const { return f_->sign_of(c_); }

    /// Numeric comparison: sign of (*this - other).
    int compare(const FieldElem& other) const { return (*this - other).sign(); }

    /// Greatest integer <= value, exact.
    Int floor() const {
        if (is_rational()) return floor_rat(c_[0]);
        // second pass at a precision matching the magnitude keeps the exact
        // adjustment below to a step or two
        const Int mag = abs_int(floor_rat(f_->approx(c_, 8))) + 1;
        const unsigned bits = 8 + static_cast<unsigned>(boost::multiprecision::msb(mag)) + 4;
        Int m = floor_rat(f_->approx(c_, bits));
        while ((*this - rational(f_, Rat(m))).sign() < 0) --m;
        while ((*this - rational(f_, Rat(m + 1))).sign() >= 0) ++m;
        return m;
    }

    /// Representative of the class mod 1 inside [0, 1).
    FieldElem mod1() const { return *this - rational(f_, Rat(floor())); }

    /// Data ordering on coordinates (not the numeric order); suitable for
    /// map keys and deduplication only.
    friend bool coord_less(const FieldElem& a, const FieldElem& b) { return a.c_ < b.c_; }

private:
    FieldElem(FieldPtr f, std::vector<Rat> c) : f_(std::move(f)), c_(std::move(c)) {}

    void check(const FieldElem& other) const {
        if (f_ != other.f_) throw FieldMismatch("elements belong to different fields");
    }

    FieldPtr f_;
    std::vector<Rat> c_;
};

/// Sign of e as a real number: -1, 0 or +1.
inline int eval_sign(const FieldElem& e) { return e.sign(); }

/// Floating approximation with |result - e| <= 2^(1-precision) * max(1, |e|)
/// for precision up to the width of a double mantissa.
inline double to_float(const FieldElem& e, unsigned precision = 53) {
    const unsigned bits = std::min(precision + 3, 192u);
    return rat_to_double(e.field()->approx(e.coords(), bits));
}

} // namespace toriq
