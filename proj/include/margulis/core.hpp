#pragma once

// Lorentzian linear algebra on R^{2,1}: the bilinear form
//   <x,y> = x1*y1 + x2*y2 - x3*y3,
// causal classification, the Lorentz cross product, the orientation
// predicate PO, and null frames of unit-spacelike vectors.

#include <array>
#include <atomic>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace margulis {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A strict-sign predicate was asked to decide a value inside the tolerance
/// band around zero. Near-degenerate input, not a bug in the caller.
struct IndeterminateSign : Error {
    using Error::Error;
};

struct NotUnitSpacelike : Error {
    using Error::Error;
};

struct NonFiniteInput : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Tolerance policy: one global relative tolerance, configurable. Strict-sign
// predicates demand a margin of tol*scale and refuse to guess inside the band.
// ---------------------------------------------------------------------------

namespace detail {
inline std::atomic<double>& tolerance_slot() {
    static std::atomic<double> tol{1e-9};
    return tol;
}
}  // namespace detail

inline double default_tolerance() {
    return detail::tolerance_slot().load(std::memory_order_relaxed);
}

inline void set_default_tolerance(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw Error("tolerance must be positive and finite");
    }
    detail::tolerance_slot().store(tol, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// Vec3
// ---------------------------------------------------------------------------

struct Vec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double a, double b, double c) : x1(a), x2(b), x3(c) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    constexpr Vec3 operator-() const { return {-x1, -x2, -x3}; }
    constexpr Vec3 operator*(double s) const { return {x1 * s, x2 * s, x3 * s}; }
    constexpr Vec3 operator/(double s) const { return {x1 / s, x2 / s, x3 / s}; }
    constexpr bool operator==(const Vec3& o) const = default;

    constexpr bool is_zero() const { return x1 == 0.0 && x2 == 0.0 && x3 == 0.0; }
    bool finite() const { return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline void require_finite(const Vec3& v, const char* where) {
    if (!v.finite()) throw NonFiniteInput(std::string(where) + ": non-finite component");
}

inline double euclidean_dot(const Vec3& a, const Vec3& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

inline double euclidean_norm(const Vec3& v) { return std::sqrt(euclidean_dot(v, v)); }

/// The signature (2,1) form <x,y> = x1*y1 + x2*y2 - x3*y3.
inline double lorentz_dot(const Vec3& x, const Vec3& y) {
    require_finite(x, "lorentz_dot");
    require_finite(y, "lorentz_dot");
    return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3;
}

/// det[u v w] with u, v, w as columns.
inline double det3(const Vec3& u, const Vec3& v, const Vec3& w) {
    return u.x1 * (v.x2 * w.x3 - v.x3 * w.x2)
         - u.x2 * (v.x1 * w.x3 - v.x3 * w.x1)
         + u.x3 * (v.x1 * w.x2 - v.x2 * w.x1);
}

/// Lorentz cross product: the unique bilinear map with
/// <u, v (x) w> = det[u v w] for all u. Equals J*(v x w) with J = diag(1,1,-1).
inline Vec3 lorentz_cross(const Vec3& v, const Vec3& w) {
    require_finite(v, "lorentz_cross");
    require_finite(w, "lorentz_cross");
    return {v.x2 * w.x3 - v.x3 * w.x2,
            v.x3 * w.x1 - v.x1 * w.x3,
            -(v.x1 * w.x2 - v.x2 * w.x1)};
}

// ---------------------------------------------------------------------------
// Causal classification
// ---------------------------------------------------------------------------

enum class CausalClass { Spacelike, Timelike, Lightlike, Zero };

inline const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "spacelike";
        case CausalClass::Timelike: return "timelike";
        case CausalClass::Lightlike: return "lightlike";
        case CausalClass::Zero: return "zero";
    }
    return "?";
}

/// Sign of <x,x>, with the band |<x,x>| <= tol*|x|_E^2 mapped to Lightlike.
inline CausalClass classify(const Vec3& x, double tol = default_tolerance()) {
    require_finite(x, "classify");
    if (x.is_zero()) return CausalClass::Zero;
    const double q = lorentz_dot(x, x);
    const double scale = euclidean_dot(x, x);
    if (std::abs(q) <= tol * scale) return CausalClass::Lightlike;
    return q > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

/// Lightlike or timelike with positive third coordinate.
inline bool is_future_pointing(const Vec3& x, double tol = default_tolerance()) {
    const CausalClass c = classify(x, tol);
    return (c == CausalClass::Lightlike || c == CausalClass::Timelike) && x.x3 > 0.0;
}

/// +1 or -1 when |value| > tol*scale, otherwise refuses.
inline int strict_sign(double value, double scale, double tol = default_tolerance()) {
    if (!(std::abs(value) > tol * std::max(scale, 1e-300))) {
        throw IndeterminateSign("sign indeterminate: |" + std::to_string(value) +
                                "| within tolerance band " + std::to_string(tol * scale));
    }
    return value > 0.0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Orientation predicate PO
// ---------------------------------------------------------------------------

/// PO(v_1..v_k): det[v_i1 v_i2 v_i3] > 0 for every i1 < i2 < i3.
/// Throws IndeterminateSign when any triple determinant falls inside the
/// tolerance band.
inline bool positively_oriented(std::span<const Vec3> vs, double tol = default_tolerance()) {
    if (vs.size() < 3) throw Error("positively_oriented: need at least 3 vectors");
    for (const Vec3& v : vs) require_finite(v, "positively_oriented");
    bool any_negative = false;
    bool any_band = false;
    for (std::size_t i = 0; i + 2 < vs.size(); ++i) {
        for (std::size_t j = i + 1; j + 1 < vs.size(); ++j) {
            for (std::size_t k = j + 1; k < vs.size(); ++k) {
                const double d = det3(vs[i], vs[j], vs[k]);
                const double scale =
                    euclidean_norm(vs[i]) * euclidean_norm(vs[j]) * euclidean_norm(vs[k]);
                if (std::abs(d) <= tol * std::max(scale, 1e-300)) {
                    any_band = true;
                } else if (d < 0.0) {
                    any_negative = true;
                }
            }
        }
    }
    if (any_band) throw IndeterminateSign("positively_oriented: triple determinant in band");
    return !any_negative;
}

inline bool positively_oriented(const Vec3& x, const Vec3& y, const Vec3& z,
                                double tol = default_tolerance()) {
    const std::array<Vec3, 3> vs{x, y, z};
    return positively_oriented(std::span<const Vec3>(vs), tol);
}

// ---------------------------------------------------------------------------
// Normalization helpers
// ---------------------------------------------------------------------------

inline Vec3 euclidean_normalized(const Vec3& v) {
    const double n = euclidean_norm(v);
    if (!(n > 0.0)) throw Error("euclidean_normalized: zero vector");
    return v / n;
}

/// Rescales a spacelike vector to <v,v> = 1.
inline Vec3 lorentz_normalized_spacelike(const Vec3& v, double tol = default_tolerance()) {
    if (classify(v, tol) != CausalClass::Spacelike) {
        throw NotUnitSpacelike("lorentz_normalized_spacelike: vector is not spacelike");
    }
    return v / std::sqrt(lorentz_dot(v, v));
}

inline bool is_unit_spacelike(const Vec3& v, double tol = default_tolerance()) {
    const double q = lorentz_dot(v, v);
    const double scale = std::max(1.0, euclidean_dot(v, v));
    return std::abs(q - 1.0) <= tol * scale;
}

// ---------------------------------------------------------------------------
// Null frames
// ---------------------------------------------------------------------------

/// The null frame (v, x^-, x^+) of a unit-spacelike v: x^+- are the two
/// future-pointing Euclidean-unit lightlike vectors in v's Lorentz-perpendicular
/// plane, ordered so that det[v x^- x^+] > 0.
struct NullFrame {
    Vec3 v;
    Vec3 xminus;
    Vec3 xplus;
};

inline NullFrame null_frame(const Vec3& v, double tol = default_tolerance()) {
    require_finite(v, "null_frame");
    if (!is_unit_spacelike(v, tol)) {
        throw NotUnitSpacelike("null_frame: <v,v> must equal 1");
    }
    // Lightlike rays through (cos t, sin t, 1); <ray, v> = 0 becomes
    // A cos t + B sin t = C with A = v1, B = v2, C = v3. Since A^2+B^2 = 1+C^2
    // there are always two solutions t = phi +- delta.
    const double a = v.x1;
    const double b = v.x2;
    const double c = v.x3;
    const double r = std::hypot(a, b);
    const double phi = std::atan2(b, a);
    const double delta = std::acos(std::clamp(c / r, -1.0, 1.0));
    const auto ray = [](double t) {
        const double inv = 1.0 / std::sqrt(2.0);
        return Vec3{std::cos(t) * inv, std::sin(t) * inv, inv};
    };
    const Vec3 p = ray(phi + delta);
    const Vec3 q = ray(phi - delta);
    const double d = det3(v, p, q);
    const int s = strict_sign(d, euclidean_norm(v), tol);
    if (s > 0) return {v, p, q};
    return {v, q, p};
}

}  // namespace margulis
