#pragma once

// Linear and affine Lorentz isometries: membership in SO(2,1)^0, hyperbolic
// spectral data (lambda, x^-, x^+, x^0), builders from axis and eigenvalue,
// affine composition.

#include <optional>
#include <utility>

#include "margulis/core.hpp"

namespace margulis {

struct NotHyperbolic : Error {
    using Error::Error;
};

struct LambdaOutOfRange : Error {
    using Error::Error;
};

struct NotLorentzIsometry : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Mat3: just enough dense 3x3 arithmetic for this problem (row-major).
// ---------------------------------------------------------------------------

struct Mat3 {
    std::array<double, 9> m{};

    static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        return {{c0.x1, c1.x1, c2.x1, c0.x2, c1.x2, c2.x2, c0.x3, c1.x3, c2.x3}};
    }

    static Mat3 diag(double d0, double d1, double d2) {
        return {{d0, 0, 0, 0, d1, 0, 0, 0, d2}};
    }

    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

    Vec3 col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
            }
        }
        return r;
    }

    Vec3 operator*(const Vec3& v) const {
        return {(*this)(0, 0) * v.x1 + (*this)(0, 1) * v.x2 + (*this)(0, 2) * v.x3,
                (*this)(1, 0) * v.x1 + (*this)(1, 1) * v.x2 + (*this)(1, 2) * v.x3,
                (*this)(2, 0) * v.x1 + (*this)(2, 1) * v.x2 + (*this)(2, 2) * v.x3};
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const { return det3(col(0), col(1), col(2)); }

    Mat3 inverse() const {
        const double d = det();
        if (!(std::abs(d) > 1e-300)) throw Error("Mat3::inverse: singular matrix");
        const Vec3 c0 = col(0), c1 = col(1), c2 = col(2);
        // rows of the inverse are (c1 x c2)/d, (c2 x c0)/d, (c0 x c1)/d
        const auto cross = [](const Vec3& a, const Vec3& b) {
            return Vec3{a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3,
                        a.x1 * b.x2 - a.x2 * b.x1};
        };
        const Vec3 r0 = cross(c1, c2) / d;
        const Vec3 r1 = cross(c2, c0) / d;
        const Vec3 r2 = cross(c0, c1) / d;
        return {{r0.x1, r0.x2, r0.x3, r1.x1, r1.x2, r1.x3, r2.x1, r2.x2, r2.x3}};
    }

    double max_abs() const {
        double r = 0.0;
        for (double e : m) r = std::max(r, std::abs(e));
        return r;
    }

    bool finite() const {
        for (double e : m)
            if (!std::isfinite(e)) return false;
        return true;
    }
};

inline Mat3 lorentz_J() { return Mat3::diag(1.0, 1.0, -1.0); }

// ---------------------------------------------------------------------------
// LorentzIsometry: an element of SO(2,1)^0.
// ---------------------------------------------------------------------------

class LorentzIsometry {
  public:
    /// Validates m^T J m = J, det m = 1, and preservation of the future cone.
    explicit LorentzIsometry(const Mat3& m, double tol = default_tolerance()) : m_(m) {
        if (!m.finite()) throw NonFiniteInput("LorentzIsometry: non-finite entry");
        const Mat3 J = lorentz_J();
        const Mat3 g = m.transposed() * J * m;
        const double scale = std::max(1.0, m.max_abs() * m.max_abs());
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (std::abs(g(i, j) - J(i, j)) > tol * scale) {
                    throw NotLorentzIsometry("matrix does not preserve the form");
                }
            }
        }
        if (std::abs(m.det() - 1.0) > tol * std::max(1.0, scale * m.max_abs())) {
            throw NotLorentzIsometry("matrix determinant is not 1");
        }
        if (!((m * Vec3{0, 0, 1}).x3 > 0.0)) {
            throw NotLorentzIsometry("matrix does not preserve the future cone");
        }
    }

    static LorentzIsometry identity() { return LorentzIsometry(Mat3::identity(), Unchecked{}); }

    const Mat3& matrix() const { return m_; }

    Vec3 operator()(const Vec3& v) const { return m_ * v; }

    /// m^-1 = J m^T J, exact on the group.
    LorentzIsometry inverse() const {
        return LorentzIsometry(lorentz_J() * m_.transposed() * lorentz_J(), Unchecked{});
    }

    LorentzIsometry operator*(const LorentzIsometry& o) const {
        return LorentzIsometry(m_ * o.m_, Unchecked{});
    }

  private:
    struct Unchecked {};
    LorentzIsometry(const Mat3& m, Unchecked) : m_(m) {}
    Mat3 m_;
};

// ---------------------------------------------------------------------------
// Hyperbolic spectral data
// ---------------------------------------------------------------------------

/// Eigendata of a hyperbolic g: eigenvalues lambda < 1 < 1/lambda with
/// lightlike eigenvectors x^- (contracting) and x^+ (expanding), both
/// future-pointing and Euclidean-unit, and the unit-spacelike fixed axis
/// vector x^0 making (x^0, x^-, x^+) the null frame of x^0.
struct HyperbolicData {
    double lambda = 0.0;
    Vec3 xminus;
    Vec3 xplus;
    Vec3 xzero;
};

namespace detail {

/// Power iteration for the dominant eigendirection, renormalized to the
/// Euclidean-unit future-pointing representative each step.
inline Vec3 dominant_direction(const Mat3& m) {
    Vec3 v{1e-3, 2e-3, 1.0};
    v = euclidean_normalized(v);
    constexpr int kMaxIter = 10000;
    for (int it = 0; it < kMaxIter; ++it) {
        Vec3 w = m * v;
        const double n = euclidean_norm(w);
        if (!(n > 0.0) || !w.finite()) throw NotHyperbolic("power iteration diverged");
        w = w / n;
        if (w.x3 < 0.0) w = -w;
        const Vec3 diff = w - v;
        v = w;
        if (euclidean_norm(diff) < 1e-12) return v;
    }
    throw NotHyperbolic("power iteration did not converge");
}

}  // namespace detail

/// Extracts (lambda, x^-, x^+, x^0) from g in SO(2,1)^0. x^+ comes from power
/// iteration on g, x^- from power iteration on g^-1; lambda is the Rayleigh
/// quotient along x^-; x^0 is the Lorentz-normalized positive multiple of
/// x^- (x) x^+. Satisfies x^0(g^-1) = -x^0(g).
inline HyperbolicData spectral_data(const LorentzIsometry& g, double tol = default_tolerance()) {
    const Vec3 xplus = detail::dominant_direction(g.matrix());
    const Mat3 inv = g.inverse().matrix();
    const Vec3 xminus = detail::dominant_direction(inv);
    // Rayleigh quotient along x^-, evaluated on g^-1 where it is the dominant
    // eigenvalue 1/lambda; the contracting-side quotient on g itself loses the
    // small eigenvalue to rounding once the entries are large.
    const double lambda = 1.0 / euclidean_dot(inv * xminus, xminus);
    if (!(lambda > 0.0) || std::abs(lambda - 1.0) < 1e-6) {
        throw NotHyperbolic("eigenvalue too close to 1");
    }
    if (lambda > 1.0) throw NotHyperbolic("contracting eigenvalue exceeds 1");
    const Vec3 cross = lorentz_cross(xminus, xplus);
    const double q = lorentz_dot(cross, cross);
    if (!(q > tol)) throw NotHyperbolic("degenerate eigenvector pair");
    return {lambda, xminus, xplus, cross / std::sqrt(q)};
}

/// Builds B diag(1, lambda, 1/lambda) B^-1 with B = [axis x^- x^+] from the
/// null frame of the axis. The returned HyperbolicData matches the inputs.
inline std::pair<LorentzIsometry, HyperbolicData> make_hyperbolic(
    const Vec3& axis, double lambda, double tol = default_tolerance()) {
    if (!is_unit_spacelike(axis, tol)) {
        throw NotUnitSpacelike("make_hyperbolic: axis must be unit-spacelike");
    }
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw LambdaOutOfRange("make_hyperbolic: lambda must lie in (0,1)");
    }
    const NullFrame nf = null_frame(axis, tol);
    const Mat3 basis = Mat3::from_columns(nf.v, nf.xminus, nf.xplus);
    const Mat3 m = basis * Mat3::diag(1.0, lambda, 1.0 / lambda) * basis.inverse();
    return {LorentzIsometry(m, std::max(tol, 1e-12)),
            HyperbolicData{lambda, nf.xminus, nf.xplus, nf.v}};
}

// ---------------------------------------------------------------------------
// Affine isometries
// ---------------------------------------------------------------------------

/// x |-> linear(x) + trans. Composition (g,u)(h,v) = (gh, g v + u).
struct AffineIsometry {
    LorentzIsometry linear = LorentzIsometry::identity();
    Vec3 trans;

    static AffineIsometry identity() { return {LorentzIsometry::identity(), Vec3{}}; }

    Vec3 operator()(const Vec3& p) const { return linear(p) + trans; }

    AffineIsometry operator*(const AffineIsometry& o) const {
        return {linear * o.linear, linear(o.trans) + trans};
    }

    AffineIsometry inverse() const {
        const LorentzIsometry inv = linear.inverse();
        return {inv, -(inv(trans))};
    }
};

inline AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b) { return a * b; }

inline AffineIsometry invert(const AffineIsometry& a) { return a.inverse(); }

inline Vec3 apply(const AffineIsometry& a, const Vec3& p) { return a(p); }

}  // namespace margulis
