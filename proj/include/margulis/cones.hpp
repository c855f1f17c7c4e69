#pragma once

// Feasibility geometry: the cone C(U^-, U^+) spanned by four explicit extreme
// vectors, the half-space H_n, the intervals U^- and U_n^+, the cancellation
// arc A bounded by x^+(gh) and g(x^+(h)), and seed-vector selection.

#include "margulis/schottky.hpp"

namespace margulis {

struct SeedInfeasible : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// ConeSpec
// ---------------------------------------------------------------------------

/// C(U^-, U^+) for disjoint closed non-trivial conical intervals: the set of
/// v with <v, u> > 0 for every unit-spacelike u whose null frame has
/// x^-(u) in U^- and x^+(u) in U^+. It equals both
///   - the positive span of x^+(U^-), x^-(U^+), -x^+(U^+), -x^-(U^-), and
///   - the intersection of the four half-spaces <v, x^i(U^-) (x) x^j(U^+)> > 0.
class ConeSpec {
  public:
    static ConeSpec make(const ConicalInterval& uminus, const ConicalInterval& uplus,
                         double tol = default_tolerance()) {
        if (!(disjoint_margin(uminus, uplus) > 0.0)) {
            throw Error("ConeSpec: intervals must be disjoint");
        }
        ConeSpec c(uminus, uplus);
        c.extremes_ = {uminus.x_plus(), uplus.x_minus(), -uplus.x_plus(), -uminus.x_minus()};
        c.normals_ = {lorentz_cross(uminus.x_minus(), uplus.x_minus()),
                      lorentz_cross(uminus.x_minus(), uplus.x_plus()),
                      lorentz_cross(uminus.x_plus(), uplus.x_minus()),
                      lorentz_cross(uminus.x_plus(), uplus.x_plus())};
        // Each extreme must sit on the correct side of every facet: two exact
        // incidences and two strictly positive values. Anything else means a
        // degenerate interval pair.
        for (const Vec3& e : c.extremes_) {
            int zeros = 0;
            for (const Vec3& n : c.normals_) {
                const double d = lorentz_dot(e, n);
                const double scale = euclidean_norm(e) * euclidean_norm(n);
                if (std::abs(d) <= 1e3 * tol * scale) {
                    ++zeros;
                } else if (d < 0.0) {
                    throw Error("ConeSpec: degenerate interval pair (extreme outside a facet)");
                }
            }
            if (zeros != 2) throw Error("ConeSpec: degenerate interval pair (facet incidence)");
        }
        const Vec3 probe = c.interior_point();
        for (const Vec3& n : c.normals_) {
            if (!(lorentz_dot(probe, n) > tol * euclidean_norm(n))) {
                throw Error("ConeSpec: cone has empty interior");
            }
        }
        return c;
    }

    const ConicalInterval& uminus() const { return uminus_; }
    const ConicalInterval& uplus() const { return uplus_; }

    /// (x^+(U^-), x^-(U^+), -x^+(U^+), -x^-(U^-)).
    const std::array<Vec3, 4>& extremes() const { return extremes_; }
    const std::array<Vec3, 4>& normals() const { return normals_; }

    Vec3 interior_point() const {
        return extremes_[0] + extremes_[1] + extremes_[2] + extremes_[3];
    }

    /// Smallest facet value <v, n>/|n|, positive strictly inside.
    double membership_margin(const Vec3& v) const {
        double m = std::numeric_limits<double>::infinity();
        for (const Vec3& n : normals_) {
            m = std::min(m, lorentz_dot(v, n) / euclidean_norm(n));
        }
        return m;
    }

  private:
    ConeSpec(const ConicalInterval& um, const ConicalInterval& up) : uminus_(um), uplus_(up) {}

    ConicalInterval uminus_;
    ConicalInterval uplus_;
    std::array<Vec3, 4> extremes_{};
    std::array<Vec3, 4> normals_{};
};

/// Strict membership with margin; throws IndeterminateSign when v sits within
/// the tolerance band of a facet without being strictly outside another.
inline bool cone_membership(const Vec3& v, const ConeSpec& c, double tol = default_tolerance()) {
    require_finite(v, "cone_membership");
    const double scale = std::max(euclidean_norm(v), 1e-300);
    bool all_inside = true;
    bool any_band = false;
    for (const Vec3& n : c.normals()) {
        const double d = lorentz_dot(v, n);
        const double band = tol * scale * euclidean_norm(n);
        if (d < -band) return false;
        if (std::abs(d) <= band) any_band = true;
        if (!(d > band)) all_inside = false;
    }
    if (any_band) throw IndeterminateSign("cone_membership: facet value within tolerance band");
    return all_inside;
}

// ---------------------------------------------------------------------------
// Half-space H_n
// ---------------------------------------------------------------------------

/// H_n = { v : <v, x^0(g h^n)> < 0 }.
struct HalfSpaceN {
    int n = 1;
    Vec3 normal;  // x^0(g h^n)

    static HalfSpaceN make(const GeneratorPair& pair, int n, double tol = default_tolerance()) {
        if (n < 1) throw Error("HalfSpaceN: n must be >= 1");
        const Word ghn = detail::g_h_power(n);
        return {n, spectral_data(evaluate_linear(ghn, pair.g, pair.h), tol).xzero};
    }

    /// <v, normal>, negative inside.
    double value(const Vec3& v) const { return lorentz_dot(v, normal); }

    bool contains(const Vec3& v, double tol = default_tolerance()) const {
        return value(v) < -tol * euclidean_norm(v) * euclidean_norm(normal);
    }
};

// ---------------------------------------------------------------------------
// U^- and U_n^+
// ---------------------------------------------------------------------------

struct UIntervals {
    ConicalInterval uminus;   // smallest arc containing A_h^-, A_h^+, A_g^-
    ConicalInterval uplus_n;  // arc in A_g^+ from x^+(A_g^+) to x^+(g h^{n-1})
    Vec3 xplus_gh_nm1;        // x^+(g h^{n-1}), the x^- boundary of uplus_n
};

/// Boundary identities: x^-(U^-) = x^-(A_h^-), x^+(U^-) = x^+(A_h^+),
/// x^-(U_n^+) = x^+(g h^{n-1}), x^+(U_n^+) = x^+(A_g^+).
inline UIntervals build_U_intervals(const SchottkySystem& sys, const GeneratorPair& pair, int n,
                                    double tol = default_tolerance()) {
    if (n < 1) throw Error("build_U_intervals: n must be >= 1");
    const std::array<ConicalInterval, 3> lower{sys.Ahm, sys.Ahp, sys.Agm};
    const ConicalInterval uminus =
        ConicalInterval::smallest_containing(std::span<const ConicalInterval>(lower));
    const Vec3 xp =
        spectral_data(evaluate_linear(detail::g_h_power(n - 1), pair.g, pair.h), tol).xplus;
    const Ray end = Ray::of_vector(xp);
    if (!sys.Agp.contains(end, 1e-12)) {
        throw Error("build_U_intervals: x^+(g h^{n-1}) escaped A_g^+");
    }
    return {uminus, ConicalInterval::from_endpoints(sys.Agp.start(), end), xp};
}

// ---------------------------------------------------------------------------
// The cancellation arc A
// ---------------------------------------------------------------------------

/// The arc inside A_g^+ running ccw from x^+(gh) to g(x^+(h)); it contains
/// x^+(g h^i) for every i > 0.
inline ConicalInterval cancellation_arc(const GeneratorPair& pair,
                                        double tol = default_tolerance()) {
    const Vec3 x_gh = spectral_data(pair.g * pair.h, tol).xplus;
    const Vec3 g_xh = pair.g(pair.dh.xplus);
    return ConicalInterval::from_endpoints(Ray::of_vector(x_gh), Ray::of_vector(g_xh));
}

// ---------------------------------------------------------------------------
// Seed selection
// ---------------------------------------------------------------------------

struct SeedReport {
    Vec3 seed;                     // Euclidean-unit future lightlike
    double cone_margin = 0.0;      // facet margin in C(U^-, U_n^+)
    double halfspace_value = 0.0;  // <seed, x^0(g h^n)>, required negative
    double arc_margin = 0.0;       // containment margin in the cancellation arc
};

/// The unit lightlike vector at the interpolation point t of the arc from
/// x^+(g h^{n-1}) to x^+(g h^n). Required memberships: the half-space H_n and
/// the cone C(U^-, U_n^+) for every n >= 1; the cancellation arc for n >= 2.
/// (For n = 1 that arc begins only at x^+(gh), and no word short enough to
/// matter contains a g h^i g^-1 factor, so the arc condition is vacuous.)
inline SeedReport seed_vector(const SchottkySystem& sys, const GeneratorPair& pair, int n,
                              double t = 0.5, double tol = default_tolerance()) {
    if (n < 1) throw Error("seed_vector: n must be >= 1");
    if (!(t > 0.0 && t < 1.0)) throw Error("seed_vector: interpolation t must lie in (0,1)");
    const UIntervals u = build_U_intervals(sys, pair, n, tol);
    const Vec3 xp_n = spectral_data(evaluate_linear(detail::g_h_power(n), pair.g, pair.h), tol).xplus;
    const Ray a = Ray::of_vector(u.xplus_gh_nm1);
    const Ray b = Ray::of_vector(xp_n);
    const Ray mid = Ray::from_angle(a.theta + t * angle_mod_2pi(b.theta - a.theta));
    SeedReport report;
    report.seed = mid.unit_vector();

    const ConeSpec cone = ConeSpec::make(u.uminus, u.uplus_n, tol);
    report.cone_margin = cone.membership_margin(report.seed);
    const HalfSpaceN hn = HalfSpaceN::make(pair, n, tol);
    report.halfspace_value = hn.value(report.seed);
    const ConicalInterval arc = cancellation_arc(pair, tol);
    report.arc_margin = arc.containment_margin(mid);

    std::ostringstream failure;
    if (!(report.cone_margin > tol)) {
        failure << "cone membership margin " << report.cone_margin << "; ";
    }
    if (!(report.halfspace_value < -tol)) {
        failure << "half-space value " << report.halfspace_value << "; ";
    }
    if (n >= 2 && !(report.arc_margin >= -tol)) {
        failure << "cancellation arc margin " << report.arc_margin << "; ";
    }
    if (const std::string f = failure.str(); !f.empty()) {
        throw SeedInfeasible("seed_vector: " + f);
    }
    return report;
}

}  // namespace margulis
