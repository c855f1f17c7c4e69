#pragma once

// Conical-interval arithmetic on the circle of future lightlike rays,
// Schottky system construction and verification, transversality, and the
// eigenvector-ordering checks.
//
// A future lightlike ray is parametrized by the angle t of its representative
// (cos t, sin t, 1). A conical interval is the closed counterclockwise arc
// from start to end. Boundary convention, forced by the requirement
// <x, x^-(U) (x) x^+(U)> > 0 for x inside U:
//   x^+(U) = Euclidean-unit vector at the ccw start,
//   x^-(U) = Euclidean-unit vector at the ccw end.
// Equivalently: walking ccw from x^+(U) one crosses U and arrives at x^-(U).

#include <numbers>
#include <sstream>
#include <vector>

#include "margulis/invariant.hpp"

namespace margulis {

struct NoSystemFound : Error {
    using Error::Error;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double angle_mod_2pi(double t) {
    double m = std::fmod(t, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    if (m == kTwoPi) m = 0.0;
    return m;
}

// ---------------------------------------------------------------------------
// Rays
// ---------------------------------------------------------------------------

struct Ray {
    double theta = 0.0;  // in [0, 2pi)

    static Ray from_angle(double t) { return Ray{angle_mod_2pi(t)}; }

    /// The ray through a future-pointing lightlike (or timelike) vector.
    static Ray of_vector(const Vec3& v) {
        require_finite(v, "Ray::of_vector");
        if (!(v.x3 > 0.0)) throw Error("Ray::of_vector: vector is not future-pointing");
        return from_angle(std::atan2(v.x2, v.x1));
    }

    /// Representative with third coordinate 1.
    Vec3 vector() const { return {std::cos(theta), std::sin(theta), 1.0}; }

    /// Euclidean-unit representative.
    Vec3 unit_vector() const {
        const double inv = 1.0 / std::sqrt(2.0);
        return {std::cos(theta) * inv, std::sin(theta) * inv, inv};
    }
};

/// The ray of g * (cos t, sin t, 1), rescaled to third coordinate 1.
inline Ray map_ray(const LorentzIsometry& g, Ray r) {
    const Vec3 image = g(r.vector());
    return Ray::of_vector(image);
}

// ---------------------------------------------------------------------------
// Conical intervals
// ---------------------------------------------------------------------------

class ConicalInterval {
  public:
    static ConicalInterval from_endpoints(Ray start, Ray end) {
        const double len = angle_mod_2pi(end.theta - start.theta);
        if (!(len > 0.0) || !(len < kTwoPi)) {
            throw Error("ConicalInterval: arc must be non-trivial and proper");
        }
        return ConicalInterval(start.theta, len);
    }

    static ConicalInterval centered(Ray center, double radius) {
        if (!(radius > 0.0) || !(radius < std::numbers::pi)) {
            throw Error("ConicalInterval::centered: radius out of range");
        }
        return ConicalInterval(angle_mod_2pi(center.theta - radius), 2.0 * radius);
    }

    Ray start() const { return Ray{start_}; }
    Ray end() const { return Ray::from_angle(start_ + length_); }
    double length() const { return length_; }
    Ray midpoint() const { return Ray::from_angle(start_ + 0.5 * length_); }

    /// Boundary vectors; see the convention note at the top of this header.
    Vec3 x_plus() const { return start().unit_vector(); }
    Vec3 x_minus() const { return end().unit_vector(); }

    /// Signed angular distance to the boundary: positive inside (distance to
    /// the nearer endpoint), negative outside.
    double containment_margin(Ray r) const {
        const double rel = angle_mod_2pi(r.theta - start_);
        if (rel <= length_) return std::min(rel, length_ - rel);
        return -std::min(rel - length_, kTwoPi - rel);
    }

    bool contains(Ray r, double slack = 0.0) const { return containment_margin(r) >= -slack; }

    /// cl(F - U): the closed complementary arc [end -> start].
    ConicalInterval complement_closure() const {
        return ConicalInterval(angle_mod_2pi(start_ + length_), kTwoPi - length_);
    }

    /// Smallest closed arc containing every given arc: the complement of the
    /// widest circular gap that meets none of them.
    static ConicalInterval smallest_containing(std::span<const ConicalInterval> arcs) {
        if (arcs.empty()) throw Error("smallest_containing: no arcs");
        double best_gap = -1.0;
        double best_start = 0.0;
        for (const ConicalInterval& a : arcs) {
            const double gap_start = angle_mod_2pi(a.start_ + a.length_);  // a's end
            double gap = kTwoPi;
            for (const ConicalInterval& b : arcs) {
                const double to_b = angle_mod_2pi(b.start_ - gap_start);
                gap = std::min(gap, to_b == 0.0 && &b == &a ? kTwoPi : to_b);
            }
            if (gap > best_gap) {
                best_gap = gap;
                best_start = angle_mod_2pi(gap_start + gap);
            }
        }
        if (!(best_gap > 0.0)) throw Error("smallest_containing: arcs cover the circle");
        ConicalInterval result(best_start, kTwoPi - best_gap);
        for (const ConicalInterval& a : arcs) {
            if (!(result.contains(a.start(), 1e-12) && result.contains(a.end(), 1e-12))) {
                throw Error("smallest_containing: internal containment failure");
            }
        }
        return result;
    }

  private:
    ConicalInterval(double start, double length)
        : start_(angle_mod_2pi(start)), length_(length) {}

    double start_;   // in [0, 2pi)
    double length_;  // in (0, 2pi)
};

/// Minimal gap between two closed arcs; negative when they overlap.
inline double disjoint_margin(const ConicalInterval& a, const ConicalInterval& b) {
    const double fwd = angle_mod_2pi(b.start().theta - a.start().theta) - a.length();
    const double bwd = angle_mod_2pi(a.start().theta - b.start().theta) - b.length();
    return std::min(fwd, bwd);
}

/// Arc with endpoints mapped by g; orientation is preserved since elements of
/// SO(2,1)^0 act orientation-preservingly on the circle of rays.
inline ConicalInterval image_interval(const LorentzIsometry& g, const ConicalInterval& u) {
    return ConicalInterval::from_endpoints(map_ray(g, u.start()), map_ray(g, u.end()));
}

// ---------------------------------------------------------------------------
// Generator pairs
// ---------------------------------------------------------------------------

/// A pair of hyperbolic generators with cached spectral data.
struct GeneratorPair {
    LorentzIsometry g = LorentzIsometry::identity();
    LorentzIsometry h = LorentzIsometry::identity();
    HyperbolicData dg;
    HyperbolicData dh;
};

inline GeneratorPair make_generator_pair(const LorentzIsometry& g, const LorentzIsometry& h,
                                         double tol = default_tolerance()) {
    return {g, h, spectral_data(g, tol), spectral_data(h, tol)};
}

struct TransversalResult {
    bool transversal = false;
    bool inverted = false;   // whether h had to be replaced by h^-1
    GeneratorPair pair;      // normalized so that PO(x^-(g), x^-(h), x^+(g))
};

/// The axes' perpendicular planes meet in a timelike line iff
/// x^0(g) (x) x^0(h) is timelike. The returned pair replaces h by h^-1 when
/// needed for the PO(x^-(g), x^-(h), x^+(g)) normalization.
inline TransversalResult is_transversal(const LorentzIsometry& g, const LorentzIsometry& h,
                                        double tol = default_tolerance()) {
    GeneratorPair pair = make_generator_pair(g, h, tol);
    const Vec3 line = lorentz_cross(pair.dg.xzero, pair.dh.xzero);
    if (classify(line, tol) != CausalClass::Timelike) {
        return {false, false, pair};
    }
    if (positively_oriented(pair.dg.xminus, pair.dh.xminus, pair.dg.xplus, tol)) {
        return {true, false, pair};
    }
    GeneratorPair flipped{pair.g, pair.h.inverse(),
                          pair.dg,
                          HyperbolicData{pair.dh.lambda, pair.dh.xplus, pair.dh.xminus,
                                         -pair.dh.xzero}};
    if (!positively_oriented(flipped.dg.xminus, flipped.dh.xminus, flipped.dg.xplus, tol)) {
        throw Error("is_transversal: neither h nor h^-1 satisfies the orientation convention");
    }
    return {true, true, flipped};
}

// ---------------------------------------------------------------------------
// Schottky systems
// ---------------------------------------------------------------------------

struct SchottkySystem {
    ConicalInterval Agm;  // A_g^-
    ConicalInterval Agp;  // A_g^+
    ConicalInterval Ahm;  // A_h^-
    ConicalInterval Ahp;  // A_h^+
    double build_margin = 0.0;  // minimal pairwise gap at construction

    std::array<const ConicalInterval*, 4> arcs() const { return {&Agm, &Agp, &Ahm, &Ahp}; }

    double min_pairwise_margin() const {
        const auto a = arcs();
        double m = kTwoPi;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) m = std::min(m, disjoint_margin(*a[i], *a[j]));
        return m;
    }
};

namespace detail {

/// A_- centered at the repelling ray with the given radius; A_+ is forced by
/// the defining identity g(A_-) = cl(F - A_+).
struct GeneratorArcs {
    ConicalInterval am;
    ConicalInterval ap;
};

inline GeneratorArcs generator_arcs(const LorentzIsometry& g, const HyperbolicData& d,
                                    double radius) {
    const ConicalInterval am = ConicalInterval::centered(Ray::of_vector(d.xminus), radius);
    const ConicalInterval ap = image_interval(g, am).complement_closure();
    return {am, ap};
}

/// Width of A_+ shrinks monotonically in the radius of A_-; bisect for the
/// radius where both arcs have equal width.
inline double balanced_radius(const LorentzIsometry& g, const HyperbolicData& d) {
    const double tm = Ray::of_vector(d.xminus).theta;
    const double tp = Ray::of_vector(d.xplus).theta;
    const double rmax =
        std::min(angle_mod_2pi(tp - tm), angle_mod_2pi(tm - tp)) * (1.0 - 1e-9);
    double lo = 1e-9;
    double hi = rmax;
    const auto imbalance = [&](double r) {
        const GeneratorArcs arcs = generator_arcs(g, d, r);
        return arcs.ap.length() - arcs.am.length();
    };
    if (!(imbalance(lo) > 0.0) || !(imbalance(hi) < 0.0)) {
        throw NoSystemFound("balanced_radius: no bracketing interval");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (imbalance(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::optional<SchottkySystem> try_system(const GeneratorPair& p, double rg, double rh,
                                                double required_margin) {
    const GeneratorArcs ga = generator_arcs(p.g, p.dg, rg);
    const GeneratorArcs ha = generator_arcs(p.h, p.dh, rh);
    SchottkySystem sys{ga.am, ga.ap, ha.am, ha.ap, 0.0};
    sys.build_margin = sys.min_pairwise_margin();
    if (!(sys.build_margin >= required_margin)) return std::nullopt;
    // eigenray containment, part of the Schottky system definition
    if (!sys.Agm.contains(Ray::of_vector(p.dg.xminus)) ||
        !sys.Agp.contains(Ray::of_vector(p.dg.xplus)) ||
        !sys.Ahm.contains(Ray::of_vector(p.dh.xminus)) ||
        !sys.Ahp.contains(Ray::of_vector(p.dh.xplus))) {
        return std::nullopt;
    }
    return sys;
}

}  // namespace detail

struct SchottkyBuildOptions {
    double margin = 1e-3;  // required pairwise angular gap, radians
};

/// A_i^- is the arc centered at x^-(g_i); A_i^+ := cl(F - g_i(A_i^-)). Radii
/// start from the balanced-width bisection value per generator; if the four
/// arcs fail to separate, a coarse radius grid is scanned before giving up.
inline SchottkySystem build_schottky_system(const GeneratorPair& pair,
                                            const SchottkyBuildOptions& opts = {}) {
    double rg = 0.0, rh = 0.0;
    try {
        rg = detail::balanced_radius(pair.g, pair.dg);
        rh = detail::balanced_radius(pair.h, pair.dh);
    } catch (const Error&) {
        throw NoSystemFound("build_schottky_system: degenerate generator dynamics");
    }
    if (auto sys = detail::try_system(pair, rg, rh, opts.margin)) return *sys;

    // fallback: scan radius fractions of the balanced values
    double best_margin = -kTwoPi;
    std::optional<SchottkySystem> best;
    for (int i = 1; i <= 40; ++i) {
        for (int j = 1; j <= 40; ++j) {
            const double cand_rg = rg * (i / 40.0 * 1.6);
            const double cand_rh = rh * (j / 40.0 * 1.6);
            if (auto sys = detail::try_system(pair, cand_rg, cand_rh, opts.margin)) {
                if (sys->build_margin > best_margin) {
                    best_margin = sys->build_margin;
                    best = sys;
                }
            }
        }
    }
    if (best) return *best;
    throw NoSystemFound("build_schottky_system: no disjoint system at required margin");
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct SchottkyCheck {
    bool ok = false;
    double disjointness_margin = 0.0;  // minimal pairwise gap
    double inclusion_slack = 0.0;      // minimal containment margin over samples
    std::string first_violation;       // empty when ok
};

/// Checks pairwise disjointness and, on sampled rays, the ping-pong
/// inclusions g(F - A_g^-) in A_g^+, g^-1(F - A_g^+) in A_g^-, and the same
/// for h. Sampling includes the boundary rays, which land exactly on the
/// image arc boundary, so closed containment is verified with tolerance
/// slack and the interior margin is reported.
inline SchottkyCheck verify_schottky(const SchottkySystem& sys, const GeneratorPair& pair,
                                     int n_samples, double tol = default_tolerance()) {
    SchottkyCheck out;
    out.disjointness_margin = sys.min_pairwise_margin();
    out.inclusion_slack = kTwoPi;
    if (!(out.disjointness_margin > tol)) {
        out.first_violation = "arcs are not pairwise disjoint";
        return out;
    }
    const double slack_allowed = std::max(tol, 1e-12) * kTwoPi;
    struct Direction {
        const LorentzIsometry* iso;
        const ConicalInterval* from_complement_of;
        const ConicalInterval* into;
        const char* name;
    };
    const LorentzIsometry ginv = pair.g.inverse();
    const LorentzIsometry hinv = pair.h.inverse();
    const std::array<Direction, 4> dirs{{{&pair.g, &sys.Agm, &sys.Agp, "g(F-Ag-) in Ag+"},
                                         {&ginv, &sys.Agp, &sys.Agm, "g^-1(F-Ag+) in Ag-"},
                                         {&pair.h, &sys.Ahm, &sys.Ahp, "h(F-Ah-) in Ah+"},
                                         {&hinv, &sys.Ahp, &sys.Ahm, "h^-1(F-Ah+) in Ah-"}}};
    for (const Direction& dir : dirs) {
        const ConicalInterval comp = dir.from_complement_of->complement_closure();
        for (int i = 0; i < n_samples; ++i) {
            const double frac = (n_samples == 1) ? 0.5 : static_cast<double>(i) / (n_samples - 1);
            const Ray sample = Ray::from_angle(comp.start().theta + frac * comp.length());
            const Ray image = map_ray(*dir.iso, sample);
            const double margin = dir.into->containment_margin(image);
            out.inclusion_slack = std::min(out.inclusion_slack, margin);
            if (margin < -slack_allowed) {
                std::ostringstream os;
                os << dir.name << " violated at theta=" << sample.theta
                   << " (margin " << margin << ")";
                out.first_violation = os.str();
                return out;
            }
        }
    }
    if (n_samples == 0) out.inclusion_slack = 0.0;
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// Ordering checks
// ---------------------------------------------------------------------------

struct OrderingReport {
    bool ok = false;
    long long checks = 0;
    double min_margin = 0.0;  // smallest determinant seen among required-positive triples
    std::string first_violation;
};

namespace detail {

struct OrderingSweep {
    double tol = 0.0;
    long long checks = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::string first_violation;

    /// Requires det[a b c] > tol; records the margin.
    void require_po(const Vec3& a, const Vec3& b, const Vec3& c, const char* what) {
        const double d = det3(a, b, c);
        ++checks;
        min_margin = std::min(min_margin, d);
        if (!(d > tol) && first_violation.empty()) {
            std::ostringstream os;
            os << what << ": det=" << d;
            first_violation = os.str();
        }
    }

    /// Requires sign(det[a b c]) = sign agreement with `expected`.
    void require_same_sign(double lhs, double rhs, const char* what) {
        ++checks;
        if ((std::abs(lhs) <= tol || std::abs(rhs) <= tol || (lhs > 0) != (rhs > 0)) &&
            first_violation.empty()) {
            std::ostringstream os;
            os << what << ": lhs=" << lhs << " rhs=" << rhs;
            first_violation = os.str();
        }
    }
};

/// x^+ of the evaluated word, memoized.
class AttractorCache {
  public:
    AttractorCache(const GeneratorPair& pair, double tol) : pair_(pair), tol_(tol) {}

    const Vec3& xplus(const Word& w) {
        auto it = cache_.find(w);
        if (it == cache_.end()) {
            const HyperbolicData d = spectral_data(evaluate_linear(w, pair_.g, pair_.h), tol_);
            it = cache_.emplace(w, d.xplus).first;
        }
        return it->second;
    }

  private:
    const GeneratorPair& pair_;
    double tol_;
    std::map<Word, Vec3> cache_;
};

inline Word g_h_power(int i) {
    std::vector<Letter> ls;
    ls.push_back(kG);
    for (int k = 0; k < i; ++k) ls.push_back(kH);
    return Word(std::move(ls));
}

inline bool has_prefix(const Word& w, std::initializer_list<Letter> prefix) {
    if (w.size() < prefix.size()) return false;
    std::size_t i = 0;
    for (const Letter& l : prefix) {
        if (!(w[i] == l)) return false;
        ++i;
    }
    return true;
}

}  // namespace detail

/// Verifies, over all applicable cyclically reduced words up to max_len with
/// x^+ := x^+(A_g^+):
///   (1) PO(x^+, x^+(g h^-1 w1), x^+(g^2 w2), x^+(g h w3));
///   (2) PO(x^+, x^+(g h^i g w), x^+(g h^{n+1})) for i <= n <= max_len;
///   (3) PO(x^+, x^+(g h^i), x^+(g h^{i+j})) for i >= 0, j > 0, i+j <= max_len;
/// plus sampled instances of the one-letter ordering lemma and its
/// prepended-word corollary as sign biconditionals.
inline OrderingReport check_ordering_lemmas(const GeneratorPair& pair, const SchottkySystem& sys,
                                            int max_len, double tol = default_tolerance()) {
    detail::OrderingSweep sweep;
    sweep.tol = tol;
    detail::AttractorCache cache(pair, tol);
    const Vec3 xref = sys.Agp.x_plus();

    std::vector<Word> all = cyclically_reduced_words(max_len);
    std::vector<Vec3> cls_ghinv, cls_gg, cls_gh;
    std::vector<std::pair<Word, int>> ghig_words;  // (word, i) with prefix g h^i g
    for (const Word& w : all) {
        if (detail::has_prefix(w, {kG, kHinv})) cls_ghinv.push_back(cache.xplus(w));
        if (detail::has_prefix(w, {kG, kG})) cls_gg.push_back(cache.xplus(w));
        if (detail::has_prefix(w, {kG, kH})) cls_gh.push_back(cache.xplus(w));
        if (w.size() >= 3 && w[0] == kG) {
            std::size_t i = 1;
            while (i < w.size() && w[i] == kH) ++i;
            if (i > 1 && i < w.size() && w[i] == kG) {
                ghig_words.emplace_back(w, static_cast<int>(i - 1));
            }
        }
    }

    // item (1)
    for (const Vec3& a : cls_ghinv)
        for (const Vec3& b : cls_gg) sweep.require_po(xref, a, b, "item1 (gh^-1 vs g^2)");
    for (const Vec3& b : cls_gg)
        for (const Vec3& c : cls_gh) sweep.require_po(xref, b, c, "item1 (g^2 vs gh)");
    for (const Vec3& a : cls_ghinv)
        for (const Vec3& c : cls_gh) sweep.require_po(xref, a, c, "item1 (gh^-1 vs gh)");
    for (const Vec3& a : cls_ghinv)
        for (const Vec3& b : cls_gg)
            for (const Vec3& c : cls_gh) sweep.require_po(a, b, c, "item1 (triple)");

    // item (2)
    std::vector<Vec3> ghn_xplus;  // x^+(g h^n), n = 0..max_len+1
    for (int n = 0; n <= max_len + 1; ++n) ghn_xplus.push_back(cache.xplus(detail::g_h_power(n)));
    for (const auto& [w, i] : ghig_words) {
        const Vec3& xw = cache.xplus(w);
        for (int n = i; n <= max_len; ++n) {
            sweep.require_po(xref, xw, ghn_xplus[static_cast<std::size_t>(n + 1)], "item2");
        }
    }

    // item (3)
    for (int i = 0; i <= max_len; ++i) {
        for (int j = 1; i + j <= max_len; ++j) {
            sweep.require_po(xref, ghn_xplus[static_cast<std::size_t>(i)],
                             ghn_xplus[static_cast<std::size_t>(i + j)], "item3");
        }
    }

    // one-letter lemma and corollary, sampled: words lw1 and lw2 with shared
    // first letter l; the ordering seen from x^+(A_l) must match the ordering
    // of the single-letter eigenvectors seen from x^-(l).
    const auto arc_of = [&](Letter l) -> const ConicalInterval& {
        if (l.gen == 1) return l.sign > 0 ? sys.Agp : sys.Agm;
        return l.sign > 0 ? sys.Ahp : sys.Ahm;
    };
    const auto letter_data = [&](Letter l) {
        HyperbolicData d = (l.gen == 1) ? pair.dg : pair.dh;
        if (l.sign < 0) d = HyperbolicData{d.lambda, d.xplus, d.xminus, -d.xzero};
        return d;
    };
    const std::vector<Word> tails = cyclically_reduced_words(std::min(max_len, 3));
    for (int lc = 0; lc < 4; ++lc) {
        const Letter l = Letter::from_code(lc);
        const Vec3 xm_l = letter_data(l).xminus;
        const Vec3 x_arc = arc_of(l).x_plus();
        for (int c1 = 0; c1 < 4; ++c1) {
            for (int c2 = 0; c2 < 4; ++c2) {
                if (c1 == c2) continue;
                const Letter l1 = Letter::from_code(c1);
                const Letter l2 = Letter::from_code(c2);
                if (l1 == l.inverse() || l2 == l.inverse()) continue;
                const double rhs = det3(xm_l, letter_data(l1).xplus, letter_data(l2).xplus);
                int used = 0;
                for (const Word& t1 : tails) {
                    for (const Word& t2 : tails) {
                        if (used >= 12) break;
                        std::vector<Letter> w1{l, l1}, w2{l, l2};
                        for (const Letter& x : t1.letters()) w1.push_back(x);
                        for (const Letter& x : t2.letters()) w2.push_back(x);
                        Word full1, full2;
                        try {
                            full1 = Word(w1);
                            full2 = Word(w2);
                        } catch (const NotReduced&) {
                            continue;
                        }
                        if (!full1.is_cyclically_reduced() || !full2.is_cyclically_reduced())
                            continue;
                        ++used;
                        const double lhs = det3(x_arc, cache.xplus(full1), cache.xplus(full2));
                        sweep.require_same_sign(lhs, rhs, "ordering lemma biconditional");
                        // corollary: prepend a word whose terminal letter stays l
                        const std::vector<Letter> pre{l, l.gen == 1 ? kH : kG};
                        std::vector<Letter> p1(pre), p2(pre);
                        for (const Letter& x : w1) p1.push_back(x);
                        for (const Letter& x : w2) p2.push_back(x);
                        try {
                            const Word c_full1{p1};
                            const Word c_full2{p2};
                            if (c_full1.is_cyclically_reduced() && c_full2.is_cyclically_reduced()) {
                                const double clhs =
                                    det3(x_arc, cache.xplus(c_full1), cache.xplus(c_full2));
                                sweep.require_same_sign(clhs, rhs, "ordering corollary");
                            }
                        } catch (const NotReduced&) {
                        }
                    }
                }
            }
        }
    }

    OrderingReport report;
    report.checks = sweep.checks;
    report.min_margin = sweep.min_margin;
    report.first_violation = sweep.first_violation;
    report.ok = sweep.first_violation.empty();
    return report;
}

}  // namespace margulis
