#pragma once

// Top-level procedures: translational-part selection, the two-generator
// non-proper pair, bounded cancellation checks, the counterexample
// constructor for each n, and brute-force verification certificates.

#include <random>

#include "margulis/cones.hpp"

namespace margulis {

struct Infeasible : Error {
    using Error::Error;
};

struct VerificationFailed : Error {
    VerificationFailed(const std::string& msg, Word w, double a)
        : Error(msg), word(std::move(w)), alpha(a) {}
    Word word;
    double alpha = 0.0;
};

// ---------------------------------------------------------------------------
// Deformation and certificate
// ---------------------------------------------------------------------------

/// An affine deformation of the pair: translational parts v_g, v_h assigned
/// to the generators, plus a record of how they were chosen.
struct Deformation {
    GeneratorPair pair;
    Vec3 vg;
    Vec3 vh;

    struct Provenance {
        int n = 0;
        Vec3 seed;
        double scale_k = 0.0;
        std::string vh_recipe;
    } provenance;

    AffineIsometry gamma() const { return {pair.g, vg}; }
    AffineIsometry eta() const { return {pair.h, vh}; }
};

/// The sign certificate: minimum alpha per word length 1..n together with the
/// violating word g h^n. pass requires every minimum above the margin and the
/// violator below its negative.
struct Certificate {
    int n = 0;

    struct LengthMin {
        int length = 0;
        double min_alpha = 0.0;
        Word argmin;
    };
    std::vector<LengthMin> min_alpha_by_length;

    Word violator_word;
    double violator_alpha = 0.0;

    double tol = 0.0;
    double margin_required = 0.0;
    bool pass = false;

    std::size_t words_checked = 0;
    std::size_t crosschecked = 0;
    double crosscheck_max_err = 0.0;

    double min_alpha_overall() const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& lm : min_alpha_by_length) m = std::min(m, lm.min_alpha);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Translational part of h
// ---------------------------------------------------------------------------

struct VhChoice {
    Vec3 vh;           // Euclidean-unit
    double cone_margin = 0.0;
};

/// v_h from the cone C(U^-_(h), A_h^+) with U^-_(h) the smallest arc
/// containing A_h^-, A_g^-, A_g^+: the normalized sum of the cone's four
/// extremes. Guarantees <v_h, x^0(w)> > 0 for every cyclically reduced word
/// with terminal letter h.
inline VhChoice choose_vh(const SchottkySystem& sys, double tol = default_tolerance()) {
    const std::array<ConicalInterval, 3> lower{sys.Ahm, sys.Agm, sys.Agp};
    const ConicalInterval uminus_h =
        ConicalInterval::smallest_containing(std::span<const ConicalInterval>(lower));
    const ConeSpec cone = ConeSpec::make(uminus_h, sys.Ahp, tol);
    const Vec3 vh = euclidean_normalized(cone.interior_point());
    const double margin = cone.membership_margin(vh);
    if (!(margin > tol)) throw Infeasible("choose_vh: interior point lost its margin");
    return {vh, margin};
}

// ---------------------------------------------------------------------------
// Scale selection
// ---------------------------------------------------------------------------

struct ScaleChoice {
    double k = 0.0;      // chosen scale, 2x the break-even value
    double h_sum = 0.0;  // S = sum over k of <v_h, x^0(h^{n-k} g h^k)>, positive
    double gh_dot = 0.0; // D = <v, x^0(g h^n)>, negative
};

/// alpha(gamma eta^n) = k D + S with D = <v, x^0(g h^n)> < 0 and
/// S = sum_{k=0}^{n-1} <v_h, x^0(h^{n-k} g h^k)> > 0. Returns k = 2S/(-D),
/// which forces alpha(gamma eta^n) = -S.
inline ScaleChoice choose_scale(const Vec3& v, const Vec3& vh, const GeneratorPair& pair, int n,
                                double tol = default_tolerance()) {
    if (n < 1) throw Error("choose_scale: n must be >= 1");
    const HalfSpaceN hn = HalfSpaceN::make(pair, n, tol);
    const double d = hn.value(v);
    if (!(d < -tol)) throw Infeasible("choose_scale: <v, x^0(g h^n)> is not negative");
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        std::vector<Letter> ls;
        for (int j = 0; j < n - k; ++j) ls.push_back(kH);
        ls.push_back(kG);
        for (int j = 0; j < k; ++j) ls.push_back(kH);
        const Word w{std::move(ls)};
        s += lorentz_dot(vh, spectral_data(evaluate_linear(w, pair.g, pair.h), tol).xzero);
    }
    if (!(s > 0.0)) throw Infeasible("choose_scale: h-sum is not positive");
    return {2.0 * s / (-d), s, d};
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyOptions {
    bool dedup = true;             // enumerate one representative per class
    double crosscheck_fraction = 0.1;
    unsigned crosscheck_seed = 0x5eed;
};

/// Enumerates cyclically reduced words of length 1..n (deduplicated by cyclic
/// rotation and inversion unless disabled), records per-length alpha minima,
/// evaluates alpha(gamma eta^n), and cross-checks a sample of the direct
/// values against the cyclic sum formula.
inline Certificate verify_counterexample(const Deformation& d, int n,
                                         const VerifyOptions& opts = {},
                                         double tol = default_tolerance()) {
    if (n < 1) throw Error("verify_counterexample: n must be >= 1");
    Certificate cert;
    cert.n = n;
    cert.tol = tol;
    cert.margin_required = tol * std::max(1.0, std::abs(d.provenance.scale_k));

    const AffineIsometry gamma = d.gamma();
    const AffineIsometry eta = d.eta();
    const std::vector<Word> words =
        opts.dedup ? cyclically_reduced_classes(n) : cyclically_reduced_words(n);

    std::mt19937_64 rng(opts.crosscheck_seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<Certificate::LengthMin> mins(static_cast<std::size_t>(n));
    for (int len = 1; len <= n; ++len) {
        mins[static_cast<std::size_t>(len - 1)].length = len;
        mins[static_cast<std::size_t>(len - 1)].min_alpha =
            std::numeric_limits<double>::infinity();
    }
    for (const Word& w : words) {
        const double a = alpha_of_word(w, gamma, eta, tol);
        auto& slot = mins[w.size() - 1];
        if (a < slot.min_alpha) {
            slot.min_alpha = a;
            slot.argmin = w;
        }
        ++cert.words_checked;
        if (coin(rng) < opts.crosscheck_fraction) {
            const double as = alpha_sum(w, d.vg, d.vh, d.pair.g, d.pair.h, tol);
            const double err = std::abs(as - a) / std::max(1.0, std::abs(a));
            cert.crosscheck_max_err = std::max(cert.crosscheck_max_err, err);
            ++cert.crosschecked;
        }
    }
    cert.min_alpha_by_length = std::move(mins);

    cert.violator_word = detail::g_h_power(n);
    cert.violator_alpha = alpha_of_word(cert.violator_word, gamma, eta, tol);

    const bool minima_ok = cert.min_alpha_overall() > cert.margin_required;
    const bool violator_ok = cert.violator_alpha < -cert.margin_required;
    const bool crosscheck_ok = cert.crosscheck_max_err <= 1e-8;
    cert.pass = minima_ok && violator_ok && crosscheck_ok;
    return cert;
}

// ---------------------------------------------------------------------------
// Bounded cancellation check
// ---------------------------------------------------------------------------

struct PropertyCReport {
    bool ok = false;
    int depth = 0;
    int arc_samples = 0;
    std::size_t w_plus_count = 0;
    std::size_t w_minus_count = 0;
    double min_slack = 0.0;        // min over samples of min_(w2) - max_(-w1)
    bool sides_positive = false;   // both inequality sides positive everywhere
    std::string witness;           // first violation, empty when ok
};

/// W^+ / W^- are the cyclically reduced words of the form g h^i g^-1 w and
/// g h^-i g^-1 w up to the given length. For sampled rays x in the
/// cancellation arc, checks -<x, x^0(w1)> < <x, x^0(w2)> for every pair
/// (w1, w2) in W^+ x W^-, and that both sides are positive.
inline PropertyCReport check_property_c(const GeneratorPair& pair, int depth, int arc_samples,
                                        double tol = default_tolerance()) {
    PropertyCReport report;
    report.depth = depth;
    report.arc_samples = arc_samples;
    if (depth < 1) throw Error("check_property_c: depth must be >= 1");

    std::vector<Vec3> xzero_plus, xzero_minus;
    std::vector<Word> words_plus, words_minus;
    enumerate_cyclically_reduced(depth, [&](const Word& w) {
        const auto cls = detail::w_class_prefix(w);
        if (!cls) return;
        const Vec3 x0 = spectral_data(evaluate_linear(w, pair.g, pair.h), tol).xzero;
        if (cls->first > 0) {
            xzero_plus.push_back(x0);
            words_plus.push_back(w);
        } else {
            xzero_minus.push_back(x0);
            words_minus.push_back(w);
        }
    });
    report.w_plus_count = xzero_plus.size();
    report.w_minus_count = xzero_minus.size();
    report.min_slack = std::numeric_limits<double>::infinity();
    report.sides_positive = true;
    if (xzero_plus.empty() && xzero_minus.empty()) {
        report.ok = true;  // vacuous at this depth
        report.min_slack = 0.0;
        return report;
    }

    const ConicalInterval arc = cancellation_arc(pair, tol);
    for (int s = 0; s < arc_samples; ++s) {
        const double frac = (arc_samples == 1) ? 0.5 : static_cast<double>(s) / (arc_samples - 1);
        const Vec3 x = Ray::from_angle(arc.start().theta + frac * arc.length()).unit_vector();
        double lhs_max = -std::numeric_limits<double>::infinity();
        std::size_t lhs_arg = 0;
        for (std::size_t i = 0; i < xzero_plus.size(); ++i) {
            const double val = -lorentz_dot(x, xzero_plus[i]);
            if (val > lhs_max) {
                lhs_max = val;
                lhs_arg = i;
            }
            if (!(val > 0.0)) report.sides_positive = false;
        }
        double rhs_min = std::numeric_limits<double>::infinity();
        std::size_t rhs_arg = 0;
        for (std::size_t i = 0; i < xzero_minus.size(); ++i) {
            const double val = lorentz_dot(x, xzero_minus[i]);
            if (val < rhs_min) {
                rhs_min = val;
                rhs_arg = i;
            }
            if (!(val > 0.0)) report.sides_positive = false;
        }
        if (xzero_plus.empty() || xzero_minus.empty()) continue;
        const double slack = rhs_min - lhs_max;
        report.min_slack = std::min(report.min_slack, slack);
        if (!(slack > tol) && report.witness.empty()) {
            std::ostringstream os;
            os << "violated at theta=" << arc.start().theta + frac * arc.length() << ": -<x,x0("
               << words_plus[lhs_arg].str() << ")>=" << lhs_max << " vs <x,x0("
               << words_minus[rhs_arg].str() << ")>=" << rhs_min;
            report.witness = os.str();
        }
    }
    if (!std::isfinite(report.min_slack)) report.min_slack = 0.0;
    report.ok = report.witness.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// v_g = k v with v from the seed arc and k the doubled break-even scale;
/// v_h from its cone. Verifies the certificate before returning.
inline std::pair<Deformation, Certificate> construct_counterexample(
    const GeneratorPair& pair, const SchottkySystem& sys, int n, double seed_t = 0.5,
    double tol = default_tolerance()) {
    if (n < 1) throw Error("construct_counterexample: n must be >= 1");
    const VhChoice vh = choose_vh(sys, tol);
    const SeedReport seed = seed_vector(sys, pair, n, seed_t, tol);
    const ScaleChoice sc = choose_scale(seed.seed, vh.vh, pair, n, tol);
    Deformation d{pair, seed.seed * sc.k, vh.vh,
                  {n, seed.seed, sc.k, "sum-of-cone-extremes"}};
    Certificate cert = verify_counterexample(d, n, {}, tol);
    if (!cert.pass) {
        const double overall = cert.min_alpha_overall();
        Word worst = cert.violator_word;
        double worst_alpha = cert.violator_alpha;
        for (const auto& lm : cert.min_alpha_by_length) {
            if (lm.min_alpha == overall) {
                worst = lm.argmin;
                worst_alpha = lm.min_alpha;
            }
        }
        throw VerificationFailed("construct_counterexample: certificate failed", worst,
                                 worst_alpha);
    }
    return {std::move(d), std::move(cert)};
}

/// The two-generator construction: alpha(gamma) > 0, alpha(eta) > 0,
/// alpha(gamma eta) < 0 — the n = 1 counterexample.
inline std::pair<Deformation, Certificate> drumm_pair(const GeneratorPair& pair,
                                                      const SchottkySystem& sys,
                                                      double tol = default_tolerance()) {
    return construct_counterexample(pair, sys, 1, 0.5, tol);
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

struct PipelineOptions {
    double seed_t = 0.5;
    int propc_depth_floor = 6;   // cancellation check depth = max(n, floor)
    int propc_arc_samples = 64;
    int schottky_samples = 256;
    SchottkyBuildOptions schottky;
};

struct PipelineResult {
    GeneratorPair pair;  // normalized
    bool h_inverted = false;
    SchottkySystem sys;
    SchottkyCheck schottky_check;
    PropertyCReport propc;
    Deformation deformation;
    Certificate certificate;
};

/// transversal normalization -> Schottky system -> ping-pong verification ->
/// bounded cancellation check to depth max(n, floor) -> construction ->
/// certificate. Throws on any infeasibility; a failed certificate surfaces
/// as VerificationFailed.
inline PipelineResult run_pipeline(const LorentzIsometry& g, const LorentzIsometry& h, int n,
                                   const PipelineOptions& opts = {},
                                   double tol = default_tolerance()) {
    if (n < 1) throw Error("run_pipeline: n must be >= 1");
    const TransversalResult tr = is_transversal(g, h, tol);
    if (!tr.transversal) throw Infeasible("run_pipeline: generators are not transversal");
    PipelineResult out{tr.pair, tr.inverted,
                       build_schottky_system(tr.pair, opts.schottky),
                       {}, {}, {}, {}};
    out.schottky_check = verify_schottky(out.sys, out.pair, opts.schottky_samples, tol);
    if (!out.schottky_check.ok) {
        throw Infeasible("run_pipeline: Schottky verification failed: " +
                         out.schottky_check.first_violation);
    }
    out.propc = check_property_c(out.pair, std::max(n, opts.propc_depth_floor),
                                 opts.propc_arc_samples, tol);
    if (!out.propc.ok) {
        throw Infeasible("run_pipeline: cancellation check failed: " + out.propc.witness);
    }
    auto [d, cert] = construct_counterexample(out.pair, out.sys, n, opts.seed_t, tol);
    out.deformation = std::move(d);
    out.certificate = std::move(cert);
    return out;
}

}  // namespace margulis
