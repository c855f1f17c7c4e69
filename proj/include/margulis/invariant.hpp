#pragma once

// The Margulis invariant alpha, computed directly from the translational part
// and via the cyclic sum formula, together with the summand decomposition and
// the conjugate pairing of g h^i g^-1 / g h^-i g^-1 summands.

#include <map>
#include <optional>
#include <sstream>

#include "margulis/words.hpp"

namespace margulis {

/// alpha(gamma) = <gamma(p) - p, x^0(g)> with p the origin, i.e.
/// <trans(gamma), x^0(linear part)>. Independent of p.
inline double alpha_direct(const AffineIsometry& gamma, double tol = default_tolerance()) {
    const HyperbolicData d = spectral_data(gamma.linear, tol);
    return lorentz_dot(gamma.trans, d.xzero);
}

namespace detail {

// Extended-precision scalar for the translational-part accumulator. alpha of
// a long word is a small number produced by cancellation against entries as
// large as the word's matrix norm (e^{O(word length)}), which outruns double
// and even 80-bit long double at the tolerances in play.
#if defined(__SIZEOF_FLOAT128__)
using ext_real = __float128;
#else
using ext_real = long double;
#endif

struct ExtVec {
    ext_real x1 = 0, x2 = 0, x3 = 0;
};

using ExtMat = std::array<ext_real, 9>;

inline ext_real ext_abs(ext_real v) { return v < 0 ? -v : v; }

inline ExtVec ext_apply(const ExtMat& m, const ExtVec& v) {
    return {m[0] * v.x1 + m[1] * v.x2 + m[2] * v.x3,
            m[3] * v.x1 + m[4] * v.x2 + m[5] * v.x3,
            m[6] * v.x1 + m[7] * v.x2 + m[8] * v.x3};
}

inline ext_real ext_lorentz_dot(const ExtVec& a, const ExtVec& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3;
}

inline ExtVec ext_lorentz_cross(const ExtVec& v, const ExtVec& w) {
    return {v.x2 * w.x3 - v.x3 * w.x2, v.x3 * w.x1 - v.x1 * w.x3,
            -(v.x1 * w.x2 - v.x2 * w.x1)};
}

/// sqrt by Newton refinement from a double seed; avoids libquadmath.
inline ext_real ext_sqrt(ext_real q) {
    ext_real s = static_cast<ext_real>(std::sqrt(static_cast<double>(q)));
    for (int i = 0; i < 4; ++i) s = (s + q / s) / 2;
    return s;
}

/// Power iteration refined in extended precision from a double-precision
/// start direction; renormalizes by the largest component.
inline ExtVec ext_dominant(const ExtMat& m, const Vec3& start) {
    ExtVec v{static_cast<ext_real>(start.x1), static_cast<ext_real>(start.x2),
             static_cast<ext_real>(start.x3)};
    for (int it = 0; it < 2000; ++it) {
        ExtVec w = ext_apply(m, v);
        ext_real scale = ext_abs(w.x1);
        if (ext_abs(w.x2) > scale) scale = ext_abs(w.x2);
        if (ext_abs(w.x3) > scale) scale = ext_abs(w.x3);
        w = {w.x1 / scale, w.x2 / scale, w.x3 / scale};
        if (w.x3 < 0) w = {-w.x1, -w.x2, -w.x3};
        const ext_real delta =
            ext_abs(w.x1 - v.x1) + ext_abs(w.x2 - v.x2) + ext_abs(w.x3 - v.x3);
        v = w;
        if (delta < static_cast<ext_real>(1e-32)) break;
    }
    return v;
}

struct ExtAffine {
    ExtMat m{1, 0, 0, 0, 1, 0, 0, 0, 1};
    ExtVec t;

    void compose_with(const AffineIsometry& f) {
        const ExtVec ft{static_cast<ext_real>(f.trans.x1), static_cast<ext_real>(f.trans.x2),
                        static_cast<ext_real>(f.trans.x3)};
        const ExtVec shifted = ext_apply(m, ft);
        t = {t.x1 + shifted.x1, t.x2 + shifted.x2, t.x3 + shifted.x3};
        ExtMat prod{};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                ext_real s = 0;
                for (int k = 0; k < 3; ++k) {
                    s += m[static_cast<std::size_t>(3 * r + k)] *
                         static_cast<ext_real>(f.linear.matrix()(k, c));
                }
                prod[static_cast<std::size_t>(3 * r + c)] = s;
            }
        }
        m = prod;
    }
};

}  // namespace detail

/// alpha of the evaluated word. The whole pipeline (composition, the
/// eigendirections, the axis vector and the final Lorentz dot) runs in
/// extended precision: <t, x^0> cancels from the scale of the word's matrix
/// entries down to O(alpha), so every factor needs the extra digits.
/// Agrees with alpha_direct(evaluate(w, ...)) wherever double suffices.
inline double alpha_of_word(const Word& w, const AffineIsometry& gen1, const AffineIsometry& gen2,
                            double tol = default_tolerance()) {
    // gate + double-precision start directions
    const HyperbolicData d = word_spectral_data(w, gen1.linear, gen2.linear, tol);
    detail::ExtAffine acc;
    detail::ExtAffine acc_inv;
    const AffineIsometry inv1 = gen1.inverse();
    const AffineIsometry inv2 = gen2.inverse();
    for (const Letter& l : w.letters()) {
        acc.compose_with((l.gen == 1) ? (l.sign > 0 ? gen1 : inv1)
                                      : (l.sign > 0 ? gen2 : inv2));
    }
    const Word winv = w.inverse();
    for (const Letter& l : winv.letters()) {
        acc_inv.compose_with((l.gen == 1) ? (l.sign > 0 ? gen1 : inv1)
                                          : (l.sign > 0 ? gen2 : inv2));
    }
    const detail::ExtVec xplus = detail::ext_dominant(acc.m, d.xplus);
    const detail::ExtVec xminus = detail::ext_dominant(acc_inv.m, d.xminus);
    detail::ExtVec xzero = detail::ext_lorentz_cross(xminus, xplus);
    const detail::ext_real q = detail::ext_lorentz_dot(xzero, xzero);
    if (!(static_cast<double>(q) > 0.0)) throw NotHyperbolic("degenerate eigenvector pair");
    const detail::ext_real inv_norm = 1 / detail::ext_sqrt(q);
    xzero = {xzero.x1 * inv_norm, xzero.x2 * inv_norm, xzero.x3 * inv_norm};
    return static_cast<double>(detail::ext_lorentz_dot(acc.t, xzero));
}

// ---------------------------------------------------------------------------
// Summand decomposition
// ---------------------------------------------------------------------------

/// One summand <v_{gen}, x^0(word)> of the cyclic sum formula: the word is
/// cyclically reduced with terminal letter equal to that generator with
/// positive exponent.
struct Summand {
    int gen = 1;  // 1 or 2
    Word word;
};

struct SummandDecomposition {
    std::vector<Summand> terms;  // in source-letter order
};

/// Rewrites a cyclically reduced word into one summand per letter:
///   - letter g_i at position k contributes the cyclic rotation starting at k;
///   - letter g_i^-1 at position k contributes g_i * (rotation without that
///     letter)^-1.
/// Every produced word is cyclically reduced with the stated terminal letter.
inline SummandDecomposition decompose(const Word& w) {
    if (!w.is_cyclically_reduced() || w.empty()) {
        throw NotCyclicallyReduced("decompose: word must be non-empty and cyclically reduced");
    }
    const std::size_t m = w.size();
    SummandDecomposition out;
    out.terms.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Letter l = w[k];
        if (l.sign > 0) {
            out.terms.push_back({l.gen, rotate(w, k)});
        } else {
            // rotation starting after position k, without the letter itself
            std::vector<Letter> rest;
            rest.reserve(m - 1);
            for (std::size_t j = k + 1; j < m; ++j) rest.push_back(w[j]);
            for (std::size_t j = 0; j < k; ++j) rest.push_back(w[j]);
            std::vector<Letter> term;
            term.reserve(m);
            term.push_back(Letter{l.gen, +1});
            for (auto it = rest.rbegin(); it != rest.rend(); ++it) term.push_back(it->inverse());
            Word tw{std::move(term)};
            if (!tw.is_cyclically_reduced()) {
                throw NotCyclicallyReduced("decompose: produced term not cyclically reduced");
            }
            out.terms.push_back({l.gen, std::move(tw)});
        }
    }
    return out;
}

/// The cyclic sum formula: sum over terms of <v_{gen}, x^0(term word)>.
inline double alpha_sum(const Word& w, const Vec3& v1, const Vec3& v2, const LorentzIsometry& g1,
                        const LorentzIsometry& g2, double tol = default_tolerance()) {
    const SummandDecomposition d = decompose(w);
    double total = 0.0;
    for (const Summand& t : d.terms) {
        const HyperbolicData hd = word_spectral_data(t.word, g1, g2, tol);
        total += lorentz_dot(t.gen == 1 ? v1 : v2, hd.xzero);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Conjugate pairing
// ---------------------------------------------------------------------------

/// Match of one generator-1 term with prefix g h^i g^-1 against one with
/// prefix g h^-i g^-1 (same i).
struct ConjugatePair {
    std::size_t plus_term = 0;   // index into SummandDecomposition::terms
    std::size_t minus_term = 0;
    int power = 0;  // the shared i > 0
};

struct PairingReport {
    bool ok = false;
    std::vector<ConjugatePair> pairs;
    std::string failure;                      // empty when ok
    std::optional<std::size_t> unmatched_term;  // witness index when not ok
};

namespace detail {

/// Classifies a term word as g h^{s*i} g^-1 ... , returning (s, i) or nothing.
inline std::optional<std::pair<int, int>> w_class_prefix(const Word& w) {
    const auto& ls = w.letters();
    if (ls.size() < 3) return std::nullopt;
    if (!(ls[0] == kG)) return std::nullopt;
    if (ls[1].gen != 2) return std::nullopt;
    const int s = ls[1].sign;
    std::size_t i = 1;
    while (i < ls.size() && ls[i] == Letter{2, s}) ++i;
    if (i >= ls.size()) return std::nullopt;
    if (!(ls[i] == kGinv)) return std::nullopt;
    return std::make_pair(s, static_cast<int>(i - 1));
}

}  // namespace detail

/// For each i > 0, matches generator-1 terms whose word has prefix g h^i g^-1
/// bijectively with those having prefix g h^-i g^-1. A failure would falsify
/// the pairing lemma and is reported with the unmatched term as witness.
inline PairingReport conjugate_pairing(const SummandDecomposition& d) {
    std::map<int, std::vector<std::size_t>> plus, minus;
    for (std::size_t idx = 0; idx < d.terms.size(); ++idx) {
        const Summand& t = d.terms[idx];
        if (t.gen != 1) continue;
        if (const auto cls = detail::w_class_prefix(t.word)) {
            (cls->first > 0 ? plus : minus)[cls->second].push_back(idx);
        }
    }
    PairingReport report;
    for (const auto& [i, plus_idx] : plus) {
        const auto it = minus.find(i);
        const std::size_t nminus = (it == minus.end()) ? 0 : it->second.size();
        if (plus_idx.size() != nminus) {
            report.ok = false;
            report.unmatched_term = plus_idx[std::min(plus_idx.size(), nminus)];
            std::ostringstream os;
            os << "unbalanced classes at i=" << i << ": " << plus_idx.size() << " of g h^i g^-1 vs "
               << nminus << " of g h^-i g^-1";
            report.failure = os.str();
            return report;
        }
        for (std::size_t k = 0; k < plus_idx.size(); ++k) {
            report.pairs.push_back({plus_idx[k], it->second[k], i});
        }
    }
    for (const auto& [i, minus_idx] : minus) {
        if (plus.find(i) == plus.end()) {
            report.ok = false;
            report.unmatched_term = minus_idx.front();
            std::ostringstream os;
            os << "unbalanced classes at i=" << i << ": 0 of g h^i g^-1 vs " << minus_idx.size()
               << " of g h^-i g^-1";
            report.failure = os.str();
            return report;
        }
    }
    report.ok = true;
    return report;
}

}  // namespace margulis
