#pragma once

// Words in the free group on two generators: free and cyclic reduction,
// canonical class representatives, bounded enumeration, evaluation into
// isometries. The terminal letter of a word is its leftmost letter (the one
// applied last under the left action).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "margulis/isometry.hpp"

namespace margulis {

struct NotReduced : Error {
    using Error::Error;
};

struct NotCyclicallyReduced : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Letters
// ---------------------------------------------------------------------------

/// One generator letter g_i^s with i in {1,2}, s in {+1,-1}.
/// Lexicographic order: g < g^-1 < h < h^-1 (codes 0..3).
struct Letter {
    int gen = 1;
    int sign = +1;

    constexpr Letter() = default;
    constexpr Letter(int g, int s) : gen(g), sign(s) {}

    constexpr int code() const { return (gen - 1) * 2 + (sign < 0 ? 1 : 0); }

    static constexpr Letter from_code(int c) { return Letter{c / 2 + 1, (c % 2 == 0) ? +1 : -1}; }

    constexpr Letter inverse() const { return {gen, -sign}; }

    constexpr bool operator==(const Letter& o) const = default;

    char symbol() const {
        static constexpr char tbl[4] = {'g', 'G', 'h', 'H'};
        return tbl[code()];
    }
};

inline constexpr Letter kG{1, +1};
inline constexpr Letter kGinv{1, -1};
inline constexpr Letter kH{2, +1};
inline constexpr Letter kHinv{2, -1};

// ---------------------------------------------------------------------------
// Word
// ---------------------------------------------------------------------------

class Word {
  public:
    Word() = default;

    /// Requires an already freely reduced letter sequence; use reduce() to
    /// build a Word from an arbitrary one.
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
        for (std::size_t i = 0; i + 1 < letters_.size(); ++i) {
            if (letters_[i + 1] == letters_[i].inverse()) {
                throw NotReduced("Word: adjacent inverse letters");
            }
        }
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }

    bool is_cyclically_reduced() const {
        if (letters_.size() < 2) return true;
        return letters_.back() != letters_.front().inverse();
    }

    Word inverse() const {
        std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
        for (Letter& l : inv) l = l.inverse();
        return Word(std::move(inv));
    }

    bool operator==(const Word& o) const { return letters_ == o.letters_; }

    /// Length-then-lexicographic order, matching the enumeration order.
    std::strong_ordering operator<=>(const Word& o) const {
        if (letters_.size() != o.letters_.size()) {
            return letters_.size() <=> o.letters_.size();
        }
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (letters_[i].code() != o.letters_[i].code()) {
                return letters_[i].code() <=> o.letters_[i].code();
            }
        }
        return std::strong_ordering::equal;
    }

    /// Compact form: one symbol per letter, g/G/h/H (G = g^-1, H = h^-1).
    std::string str() const {
        if (letters_.empty()) return "1";
        std::string s;
        s.reserve(letters_.size());
        for (const Letter& l : letters_) s.push_back(l.symbol());
        return s;
    }

    static Word parse(std::string_view text) {
        if (text == "1") return Word{};
        std::vector<Letter> ls;
        ls.reserve(text.size());
        for (char c : text) {
            switch (c) {
                case 'g': ls.push_back(kG); break;
                case 'G': ls.push_back(kGinv); break;
                case 'h': ls.push_back(kH); break;
                case 'H': ls.push_back(kHinv); break;
                case ' ': break;
                default: throw Error(std::string("Word::parse: bad symbol '") + c + "'");
            }
        }
        return Word(std::move(ls));
    }

  private:
    std::vector<Letter> letters_;
};

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

/// Free reduction of an arbitrary letter sequence. Idempotent.
inline Word reduce(const std::vector<Letter>& letters) {
    std::vector<Letter> stack;
    stack.reserve(letters.size());
    for (const Letter& l : letters) {
        if (!stack.empty() && stack.back() == l.inverse()) {
            stack.pop_back();
        } else {
            stack.push_back(l);
        }
    }
    return Word(std::move(stack));
}

inline Word concat(const Word& a, const Word& b) {
    std::vector<Letter> ls = a.letters();
    ls.insert(ls.end(), b.letters().begin(), b.letters().end());
    return reduce(ls);
}

struct CyclicReduction {
    Word core;        // cyclically reduced
    Word conjugator;  // w = conjugator * core * conjugator^-1
};

/// Peels mutually inverse first/last letters off a reduced word.
inline CyclicReduction cyclic_reduce(const Word& w) {
    std::vector<Letter> core = w.letters();
    std::vector<Letter> conj;
    while (core.size() >= 2 && core.back() == core.front().inverse()) {
        conj.push_back(core.front());
        core.erase(core.begin());
        core.pop_back();
    }
    return {Word(std::move(core)), Word(std::move(conj))};
}

/// Cyclic rotation by k: letters[k..] + letters[..k]. The rotation of a
/// cyclically reduced word is again cyclically reduced.
inline Word rotate(const Word& w, std::size_t k) {
    if (!w.is_cyclically_reduced()) throw NotCyclicallyReduced("rotate: word not cyclically reduced");
    if (w.empty()) return w;
    k %= w.size();
    std::vector<Letter> ls;
    ls.reserve(w.size());
    ls.insert(ls.end(), w.letters().begin() + static_cast<std::ptrdiff_t>(k), w.letters().end());
    ls.insert(ls.end(), w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(k));
    return Word(std::move(ls));
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Every cyclically reduced word of length 1..max_len exactly once, in
/// length-then-lexicographic order (letter order g < g^-1 < h < h^-1).
inline void enumerate_cyclically_reduced(int max_len,
                                         const std::function<void(const Word&)>& yield) {
    if (max_len < 1) throw Error("enumerate_cyclically_reduced: max_len must be >= 1");
    std::vector<Letter> current;
    const std::function<void(int)> rec = [&](int target) {
        if (static_cast<int>(current.size()) == target) {
            if (current.back() != current.front().inverse() || target == 1) {
                yield(Word(current));
            }
            return;
        }
        for (int c = 0; c < 4; ++c) {
            const Letter l = Letter::from_code(c);
            if (!current.empty() && l == current.back().inverse()) continue;
            current.push_back(l);
            rec(target);
            current.pop_back();
        }
    };
    for (int len = 1; len <= max_len; ++len) {
        current.clear();
        rec(len);
    }
}

inline std::vector<Word> cyclically_reduced_words(int max_len) {
    std::vector<Word> out;
    enumerate_cyclically_reduced(max_len, [&](const Word& w) { out.push_back(w); });
    return out;
}

/// True when w is the length-lex minimum of its class under cyclic rotation
/// and inversion. alpha is invariant under both, so these representatives
/// suffice for verification sweeps.
inline bool is_canonical_class_rep(const Word& w) {
    if (!w.is_cyclically_reduced()) throw NotCyclicallyReduced("is_canonical_class_rep");
    if (w.empty()) return true;
    const Word winv = w.inverse();
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (rotate(w, k) < w) return false;
        if (rotate(winv, k) < w) return false;
    }
    return true;
}

/// Deduplicated enumeration: one representative per {rotation, inversion}
/// class, lengths 1..max_len.
inline std::vector<Word> cyclically_reduced_classes(int max_len) {
    std::vector<Word> out;
    enumerate_cyclically_reduced(max_len, [&](const Word& w) {
        if (is_canonical_class_rep(w)) out.push_back(w);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Word order composition; the leftmost (terminal) letter is applied last.
inline AffineIsometry evaluate(const Word& w, const AffineIsometry& gen1,
                               const AffineIsometry& gen2) {
    AffineIsometry acc = AffineIsometry::identity();
    const AffineIsometry inv1 = gen1.inverse();
    const AffineIsometry inv2 = gen2.inverse();
    for (const Letter& l : w.letters()) {
        const AffineIsometry& factor =
            (l.gen == 1) ? (l.sign > 0 ? gen1 : inv1) : (l.sign > 0 ? gen2 : inv2);
        acc = acc * factor;
    }
    return acc;
}

inline LorentzIsometry evaluate_linear(const Word& w, const LorentzIsometry& gen1,
                                       const LorentzIsometry& gen2) {
    LorentzIsometry acc = LorentzIsometry::identity();
    const LorentzIsometry inv1 = gen1.inverse();
    const LorentzIsometry inv2 = gen2.inverse();
    for (const Letter& l : w.letters()) {
        const LorentzIsometry& factor =
            (l.gen == 1) ? (l.sign > 0 ? gen1 : inv1) : (l.sign > 0 ? gen2 : inv2);
        acc = acc * factor;
    }
    return acc;
}

/// Spectral data of an evaluated word. x^- comes from power iteration on the
/// inverse word composed letter by letter: inverting the composed matrix via
/// J m^T J amplifies the factors' rounding once entries are large, while the
/// reversed-letter product stays as accurate as the forward one.
inline HyperbolicData word_spectral_data(const Word& w, const LorentzIsometry& gen1,
                                         const LorentzIsometry& gen2,
                                         double tol = default_tolerance()) {
    const Mat3 fwd = evaluate_linear(w, gen1, gen2).matrix();
    const Mat3 bwd = evaluate_linear(w.inverse(), gen1, gen2).matrix();
    const Vec3 xplus = detail::dominant_direction(fwd);
    const Vec3 xminus = detail::dominant_direction(bwd);
    const double lambda = 1.0 / euclidean_dot(bwd * xminus, xminus);
    if (!(lambda > 0.0) || std::abs(lambda - 1.0) < 1e-6) {
        throw NotHyperbolic("eigenvalue too close to 1");
    }
    if (lambda > 1.0) throw NotHyperbolic("contracting eigenvalue exceeds 1");
    const Vec3 cross = lorentz_cross(xminus, xplus);
    const double q = lorentz_dot(cross, cross);
    if (!(q > tol)) throw NotHyperbolic("degenerate eigenvector pair");
    return {lambda, xminus, xplus, cross / std::sqrt(q)};
}

}  // namespace margulis
