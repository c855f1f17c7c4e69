#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "margulis/invariant.hpp"

using namespace margulis;

namespace {

std::mt19937_64 rng(90125ULL);

// The default group: purely hyperbolic, so every non-trivial word has a
// Margulis invariant.
struct Fixture {
    LorentzIsometry g = LorentzIsometry::identity();
    LorentzIsometry h = LorentzIsometry::identity();

    Fixture() {
        g = make_hyperbolic({1, 0, 0}, std::exp(-2.0)).first;
        h = make_hyperbolic({0, 1, 0}, std::exp(-4.0)).first;
    }

    AffineIsometry gamma(const Vec3& vg) const { return {g, vg}; }
    AffineIsometry eta(const Vec3& vh) const { return {h, vh}; }
};

Vec3 random_vec() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng), u(rng)};
}

Word random_cyclically_reduced(int max_len) {
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> code(0, 3);
    const int len = len_dist(rng);
    for (;;) {
        std::vector<Letter> ls;
        while (static_cast<int>(ls.size()) < len) {
            const Letter l = Letter::from_code(code(rng));
            if (!ls.empty() && l == ls.back().inverse()) continue;
            ls.push_back(l);
        }
        Word w(std::move(ls));
        if (w.is_cyclically_reduced()) return w;
    }
}

}  // namespace

TEST_CASE("alpha_direct basics") {
    const Fixture f;
    SECTION("translation along the axis") {
        CHECK(alpha_direct(f.gamma({2, 0, 0})) == Catch::Approx(2.0));
    }
    SECTION("translation orthogonal to the axis") {
        CHECK(alpha_direct(f.gamma({0, 0, 1})) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("not hyperbolic") {
        CHECK_THROWS_AS(alpha_direct(AffineIsometry{LorentzIsometry::identity(), {1, 0, 0}}),
                        NotHyperbolic);
    }
    SECTION("independent of base point: alpha from gamma(p)-p for random p") {
        const AffineIsometry gamma = f.gamma({0.7, -0.3, 0.2});
        const HyperbolicData d = spectral_data(gamma.linear);
        const double a0 = alpha_direct(gamma);
        for (int i = 0; i < 10; ++i) {
            const Vec3 p = random_vec();
            const double ap = lorentz_dot(gamma(p) - p, d.xzero);
            CHECK(ap == Catch::Approx(a0).margin(1e-9));
        }
    }
}

TEST_CASE("alpha is invariant under inversion and conjugation") {
    const Fixture f;
    const Vec3 vg = random_vec();
    const Vec3 vh = random_vec();
    const AffineIsometry gamma = f.gamma(vg);
    const AffineIsometry eta = f.eta(vh);
    for (int i = 0; i < 200; ++i) {
        const Word w = random_cyclically_reduced(5);
        const double a = alpha_of_word(w, gamma, eta);
        const double tol = 1e-8 * std::max(1.0, std::abs(a));
        CHECK(std::abs(alpha_of_word(w.inverse(), gamma, eta) - a) <= tol);
        // conjugation by a group element, at the word level
        const Word c = random_cyclically_reduced(2);
        const Word conjugated = concat(concat(c, w), c.inverse());
        CHECK(std::abs(alpha_of_word(conjugated, gamma, eta) - a) <= tol);
    }
    // conjugation by arbitrary affine isometries (not group elements)
    for (int i = 0; i < 50; ++i) {
        const Word w = random_cyclically_reduced(3);
        const AffineIsometry x = evaluate(w, gamma, eta);
        const double a = alpha_direct(x);
        const double tol = 1e-8 * std::max(1.0, std::abs(a));
        Vec3 axis = random_vec();
        while (classify(axis) != CausalClass::Spacelike || lorentz_dot(axis, axis) < 0.05) {
            axis = random_vec();
        }
        const AffineIsometry conj{
            make_hyperbolic(lorentz_normalized_spacelike(axis), 0.5).first, random_vec()};
        CHECK(std::abs(alpha_direct(conj * x * conj.inverse()) - a) <= tol);
    }
}

TEST_CASE("decompose follows the cyclic-sum bookkeeping") {
    SECTION("w = gh") {
        const SummandDecomposition d = decompose(Word::parse("gh"));
        REQUIRE(d.terms.size() == 2);
        CHECK(d.terms[0].gen == 1);
        CHECK(d.terms[0].word.str() == "gh");
        CHECK(d.terms[1].gen == 2);
        CHECK(d.terms[1].word.str() == "hg");
    }
    SECTION("w = gH") {
        const SummandDecomposition d = decompose(Word::parse("gH"));
        REQUIRE(d.terms.size() == 2);
        CHECK(d.terms[0].gen == 1);
        CHECK(d.terms[0].word.str() == "gH");
        CHECK(d.terms[1].gen == 2);
        CHECK(d.terms[1].word.str() == "hG");
    }
    SECTION("w = g h^n") {
        const int n = 4;
        const SummandDecomposition d = decompose(Word::parse("ghhhh"));
        REQUIRE(d.terms.size() == static_cast<std::size_t>(n + 1));
        CHECK(d.terms[0].gen == 1);
        CHECK(d.terms[0].word.str() == "ghhhh");
        // letter k (an h) contributes h^{n-k} g h^k, k = 0..n-1
        for (int k = 0; k < n; ++k) {
            CHECK(d.terms[static_cast<std::size_t>(k + 1)].gen == 2);
            std::string expect;
            for (int j = 0; j < n - k; ++j) expect += 'h';
            expect += 'g';
            for (int j = 0; j < k; ++j) expect += 'h';
            CHECK(d.terms[static_cast<std::size_t>(k + 1)].word.str() == expect);
        }
    }
    SECTION("every produced term is cyclically reduced with stated terminal letter") {
        enumerate_cyclically_reduced(5, [&](const Word& w) {
            const SummandDecomposition d = decompose(w);
            CHECK(d.terms.size() == w.size());
            for (const Summand& t : d.terms) {
                CHECK(t.word.is_cyclically_reduced());
                CHECK(t.word[0].gen == t.gen);
                CHECK(t.word[0].sign == +1);
            }
        });
    }
    SECTION("rejects non-cyclically-reduced input") {
        CHECK_THROWS_AS(decompose(Word::parse("ghG")), NotCyclicallyReduced);
        CHECK_THROWS_AS(decompose(Word{}), NotCyclicallyReduced);
    }
}

TEST_CASE("alpha_sum equals alpha_direct") {
    const Fixture f;
    const Vec3 vg = random_vec();
    const Vec3 vh = random_vec();
    const AffineIsometry gamma = f.gamma(vg);
    const AffineIsometry eta = f.eta(vh);
    SECTION("single letter reduces to alpha_direct") {
        const double direct = alpha_direct(gamma);
        CHECK(alpha_sum(Word::parse("g"), vg, vh, f.g, f.h) == Catch::Approx(direct).margin(1e-10));
    }
    SECTION("exhaustive up to length 4") {
        enumerate_cyclically_reduced(4, [&](const Word& w) {
            const double direct = alpha_of_word(w, gamma, eta);
            const double sum = alpha_sum(w, vg, vh, f.g, f.h);
            CHECK(std::abs(sum - direct) <= 1e-8 * std::max(1.0, std::abs(direct)));
        });
    }
}

TEST_CASE("alpha_sum is linear in the translational parts") {
    const Fixture f;
    const Word w = Word::parse("ghGhh");
    const Vec3 a1 = random_vec(), a2 = random_vec(), b1 = random_vec(), b2 = random_vec();
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double s = u(rng), t = u(rng);
    const double lhs = alpha_sum(w, a1 * s + a2 * t, b1 * s + b2 * t, f.g, f.h);
    const double rhs = s * alpha_sum(w, a1, b1, f.g, f.h) + t * alpha_sum(w, a2, b2, f.g, f.h);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("conjugate pairing") {
    SECTION("w = g h g^-1 h pairs one W+ with one W- term") {
        const PairingReport r = conjugate_pairing(decompose(Word::parse("ghGh")));
        REQUIRE(r.ok);
        REQUIRE(r.pairs.size() == 1);
        CHECK(r.pairs[0].power == 1);
    }
    SECTION("w = gh has no terms of either type") {
        const PairingReport r = conjugate_pairing(decompose(Word::parse("gh")));
        CHECK(r.ok);
        CHECK(r.pairs.empty());
    }
    SECTION("pairing succeeds on every cyclically reduced word up to length 5") {
        enumerate_cyclically_reduced(5, [&](const Word& w) {
            const PairingReport r = conjugate_pairing(decompose(w));
            CHECK(r.ok);
        });
    }
    SECTION("hand-built unbalanced decomposition is reported with witness") {
        SummandDecomposition bad;
        bad.terms.push_back({1, Word::parse("ghGh")});
        const PairingReport r = conjugate_pairing(bad);
        CHECK_FALSE(r.ok);
        CHECK(r.unmatched_term.has_value());
        CHECK_FALSE(r.failure.empty());
    }
}
