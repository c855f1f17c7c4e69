#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "margulis/words.hpp"

using namespace margulis;

namespace {

std::mt19937_64 rng(424242ULL);

// brute-force oracle: all reduced words of exactly length L
std::vector<Word> all_reduced(int len) {
    std::vector<Word> out;
    std::vector<Letter> cur;
    const std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == len) {
            out.emplace_back(cur);
            return;
        }
        for (int c = 0; c < 4; ++c) {
            const Letter l = Letter::from_code(c);
            if (!cur.empty() && l == cur.back().inverse()) continue;
            cur.push_back(l);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

Word random_reduced_word(int max_len) {
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> code(0, 3);
    const int len = len_dist(rng);
    std::vector<Letter> ls;
    while (static_cast<int>(ls.size()) < len) {
        const Letter l = Letter::from_code(code(rng));
        if (!ls.empty() && l == ls.back().inverse()) continue;
        ls.push_back(l);
    }
    return Word(std::move(ls));
}

}  // namespace

TEST_CASE("reduce") {
    const Word w = reduce({kG, kH, kHinv, kG});
    CHECK(w.str() == "gg");
    CHECK(reduce({kG, kGinv}).empty());
    const std::vector<Letter> already{kG, kH, kGinv};
    CHECK(reduce(already).letters() == already);
    // idempotent
    CHECK(reduce(reduce({kH, kG, kGinv, kHinv, kH}).letters()).str() == "h");
}

TEST_CASE("cyclic_reduce") {
    SECTION("g h g^-1") {
        const auto [core, conj] = cyclic_reduce(Word::parse("ghG"));
        CHECK(core.str() == "h");
        CHECK(conj.str() == "g");
    }
    SECTION("already cyclically reduced") {
        const auto [core, conj] = cyclic_reduce(Word::parse("gh"));
        CHECK(core.str() == "gh");
        CHECK(conj.empty());
    }
    SECTION("empty word") {
        const auto [core, conj] = cyclic_reduce(Word{});
        CHECK(core.empty());
        CHECK(conj.empty());
    }
    SECTION("conjugation identity w = c * core * c^-1") {
        for (int i = 0; i < 50; ++i) {
            const Word w = random_reduced_word(8);
            const auto [core, conj] = cyclic_reduce(w);
            CHECK(core.is_cyclically_reduced());
            CHECK(concat(concat(conj, core), conj.inverse()) == w);
        }
    }
}

TEST_CASE("enumeration counts match the brute-force oracle") {
    // length 1: the four letters
    std::vector<Word> len1;
    enumerate_cyclically_reduced(1, [&](const Word& w) { len1.push_back(w); });
    REQUIRE(len1.size() == 4);
    CHECK(len1[0].str() == "g");
    CHECK(len1[1].str() == "G");
    CHECK(len1[2].str() == "h");
    CHECK(len1[3].str() == "H");

    for (int len = 1; len <= 5; ++len) {
        std::set<Word> expected;
        for (const Word& w : all_reduced(len)) {
            if (w.is_cyclically_reduced()) expected.insert(w);
        }
        std::set<Word> got;
        std::size_t emitted = 0;
        enumerate_cyclically_reduced(len, [&](const Word& w) {
            if (static_cast<int>(w.size()) == len) {
                got.insert(w);
                ++emitted;
            }
            CHECK(w.is_cyclically_reduced());
        });
        CHECK(emitted == got.size());  // exactly once
        CHECK(got == expected);
    }
}

TEST_CASE("every emitted word has empty cyclic-reduction conjugator") {
    enumerate_cyclically_reduced(4, [&](const Word& w) {
        CHECK(cyclic_reduce(w).conjugator.empty());
    });
}

TEST_CASE("enumeration is in length-then-lex order") {
    std::vector<Word> all;
    enumerate_cyclically_reduced(4, [&](const Word& w) { all.push_back(w); });
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}

TEST_CASE("class deduplication") {
    const auto classes = cyclically_reduced_classes(3);
    // every class representative is minimal under rotation and inversion
    for (const Word& w : classes) CHECK(is_canonical_class_rep(w));
    // rotations and inversions of a representative are not representatives
    const Word w = Word::parse("ggh");
    CHECK(is_canonical_class_rep(w));
    CHECK_FALSE(is_canonical_class_rep(rotate(w, 1)));
    CHECK_FALSE(is_canonical_class_rep(w.inverse()));
    // classes partition: total count equals full enumeration after expanding classes
    std::set<Word> expanded;
    for (const Word& c : classes) {
        const Word cinv = c.inverse();
        for (std::size_t k = 0; k < c.size(); ++k) {
            expanded.insert(rotate(c, k));
            expanded.insert(rotate(cinv, k));
        }
    }
    std::size_t full = 0;
    enumerate_cyclically_reduced(3, [&](const Word&) { ++full; });
    CHECK(expanded.size() == full);
}

TEST_CASE("evaluate") {
    auto [g, dg] = make_hyperbolic({1, 0, 0}, std::exp(-1.0));
    auto [h, dh] = make_hyperbolic({0, 1, 0}, std::exp(-2.0));
    (void)dg;
    (void)dh;
    const AffineIsometry gamma{g, {0.1, 0.2, 0.3}};
    const AffineIsometry eta{h, {-0.4, 0.5, -0.6}};

    SECTION("empty word evaluates to the identity") {
        const AffineIsometry id = evaluate(Word{}, gamma, eta);
        CHECK(euclidean_norm(id.trans) == 0.0);
        CHECK(id.linear.matrix().m == Mat3::identity().m);
    }
    SECTION("single letters") {
        CHECK(evaluate(Word::parse("g"), gamma, eta).trans == gamma.trans);
        const AffineIsometry hinv = evaluate(Word::parse("H"), gamma, eta);
        CHECK(euclidean_norm(hinv.trans - eta.inverse().trans) <= 1e-12);
    }
    SECTION("w * w^-1 is the identity") {
        for (int i = 0; i < 30; ++i) {
            const Word w = random_reduced_word(6);
            const AffineIsometry fwd = evaluate(w, gamma, eta);
            const AffineIsometry a = fwd * evaluate(w.inverse(), gamma, eta);
            const double scale = std::max(1.0, fwd.linear.matrix().max_abs());
            CHECK(euclidean_norm(a.trans) <= 1e-9 * scale * scale);
            double dist = 0.0;
            for (int k = 0; k < 9; ++k) {
                dist += std::abs(a.linear.matrix().m[static_cast<std::size_t>(k)] -
                                 Mat3::identity().m[static_cast<std::size_t>(k)]);
            }
            CHECK(dist <= 1e-9 * scale * scale);
        }
    }
    SECTION("evaluate is a homomorphism") {
        for (int i = 0; i < 100; ++i) {
            const Word u = random_reduced_word(5);
            const Word v = random_reduced_word(5);
            const AffineIsometry lhs = evaluate(concat(u, v), gamma, eta);
            const AffineIsometry rhs = evaluate(u, gamma, eta) * evaluate(v, gamma, eta);
            const double scale = std::max(1.0, rhs.linear.matrix().max_abs()) *
                                 std::max(1.0, euclidean_norm(rhs.trans));
            CHECK(euclidean_norm(lhs.trans - rhs.trans) <= 1e-9 * scale);
            double dist = 0.0;
            for (int k = 0; k < 9; ++k) {
                dist += std::abs(lhs.linear.matrix().m[static_cast<std::size_t>(k)] -
                                 rhs.linear.matrix().m[static_cast<std::size_t>(k)]);
            }
            CHECK(dist <= 1e-9 * scale);
        }
    }
}

TEST_CASE("word parsing and printing") {
    CHECK(Word::parse("gHg").str() == "gHg");
    CHECK(Word::parse("1").str() == "1");
    CHECK_THROWS_AS(Word::parse("gx"), Error);
    CHECK_THROWS_AS(Word::parse("gG"), NotReduced);
}
