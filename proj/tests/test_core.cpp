#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "margulis/core.hpp"

using namespace margulis;

namespace {
std::mt19937_64 rng(20260810ULL);
}  // namespace

TEST_CASE("lorentz_dot basics") {
    CHECK(lorentz_dot({1, 0, 0}, {1, 0, 0}) == 1.0);
    CHECK(lorentz_dot({0, 0, 1}, {0, 0, 1}) == -1.0);
    CHECK(lorentz_dot({1, 1, 1}, {1, -1, 1}) == -1.0);
    // symmetry and bilinearity on random inputs
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Vec3 x{u(rng), u(rng), u(rng)};
        const Vec3 y{u(rng), u(rng), u(rng)};
        const Vec3 z{u(rng), u(rng), u(rng)};
        const double s = u(rng);
        CHECK(lorentz_dot(x, y) == Catch::Approx(lorentz_dot(y, x)));
        CHECK(lorentz_dot(x + z * s, y) ==
              Catch::Approx(lorentz_dot(x, y) + s * lorentz_dot(z, y)).margin(1e-12));
    }
}

TEST_CASE("classify") {
    CHECK(classify({1, 0, 0}) == CausalClass::Spacelike);
    CHECK(classify({1, 0, 1}) == CausalClass::Lightlike);
    CHECK(classify({0, 0, 0}) == CausalClass::Zero);
    CHECK(classify({0, 0, 1}) == CausalClass::Timelike);
    // tolerance band maps nearly-null vectors to Lightlike
    CHECK(classify({1, 0, 1 + 1e-12}) == CausalClass::Lightlike);
    CHECK_THROWS_AS(classify({1, 0, std::nan("")}), NonFiniteInput);
}

TEST_CASE("lorentz_cross examples") {
    // expected values from solving <e_i, c> = det[e_i v w]
    CHECK(lorentz_cross({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, -1});
    CHECK(lorentz_cross({1, 0, 0}, {0, 0, 1}) == Vec3{0, -1, 0});
    const Vec3 v{0.3, -1.2, 0.7};
    CHECK(lorentz_cross(v, v) == Vec3{0, 0, 0});
}

TEST_CASE("cross product determinant identity, 1000 random triples") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a{u(rng), u(rng), u(rng)};
        const Vec3 b{u(rng), u(rng), u(rng)};
        const Vec3 c{u(rng), u(rng), u(rng)};
        const double scale =
            std::max(1.0, euclidean_norm(a) * euclidean_norm(b) * euclidean_norm(c));
        const Vec3 cr = lorentz_cross(b, c);
        CHECK(std::abs(lorentz_dot(a, cr) - det3(a, b, c)) <= 1e-9 * scale);
        CHECK(std::abs(lorentz_dot(b, cr)) <= 1e-9 * scale);
        CHECK(std::abs(lorentz_dot(c, cr)) <= 1e-9 * scale);
    }
}

TEST_CASE("positively_oriented") {
    CHECK(positively_oriented({1, 0, 0}, {0, 1, 0}, {0, 0, 1}));
    CHECK_FALSE(positively_oriented({0, 1, 0}, {1, 0, 0}, {0, 0, 1}));
    SECTION("cyclic shift preserves orientation") {
        CHECK(positively_oriented({0, 1, 0}, {0, 0, 1}, {1, 0, 0}));
        CHECK(positively_oriented({0, 0, 1}, {1, 0, 0}, {0, 1, 0}));
    }
    SECTION("indeterminate on degenerate triples") {
        CHECK_THROWS_AS(positively_oriented({1, 0, 0}, {1, 0, 0}, {0, 1, 0}), IndeterminateSign);
    }
    SECTION("k vectors require every triple") {
        // four future lightlike rays in ccw order: every triple is positive
        const auto ray = [](double t) { return Vec3{std::cos(t), std::sin(t), 1.0}; };
        const std::array<Vec3, 4> ccw{ray(0.3), ray(1.2), ray(2.5), ray(4.0)};
        CHECK(positively_oriented(std::span<const Vec3>(ccw)));
        // swapping two breaks at least one triple
        const std::array<Vec3, 4> swapped{ray(0.3), ray(2.5), ray(1.2), ray(4.0)};
        CHECK_FALSE(positively_oriented(std::span<const Vec3>(swapped)));
    }
}

TEST_CASE("PO equivalent to positive cross pairing on future lightlike triples") {
    std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 200; ++i) {
        const double t1 = u(rng), t2 = u(rng), t3 = u(rng);
        const Vec3 x{std::cos(t1), std::sin(t1), 1.0};
        const Vec3 y{std::cos(t2), std::sin(t2), 1.0};
        const Vec3 z{std::cos(t3), std::sin(t3), 1.0};
        try {
            const bool po = positively_oriented(x, y, z);
            const double d = lorentz_dot(x, lorentz_cross(y, z));
            CHECK(po == (d > 0.0));
            ++tested;
        } catch (const IndeterminateSign&) {
            // nearly coincident sample; draw again
        }
    }
    CHECK(tested >= 200);
}

TEST_CASE("null_frame fixtures") {
    SECTION("axis (1,0,0)") {
        const NullFrame nf = null_frame({1, 0, 0});
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(nf.xminus.x1 == Catch::Approx(0.0).margin(1e-15));
        CHECK(nf.xminus.x2 == Catch::Approx(s));
        CHECK(nf.xminus.x3 == Catch::Approx(s));
        CHECK(nf.xplus.x1 == Catch::Approx(0.0).margin(1e-15));
        CHECK(nf.xplus.x2 == Catch::Approx(-s));
        CHECK(nf.xplus.x3 == Catch::Approx(s));
    }
    SECTION("axis (0,1,0)") {
        const NullFrame nf = null_frame({0, 1, 0});
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(nf.xminus.x1 == Catch::Approx(-s));
        CHECK(nf.xplus.x1 == Catch::Approx(s));
        CHECK(det3(nf.v, nf.xminus, nf.xplus) > 0.0);
    }
    SECTION("rejects non-unit-spacelike input") {
        CHECK_THROWS_AS(null_frame({2, 0, 0}), NotUnitSpacelike);
        CHECK_THROWS_AS(null_frame({0, 0, 1}), NotUnitSpacelike);
    }
}

TEST_CASE("null_frame invariants on 1000 random unit-spacelike vectors") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int done = 0;
    while (done < 1000) {
        Vec3 v{u(rng), u(rng), u(rng)};
        if (classify(v) != CausalClass::Spacelike) continue;
        v = lorentz_normalized_spacelike(v);
        const NullFrame nf = null_frame(v);
        CHECK(std::abs(lorentz_dot(nf.v, nf.v) - 1.0) <= 1e-9);
        CHECK(std::abs(lorentz_dot(nf.xminus, nf.xminus)) <= 1e-9);
        CHECK(std::abs(lorentz_dot(nf.xplus, nf.xplus)) <= 1e-9);
        CHECK(std::abs(euclidean_norm(nf.xminus) - 1.0) <= 1e-9);
        CHECK(std::abs(euclidean_norm(nf.xplus) - 1.0) <= 1e-9);
        CHECK(nf.xminus.x3 > 0.0);
        CHECK(nf.xplus.x3 > 0.0);
        CHECK(std::abs(lorentz_dot(nf.v, nf.xminus)) <= 1e-9);
        CHECK(std::abs(lorentz_dot(nf.v, nf.xplus)) <= 1e-9);
        CHECK(det3(nf.v, nf.xminus, nf.xplus) > 0.0);
        // v is a positive multiple of x^- (x) x^+
        const Vec3 cr = lorentz_cross(nf.xminus, nf.xplus);
        CHECK(lorentz_dot(v, cr) > 0.0);
        CHECK(euclidean_norm(lorentz_cross(v, cr)) <= 1e-9 * euclidean_norm(cr));
        ++done;
    }
}

TEST_CASE("null_frame is bitwise deterministic") {
    const Vec3 v = lorentz_normalized_spacelike({0.3, -0.8, 0.1});
    const NullFrame a = null_frame(v);
    const NullFrame b = null_frame(v);
    CHECK(a.xminus == b.xminus);
    CHECK(a.xplus == b.xplus);
}

TEST_CASE("tolerance configuration") {
    CHECK(default_tolerance() == 1e-9);
    set_default_tolerance(1e-8);
    CHECK(default_tolerance() == 1e-8);
    set_default_tolerance(1e-9);
    CHECK_THROWS_AS(set_default_tolerance(-1.0), Error);
}
