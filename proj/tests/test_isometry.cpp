#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "margulis/isometry.hpp"

using namespace margulis;

namespace {

std::mt19937_64 rng(77001ULL);

Vec3 random_unit_spacelike() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const Vec3 v{u(rng), u(rng), u(rng)};
        if (classify(v) == CausalClass::Spacelike && lorentz_dot(v, v) > 0.05) {
            return lorentz_normalized_spacelike(v);
        }
    }
}

double random_lambda() {
    std::uniform_real_distribution<double> u(0.05, 0.9);
    return u(rng);
}

double frob_dist(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (int i = 0; i < 9; ++i) {
        const double d = a.m[static_cast<std::size_t>(i)] - b.m[static_cast<std::size_t>(i)];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("make_hyperbolic fixture matrices") {
    SECTION("axis (1,0,0), lambda e^-1") {
        auto [g, data] = make_hyperbolic({1, 0, 0}, std::exp(-1.0));
        const double c = std::cosh(1.0), s = std::sinh(1.0);
        const Mat3 expected{{1, 0, 0, 0, c, -s, 0, -s, c}};
        CHECK(frob_dist(g.matrix(), expected) < 1e-12);
        CHECK(data.lambda == std::exp(-1.0));
        CHECK(data.xzero == Vec3{1, 0, 0});
    }
    SECTION("axis (0,1,0), lambda e^-2") {
        auto [h, data] = make_hyperbolic({0, 1, 0}, std::exp(-2.0));
        const double c = std::cosh(2.0), s = std::sinh(2.0);
        const Mat3 expected{{c, 0, s, 0, 1, 0, s, 0, c}};
        CHECK(frob_dist(h.matrix(), expected) < 1e-12);
        (void)data;
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(make_hyperbolic({2, 0, 0}, 0.5), NotUnitSpacelike);
        CHECK_THROWS_AS(make_hyperbolic({1, 0, 0}, 1.5), LambdaOutOfRange);
        CHECK_THROWS_AS(make_hyperbolic({1, 0, 0}, -0.1), LambdaOutOfRange);
    }
}

TEST_CASE("LorentzIsometry validation") {
    CHECK_THROWS_AS(LorentzIsometry(Mat3::diag(2, 1, 1)), NotLorentzIsometry);
    // orthogonal in the Euclidean sense but form-breaking
    CHECK_THROWS_AS(LorentzIsometry(Mat3{{1, 0, 0, 0, 0, -1, 0, 1, 0}}), NotLorentzIsometry);
    // time-reversing isometry preserves the form with det 1 but flips the cone
    CHECK_THROWS_AS(LorentzIsometry(Mat3::diag(-1, 1, -1)), NotLorentzIsometry);
    CHECK_NOTHROW(LorentzIsometry(Mat3::identity()));
}

TEST_CASE("random hyperbolic builds stay in the group") {
    for (int i = 0; i < 100; ++i) {
        auto [g, data] = make_hyperbolic(random_unit_spacelike(), random_lambda());
        const Mat3 m = g.matrix();
        const Mat3 gram = m.transposed() * lorentz_J() * m;
        const Mat3 J = lorentz_J();
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(gram(r, c) - J(r, c)) <= 1e-9 * std::max(1.0, m.max_abs()));
        CHECK(std::abs(m.det() - 1.0) <= 1e-9 * std::max(1.0, m.max_abs()));
        // eigen-equations from the returned data
        CHECK(euclidean_norm(m * data.xminus - data.xminus * data.lambda) <= 1e-9);
        CHECK(euclidean_norm(m * data.xplus - data.xplus * (1.0 / data.lambda)) <= 1e-9);
        CHECK(euclidean_norm(m * data.xzero - data.xzero) <= 1e-9);
    }
}

TEST_CASE("spectral_data roundtrip") {
    for (int i = 0; i < 100; ++i) {
        const Vec3 axis = random_unit_spacelike();
        const double lambda = random_lambda();
        auto [g, built] = make_hyperbolic(axis, lambda);
        const HyperbolicData rec = spectral_data(g);
        CHECK(std::abs(rec.lambda - lambda) <= 1e-9);
        CHECK(euclidean_norm(rec.xminus - built.xminus) <= 1e-9);
        CHECK(euclidean_norm(rec.xplus - built.xplus) <= 1e-9);
        CHECK(euclidean_norm(rec.xzero - built.xzero) <= 1e-9);
    }
}

TEST_CASE("spectral_data rejects non-hyperbolic input") {
    CHECK_THROWS_AS(spectral_data(LorentzIsometry::identity()), NotHyperbolic);
    // rotation about the time axis
    const double a = 0.7;
    const Mat3 rot{{std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1}};
    CHECK_THROWS_AS(spectral_data(LorentzIsometry(rot)), NotHyperbolic);
}

TEST_CASE("x^0 flips under inversion and is conjugation equivariant") {
    auto [g, dg] = make_hyperbolic({1, 0, 0}, std::exp(-1.0));
    const HyperbolicData dinv = spectral_data(g.inverse());
    CHECK(euclidean_norm(dinv.xzero + dg.xzero) <= 1e-9);
    for (int i = 0; i < 100; ++i) {
        auto [conj, dc] = make_hyperbolic(random_unit_spacelike(), random_lambda());
        (void)dc;
        const HyperbolicData d = spectral_data(conj * g * conj.inverse());
        CHECK(euclidean_norm(d.xzero - conj(dg.xzero)) <= 1e-8 * euclidean_norm(conj(dg.xzero)));
    }
}

TEST_CASE("affine composition") {
    auto [g, dg] = make_hyperbolic({1, 0, 0}, std::exp(-1.0));
    auto [h, dh] = make_hyperbolic({0, 1, 0}, std::exp(-2.0));
    (void)dg;
    (void)dh;
    const AffineIsometry gamma{g, {0.5, -1.0, 0.25}};
    const AffineIsometry eta{h, {1.0, 2.0, -0.5}};

    SECTION("gamma gamma^-1 is the identity") {
        const AffineIsometry id = gamma * gamma.inverse();
        CHECK(frob_dist(id.linear.matrix(), Mat3::identity()) <= 1e-12);
        CHECK(euclidean_norm(id.trans) <= 1e-12);
    }
    SECTION("pure translation") {
        const AffineIsometry t{LorentzIsometry::identity(), {1, 2, 3}};
        CHECK(apply(t, {1, 1, 1}) == Vec3{2, 3, 4});
    }
    SECTION("linear part of a product") {
        const AffineIsometry prod = compose(gamma, eta);
        CHECK(frob_dist(prod.linear.matrix(), (g * h).matrix()) <= 1e-12);
        CHECK(euclidean_norm(prod.trans - (g(eta.trans) + gamma.trans)) <= 1e-12);
    }
}
