#pragma once

// Run configuration: generator axes and eigenvalues, tolerance, seed
// interpolation, and depth overrides. Serialized as a single JSON object.
//
// Default group: axes (1,0,0) and (0,1,0) with lambda_g = e^-2 and
// lambda_h = e^-4 (translation lengths 2 and 4). These lengths clear the
// punctured-torus discreteness threshold sinh(l_g/2) sinh(l_h/2) > 1 with
// room to spare; halving them (e^-1, e^-2) makes the commutator elliptic and
// no Schottky system exists.

#include <cstdlib>
#include <json.hpp>

#include "margulis/constructor.hpp"

namespace margulis {

struct ConfigError : Error {
    using Error::Error;
};

struct GroupConfig {
    Vec3 axis_g{1.0, 0.0, 0.0};
    Vec3 axis_h{0.0, 1.0, 0.0};
    double lambda_g = std::exp(-2.0);
    double lambda_h = std::exp(-4.0);
    double tolerance = 1e-9;
    double seed_interpolation = 0.5;
    int depth_propc = 6;
    int depth_orderings = 5;
    int schottky_samples = 256;
    double schottky_margin = 1e-3;

    /// Lorentz-normalizes the axes and range-checks the eigenvalues.
    /// LambdaOutOfRange and NotUnitSpacelike surface as config errors.
    void validate() {
        if (!(lambda_g > 0.0 && lambda_g < 1.0)) {
            throw LambdaOutOfRange("config: lambda_g must lie in (0,1)");
        }
        if (!(lambda_h > 0.0 && lambda_h < 1.0)) {
            throw LambdaOutOfRange("config: lambda_h must lie in (0,1)");
        }
        try {
            axis_g = lorentz_normalized_spacelike(axis_g, tolerance);
            axis_h = lorentz_normalized_spacelike(axis_h, tolerance);
        } catch (const NotUnitSpacelike& e) {
            throw ConfigError(std::string("config: axis is not spacelike: ") + e.what());
        }
        if (!(tolerance > 0.0)) throw ConfigError("config: tolerance must be positive");
        if (!(seed_interpolation > 0.0 && seed_interpolation < 1.0)) {
            throw ConfigError("config: seed_interpolation must lie in (0,1)");
        }
    }

    GeneratorPair generators() const {
        auto [g, dg] = make_hyperbolic(axis_g, lambda_g, tolerance);
        auto [h, dh] = make_hyperbolic(axis_h, lambda_h, tolerance);
        return {g, h, dg, dh};
    }

    static Vec3 vec_from_json(const nlohmann::json& j, const char* field) {
        if (!j.is_array() || j.size() != 3) {
            throw ConfigError(std::string("config: ") + field + " must be an array of 3 numbers");
        }
        return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    }

    static GroupConfig from_json(const nlohmann::json& j) {
        GroupConfig c;
        if (j.contains("axis_g")) c.axis_g = vec_from_json(j["axis_g"], "axis_g");
        if (j.contains("axis_h")) c.axis_h = vec_from_json(j["axis_h"], "axis_h");
        if (j.contains("lambda_g")) c.lambda_g = j["lambda_g"].get<double>();
        if (j.contains("lambda_h")) c.lambda_h = j["lambda_h"].get<double>();
        if (j.contains("tolerance")) c.tolerance = j["tolerance"].get<double>();
        if (j.contains("seed_interpolation")) {
            c.seed_interpolation = j["seed_interpolation"].get<double>();
        }
        if (j.contains("depths")) {
            const auto& d = j["depths"];
            if (d.contains("propc")) c.depth_propc = d["propc"].get<int>();
            if (d.contains("orderings")) c.depth_orderings = d["orderings"].get<int>();
        }
        if (j.contains("schottky_samples")) c.schottky_samples = j["schottky_samples"].get<int>();
        if (j.contains("schottky_margin")) c.schottky_margin = j["schottky_margin"].get<double>();
        return c;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["axis_g"] = {axis_g.x1, axis_g.x2, axis_g.x3};
        j["axis_h"] = {axis_h.x1, axis_h.x2, axis_h.x3};
        j["lambda_g"] = lambda_g;
        j["lambda_h"] = lambda_h;
        j["tolerance"] = tolerance;
        j["seed_interpolation"] = seed_interpolation;
        j["depths"] = {{"propc", depth_propc}, {"orderings", depth_orderings}};
        j["schottky_samples"] = schottky_samples;
        j["schottky_margin"] = schottky_margin;
        return j;
    }

    /// MARGULIS_TOL has the last word over file and defaults.
    void apply_env_overrides() {
        if (const char* env = std::getenv("MARGULIS_TOL")) {
            char* end = nullptr;
            const double tol = std::strtod(env, &end);
            if (end == env || !(tol > 0.0)) {
                throw ConfigError("MARGULIS_TOL must be a positive number");
            }
            tolerance = tol;
        }
    }
};

}  // namespace margulis
