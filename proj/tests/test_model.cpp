#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nodal/model.hpp"

using namespace nodal;

namespace {

ModelSpec quadratic_custom() {
    // H = I1^2 + I1 I2 + I2^2
    return ModelSpec::custom(
        2, {{1.0, {2, 0}}, {1.0, {1, 1}}, {1.0, {0, 2}}});
}

}  // namespace

TEST_CASE("hamiltonian_value on the builtins and a custom model") {
    const auto osc = ModelSpec::oscillator({1.0, 2.0});
    const std::vector<double> I11{1.0, 1.0};
    CHECK(hamiltonian_value(osc, I11) == doctest::Approx(3.0).epsilon(1e-14));

    const auto box = ModelSpec::cuboid({1.0, 1.0});
    const std::vector<double> zero{0.0, 0.0};
    CHECK(hamiltonian_value(box, zero) == 0.0);

    CHECK(hamiltonian_value(quadratic_custom(), I11) ==
          doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("hamiltonian_value rejects bad input") {
    const auto osc = ModelSpec::oscillator({1.0, 2.0});
    const std::vector<double> wrong{1.0, 1.0, 1.0};
    CHECK_THROWS_AS((void)hamiltonian_value(osc, wrong),
                    std::invalid_argument);
    const std::vector<double> neg{1.0, -0.5};
    CHECK_THROWS_AS((void)hamiltonian_value(osc, neg), std::domain_error);
}

TEST_CASE("model factories validate their parameters") {
    CHECK_THROWS_AS(ModelSpec::oscillator({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ModelSpec::oscillator({1.0, -2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModelSpec::custom(2, {{1.0, {2, 0}}, {1.0, {1, 0}}}),
                    std::invalid_argument);  // mixed degree
    CHECK_THROWS_AS(ModelSpec::custom(2, {{-1.0, {2, 0}}}),
                    std::invalid_argument);
}

TEST_CASE("frequencies: analytic gradients") {
    const auto osc = ModelSpec::oscillator({1.0, 2.0});
    const std::vector<double> I{0.7, 3.1};
    const auto w = frequencies(osc, I);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == 2.0);

    // d/dI_l of pi^2 (I1^2 + I2^2) at (1, 2), by hand.
    const auto box = ModelSpec::cuboid({1.0, 1.0});
    const std::vector<double> I12{1.0, 2.0};
    const auto wb = frequencies(box, I12);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(wb[0] == doctest::Approx(2.0 * pi2).epsilon(1e-12));
    CHECK(wb[1] == doctest::Approx(4.0 * pi2).epsilon(1e-12));
}

TEST_CASE("Euler identity I . grad H = alpha H") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.05, 3.0);
    const auto models = {ModelSpec::oscillator({1.0, std::sqrt(2.0), 0.7}),
                         ModelSpec::cuboid({1.0, 2.0, 0.5}),
                         quadratic_custom()};
    for (const auto& model : models) {
        const double tol =
            model.kind == ModelKind::CustomHomogeneous ? 1e-5 : 1e-8;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> I(model.s);
            for (auto& x : I) x = uni(rng);
            const auto w = frequencies(model, I);
            double dot = 0.0;
            for (int l = 0; l < model.s; ++l) dot += I[l] * w[l];
            const double h = hamiltonian_value(model, I);
            CHECK(std::abs(dot - model.alpha * h) <=
                  tol * std::abs(model.alpha * h));
        }
    }
}

TEST_CASE("homogeneity H(lambda I) = lambda^alpha H(I)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.05, 3.0);
    std::uniform_real_distribution<double> ulam(1e-3, 10.0);
    const auto models = {ModelSpec::oscillator({1.0, 2.5}),
                         ModelSpec::cuboid({1.3, 0.8}), quadratic_custom()};
    for (const auto& model : models) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> I(model.s), lam_I(model.s);
            const double lam = ulam(rng);
            for (int l = 0; l < model.s; ++l) {
                I[l] = uni(rng);
                lam_I[l] = lam * I[l];
            }
            const double lhs = hamiltonian_value(model, lam_I);
            const double rhs =
                std::pow(lam, model.alpha) * hamiltonian_value(model, I);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
        }
    }
}

TEST_CASE("gradient stays positive across the positive orthant") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.01, 5.0);
    const auto models = {ModelSpec::oscillator({0.3, 1.0, 2.0}),
                         ModelSpec::cuboid({1.0, 1.0}), quadratic_custom()};
    for (const auto& model : models) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> I(model.s);
            for (auto& x : I) x = uni(rng);
            for (double w : frequencies(model, I)) CHECK(w > 0.0);
        }
    }
}

TEST_CASE("ebk_energy") {
    const auto osc = ModelSpec::oscillator({1.0, 1.0});
    const std::vector<int> gs{0, 0};
    CHECK(ebk_energy(osc, gs) == doctest::Approx(1.0).epsilon(1e-14));

    const auto box = ModelSpec::cuboid({1.0, 1.0});
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(ebk_energy(box, gs) == doctest::Approx(2.0 * pi2).epsilon(1e-14));

    const auto osc2 = ModelSpec::oscillator({1.0, std::sqrt(2.0)});
    const std::vector<int> n32{3, 2};
    CHECK(ebk_energy(osc2, n32) ==
          doctest::Approx(3.5 + 2.5 * std::sqrt(2.0)).epsilon(1e-14));

    const std::vector<int> bad{1};
    CHECK_THROWS_AS((void)ebk_energy(osc, bad), std::invalid_argument);
}

TEST_CASE("axis intercepts solve H(t e_l) = 1") {
    const auto osc = ModelSpec::oscillator({2.0, 0.5});
    CHECK(axis_intercept(osc, 0) == doctest::Approx(0.5));
    CHECK(axis_intercept(osc, 1) == doctest::Approx(2.0));
    const auto box = ModelSpec::cuboid({3.0, 1.0});
    CHECK(axis_intercept(box, 0) ==
          doctest::Approx(3.0 / std::numbers::pi));
}
