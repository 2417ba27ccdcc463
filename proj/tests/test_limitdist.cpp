#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nodal/limitdist.hpp"

using namespace nodal;

namespace {

ShellGeometry unit_osc(int s) {
    return find_j_crit(ModelSpec::oscillator(std::vector<double>(s, 1.0)));
}

// Integral oracle for the s=2 oscillator moments: substituting
// u = sqrt(1-2 xi) turns int xi^m (1-2 xi)^{-1/2} d xi into the smooth
// integral int_0^1 ((1-u^2)/2)^m du, done by composite Simpson.
double s2_moment_integral(int m) {
    const int n = 2000;
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::pow((1.0 - u * u) / 2.0, m);
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("closed_form_p2 values and domain checks") {
    const auto osc = ModelSpec::oscillator({1.0, 1.0});
    CHECK(closed_form_p2(osc, 1e-12) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(closed_form_p2(osc, 0.4) ==
          doctest::Approx(1.0 / std::sqrt(0.2)).epsilon(1e-13));

    const auto box = ModelSpec::cuboid({1.0, 1.0});
    const double pi = std::numbers::pi;
    CHECK(closed_form_p2(box, 0.5) ==
          doctest::Approx(1.0 / std::sqrt(1.0 - pi * pi / 16.0))
              .epsilon(1e-13));

    CHECK_THROWS_AS((void)closed_form_p2(osc, 0.6), std::domain_error);
    CHECK_THROWS_AS((void)closed_form_p2(osc, 0.0), std::domain_error);
    CHECK_THROWS_AS(
        (void)closed_form_p2(ModelSpec::oscillator({1.0, 1.0, 1.0}), 0.1),
        std::invalid_argument);
    const auto custom =
        ModelSpec::custom(2, {{1.0, {2, 0}}, {1.0, {0, 2}}});
    CHECK_THROWS_AS((void)closed_form_p2(custom, 0.1), std::invalid_argument);
}

TEST_CASE("ho_moment exact rationals") {
    const auto m1 = ho_moment(2, 1);
    CHECK(m1.numerator == "1");
    CHECK(m1.denominator == "3");
    CHECK(m1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto m2 = ho_moment(2, 2);
    CHECK(m2.numerator == "2");
    CHECK(m2.denominator == "15");

    for (int m = 0; m < 4; ++m) {
        const auto r = ho_moment(1, m);
        CHECK(r.numerator == "1");
        CHECK(r.denominator == "1");
    }

    // Independent integral oracle against the s=2 closed-form density.
    for (int m = 1; m <= 3; ++m)
        CHECK(ho_moment(2, m).value ==
              doctest::Approx(s2_moment_integral(m)).epsilon(1e-9));

    CHECK(ho_moment(3, 1).value == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_THROWS_AS((void)ho_moment(0, 1), std::invalid_argument);
}

TEST_CASE("tail_report closed cases") {
    const auto r2 = tail_report(unit_osc(2));
    CHECK(r2.xi_crit == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(r2.prefactor - 1.0 / std::sqrt(2.0)) <= 1e-8);
    CHECK(r2.exponent == -0.5);
    CHECK(r2.small_xi_constant == 1.0);

    const auto g3 = unit_osc(3);
    CHECK(g3.hessian.determinant() == doctest::Approx(3.0).epsilon(1e-5));
    const auto r3 = tail_report(g3);
    CHECK(r3.prefactor ==
          doctest::Approx(2.0 * std::numbers::pi / std::sqrt(3.0))
              .epsilon(1e-6));
    CHECK(r3.exponent == 0.0);
    CHECK(r3.small_xi_constant == 1.0);

    const auto r4 = tail_report(unit_osc(4));
    CHECK(r4.exponent == 0.5);
    CHECK(r4.small_xi_constant == 0.5);
}

TEST_CASE("small_xi_asymptote") {
    CHECK(small_xi_asymptote(3, std::exp(-5.0)) ==
          doctest::Approx(5.0).epsilon(1e-12));
    CHECK(small_xi_asymptote(4, std::exp(-5.0)) ==
          doctest::Approx(12.5).epsilon(1e-12));
    CHECK(small_xi_asymptote(2, 0.123) == 1.0);
    CHECK_THROWS_AS((void)small_xi_asymptote(3, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)small_xi_asymptote(3, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)small_xi_asymptote(1, 0.1), std::invalid_argument);
}

TEST_CASE("sampling is deterministic across thread counts") {
    const auto geom = unit_osc(3);
    const auto h1 = sample_limit_distribution(geom, 1 << 21, 42, 0.01, 1);
    const auto h3 = sample_limit_distribution(geom, 1 << 21, 42, 0.01, 3);
    CHECK(h1 == h3);
    const auto again = sample_limit_distribution(geom, 1 << 21, 42, 0.01, 2);
    CHECK(h1 == again);
    CHECK_FALSE(h1 == sample_limit_distribution(geom, 1 << 21, 43, 0.01, 1));

    const auto m1 = sample_moments(geom, 1 << 21, 42, 2, 1);
    const auto m3 = sample_moments(geom, 1 << 21, 42, 2, 3);
    REQUIRE(m1.size() == 2);
    CHECK(m1[0].mean == m3[0].mean);
    CHECK(m1[1].mean == m3[1].mean);
    CHECK(m1[0].std_error == m3[0].std_error);
}

TEST_CASE("MC histogram has no mass beyond the cut-off") {
    const auto geom = unit_osc(2);
    const double bw = 0.01;
    const auto h = sample_limit_distribution(geom, 1'000'000, 7, bw);
    CHECK(h.total() == 1'000'000);
    for (std::size_t k = 0; k < h.bins(); ++k) {
        if (h.bin_left(k) >= geom.xi_crit + 3.0 * bw) CHECK(h.count(k) == 0);
    }
    CHECK(h.mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("MC histogram tracks the s=2 closed forms") {
    for (const auto& model : {ModelSpec::oscillator({1.0, 3.0}),
                              ModelSpec::cuboid({1.0, 2.0})}) {
        const auto geom = find_j_crit(model);
        const double bw = 0.01;
        const auto h = sample_limit_distribution(geom, 2'000'000, 11, bw);
        for (std::size_t k = 0; k < h.bins(); ++k) {
            const double c = h.bin_center(k);
            if (c > 0.8 * geom.xi_crit) break;
            CHECK(std::abs(h.density(k) - closed_form_p2(model, c)) <= 0.05);
        }
    }
}

TEST_CASE("MC moments match the exact rationals") {
    for (int s : {2, 3}) {
        const auto geom = unit_osc(s);
        const auto est = sample_moments(geom, 2'000'000, 123, 2);
        for (int m = 1; m <= 2; ++m) {
            const double exact = ho_moment(s, m).value;
            CHECK(std::abs(est[m - 1].mean - exact) <=
                  3.0 * est[m - 1].std_error);
        }
    }
}

TEST_CASE("limit distribution is frequency independent") {
    const auto a = find_j_crit(ModelSpec::oscillator({1.0, 1.0, 1.0}));
    const auto b = find_j_crit(ModelSpec::oscillator({1.0, 2.0, 5.0}));
    const double bw = 0.01;
    const auto ha = sample_limit_distribution(a, 2'000'000, 3, bw);
    const auto hb = sample_limit_distribution(b, 2'000'000, 4, bw);
    CHECK(a.xi_crit == doctest::Approx(b.xi_crit).epsilon(1e-10));
    for (std::size_t k = 0; k < std::max(ha.bins(), hb.bins()); ++k) {
        if (ha.bin_center(k) > a.xi_crit - bw) break;
        const double se = std::hypot(ha.density_std_error(k),
                                     hb.density_std_error(k));
        CHECK(std::abs(ha.density(k) - hb.density(k)) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("s=2 density increases towards the cut-off") {
    const auto geom = unit_osc(2);
    const double bw = 0.01;
    const auto h = sample_limit_distribution(geom, 2'000'000, 21, bw);
    for (std::size_t k = 0; k + 1 < h.bins(); ++k) {
        if (h.bin_center(k + 1) > geom.xi_crit - bw) break;
        const double noise = 3.0 * (h.density_std_error(k) +
                                    h.density_std_error(k + 1));
        CHECK(h.density(k + 1) >= h.density(k) - noise);
    }
}

TEST_CASE("s=3,4 densities show almost no significant increases") {
    for (int s : {3, 4}) {
        const auto geom = unit_osc(s);
        const double bw = 0.005;
        const auto h = sample_limit_distribution(geom, 4'000'000, 33, bw);
        int comparisons = 0, violations = 0;
        for (std::size_t k = 0; k + 1 < h.bins(); ++k) {
            if (h.bin_center(k + 1) > geom.xi_crit - bw) break;
            ++comparisons;
            const double noise = 3.0 * std::hypot(h.density_std_error(k),
                                                  h.density_std_error(k + 1));
            if (h.density(k + 1) > h.density(k) + noise) ++violations;
        }
        CHECK(comparisons > 10);
        CHECK(double(violations) < 0.01 * comparisons + 1.0);
    }
}

TEST_CASE("quadrature_p agrees with MC and the step height") {
    const auto geom = unit_osc(3);
    const double bw = 0.005;
    const auto h = sample_limit_distribution(geom, 4'000'000, 55, bw);
    const std::size_t k = std::size_t(0.1 / bw);  // bin holding xi = 0.1
    const double q = quadrature_p(geom, h.bin_center(k));
    CHECK(std::abs(q - h.density(k)) <= 3.0 * h.density_std_error(k));

    const double near = geom.xi_crit * (1.0 - 1e-3);
    const double step = 2.0 * std::numbers::pi / std::sqrt(3.0);
    CHECK(std::abs(quadrature_p(geom, near) - step) <= 0.05 * step);

    CHECK_THROWS_AS((void)quadrature_p(geom, geom.xi_crit), std::domain_error);
    CHECK_THROWS_AS((void)quadrature_p(geom, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)quadrature_p(unit_osc(2), 0.1),
                    std::invalid_argument);
}

TEST_CASE("sampling argument validation") {
    const auto geom = unit_osc(2);
    CHECK_THROWS_AS(
        (void)sample_limit_distribution(geom, 0, 1, 0.01), std::invalid_argument);
    CHECK_THROWS_AS((void)sample_limit_distribution(geom, 10, 1, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)sample_moments(geom, 10, 1, 0), std::invalid_argument);
}
