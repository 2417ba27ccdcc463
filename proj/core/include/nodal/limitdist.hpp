#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nodal/geometry.hpp"
#include "nodal/histogram.hpp"

namespace nodal {

/// Universal behaviour of P(xi) at both ends of its support:
/// P(xi) ~ prefactor * (xi_crit - xi)^exponent near the cut-off and
/// P(xi) ~ small_xi_constant * (-log xi)^{s-2} near zero.
struct TailReport {
    double xi_crit = 0.0;
    double prefactor = 0.0;
    double exponent = 0.0;
    double small_xi_constant = 0.0;
};

/// Exact non-negative rational (big-integer numerator / denominator).
struct Rational {
    std::string numerator;
    std::string denominator;
    double value = 0.0;
    std::string str() const { return numerator + "/" + denominator; }
};

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo histogram of the limiting distribution P(xi): points are
/// drawn uniformly in Gamma by rejection and projected radially onto the
/// unit shell, which realizes the dGamma/(s V_Gamma) measure exactly.
/// Deterministic given (samples, seed) for any thread count.
Histogram sample_limit_distribution(const ShellGeometry& geom,
                                    std::uint64_t samples,
                                    std::uint64_t seed, double bin_width,
                                    int threads = 0);

/// Monte-Carlo moments <xi^m> for m = 1..m_max with standard errors,
/// from the same sampling scheme (and the same determinism contract).
std::vector<MomentEstimate> sample_moments(const ShellGeometry& geom,
                                           std::uint64_t samples,
                                           std::uint64_t seed, int m_max,
                                           int threads = 0);

/// Closed-form s=2 densities: (1-2 xi)^{-1/2} for the oscillator and
/// (1 - pi^2 xi^2 / 4)^{-1/2} for the cuboid.
double closed_form_p2(const ModelSpec& model, double xi);

/// Exact harmonic-oscillator moments <xi^m>_s = s!^{m+1} (m!)^s (m+1) /
/// (s(m+1))!.
Rational ho_moment(int s, int m);

/// Cut-off tail coefficient C = Z(J_crit) V_{S^{s-2}} / (2 V_Gamma
/// sqrt(det H)) together with the universal exponents.
TailReport tail_report(const ShellGeometry& geom);

/// Leading small-xi law (-log xi)^{s-2} / (s-2)!.
double small_xi_asymptote(int s, double xi);

/// s=3 only: level-set quadrature of P(xi) = int_{S_xi} Z / |grad V| dS
/// by marching segments over Omega, refined until two successive grids
/// differ by less than 0.5% relative.
double quadrature_p(const ShellGeometry& geom, double xi);

}  // namespace nodal
