#pragma once

#include <span>
#include <string>
#include <vector>

namespace nodal {

enum class ModelKind { Oscillator, Cuboid, CustomHomogeneous };

/// One positive-coefficient monomial c * prod_l I_l^{p_l}.
struct MonomialTerm {
    double coeff = 0.0;
    std::vector<unsigned> powers;
};

/// A separable system specified directly by its Hamilton function on
/// action space. Builtins are the harmonic oscillator H = sum w_l I_l
/// and the Dirichlet cuboid H = pi^2 sum I_l^2 / a_l^2. Custom models
/// are positive sums of monomials of one common total degree, which
/// keeps H strictly increasing and convex on the positive orthant.
struct ModelSpec {
    ModelKind kind = ModelKind::Oscillator;
    int s = 2;               // dimension, >= 2
    double alpha = 1.0;      // homogeneity degree
    std::vector<double> params;       // frequencies / side lengths
    std::vector<double> mu;           // Maslov shifts
    std::vector<MonomialTerm> terms;  // CustomHomogeneous only

    static ModelSpec oscillator(std::vector<double> omega,
                                std::vector<double> mu = {});
    static ModelSpec cuboid(std::vector<double> sides,
                            std::vector<double> mu = {});
    static ModelSpec custom(int s, std::vector<MonomialTerm> terms,
                            std::vector<double> mu = {});

    std::string kind_name() const;
};

/// H(I) on the closed positive orthant. Throws std::invalid_argument on a
/// dimension mismatch and std::domain_error on a negative component.
double hamiltonian_value(const ModelSpec& model, std::span<const double> I);

/// Gradient dH/dI_l on the open positive orthant. Analytic for builtins,
/// central finite differences for custom models. Throws std::domain_error
/// if any component comes out non-positive (model violates monotonicity).
std::vector<double> frequencies(const ModelSpec& model,
                                std::span<const double> I);

namespace detail {
/// Gradient without the positivity check; for boundary evaluations where
/// only some components are needed.
std::vector<double> gradient_unchecked(const ModelSpec& model,
                                       std::span<const double> I);
}  // namespace detail

/// EBK energy H(n + mu) for non-negative integer quantum numbers
/// (internal convention: n_l starts at 0, nodal factor n_l + 1).
double ebk_energy(const ModelSpec& model, std::span<const int> n);

/// Intercept t of the unit shell along axis l: H(t e_l) = 1.
double axis_intercept(const ModelSpec& model, int axis);

}  // namespace nodal
