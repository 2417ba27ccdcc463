#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "nodal/model.hpp"

namespace nodal {

/// Volume of Gamma = {I : H(I) <= 1}. std_error is zero for the builtin
/// closed forms and a Monte-Carlo standard error for custom models.
struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Cached geometry of the unit energy shell: the Gamma volume, the
/// location of the maximal inscribed corner cuboid and the quadratic
/// expansion xi_crit - xi ~ dJ^T hessian dJ around it.
struct ShellGeometry {
    ModelSpec model;
    double v_gamma = 0.0;
    double v_gamma_std_error = 0.0;
    std::vector<double> j_crit;  // size s-1
    double z_crit = 0.0;
    double xi_crit = 0.0;
    Eigen::MatrixXd hessian;  // (s-1) x (s-1), positive definite
};

/// Shell height Z with H(J_omega, Z) = 1. Closed form for builtins,
/// bracketed bisection + Newton polish (abs tol 1e-12) otherwise.
/// Throws std::domain_error when J_omega lies outside Omega.
double z_gamma(const ModelSpec& model, std::span<const double> j_omega);

/// dGamma weight Z - J.grad(Z), evaluated through the Euler-identity
/// form alpha / omega_s(J_omega, Z).
double d_gamma_weight(const ModelSpec& model, std::span<const double> j_omega);

/// Inscribed corner-cuboid volume V(J_omega) = prod(J_l) * Z(J_omega).
double inscribed_volume(const ModelSpec& model,
                        std::span<const double> j_omega);

/// V_Gamma: closed forms for builtins; rejection Monte Carlo inside the
/// axis-intercept bounding box for custom models (relative standard
/// error <= 1e-3, fixed default seed for reproducibility).
VolumeEstimate gamma_volume(const ModelSpec& model,
                            std::uint64_t seed = 20260823);

/// Locates J_crit by damped Newton on grad log V and fills all cached
/// fields. Throws std::runtime_error on non-convergence (200 iterations).
ShellGeometry find_j_crit(const ModelSpec& model);

/// xi(J_omega) = V(J_omega) / V_Gamma.
double shell_xi(const ShellGeometry& geom, std::span<const double> j_omega);

}  // namespace nodal
