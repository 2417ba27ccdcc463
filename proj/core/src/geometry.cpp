#include "nodal/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace nodal {

namespace {

constexpr double kZTol = 1e-12;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// H evaluated at (j_omega, z).
double shell_h(const ModelSpec& model, std::span<const double> j_omega,
               double z) {
    std::vector<double> I(j_omega.begin(), j_omega.end());
    I.push_back(z);
    return hamiltonian_value(model, I);
}

// dZ/dJ_l = -omega_l / omega_s on the shell.
std::vector<double> z_gradient(const ModelSpec& model,
                               std::span<const double> j_omega, double z) {
    std::vector<double> I(j_omega.begin(), j_omega.end());
    I.push_back(z);
    const auto w = frequencies(model, I);
    std::vector<double> g(j_omega.size());
    for (std::size_t l = 0; l < j_omega.size(); ++l) g[l] = -w[l] / w[model.s - 1];
    return g;
}

}  // namespace

double z_gamma(const ModelSpec& model, std::span<const double> j_omega) {
    if (static_cast<int>(j_omega.size()) != model.s - 1)
        throw std::invalid_argument("J_omega must have size s-1");
    const double h0 = shell_h(model, j_omega, 0.0);
    if (h0 > 1.0 + 1e-14)
        throw std::domain_error("J_omega outside Omega: H(J_omega, 0) > 1");

    switch (model.kind) {
        case ModelKind::Oscillator: {
            double acc = 1.0;
            for (std::size_t l = 0; l + 1 < static_cast<std::size_t>(model.s); ++l)
                acc -= model.params[l] * j_omega[l];
            return std::max(0.0, acc) / model.params[model.s - 1];
        }
        case ModelKind::Cuboid: {
            const double pi = std::numbers::pi;
            double acc = 1.0;
            for (std::size_t l = 0; l + 1 < static_cast<std::size_t>(model.s); ++l) {
                const double r = j_omega[l] / model.params[l];
                acc -= pi * pi * r * r;
            }
            return model.params[model.s - 1] / pi * std::sqrt(std::max(0.0, acc));
        }
        case ModelKind::CustomHomogeneous:
            break;
    }

    // Bracketed bisection, then Newton polish. H is strictly increasing
    // in z so the root in [0, axis intercept] is unique.
    double lo = 0.0;
    double hi = axis_intercept(model, model.s - 1);
    if (h0 >= 1.0) return 0.0;
    for (int it = 0; it < 80 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (shell_h(model, j_omega, mid) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double z = 0.5 * (lo + hi);
    std::vector<double> I(j_omega.begin(), j_omega.end());
    I.push_back(z);
    for (int it = 0; it < 60; ++it) {
        I[model.s - 1] = z;
        const double f = hamiltonian_value(model, I) - 1.0;
        const auto w = frequencies(model, I);
        const double step = f / w[model.s - 1];
        z -= step;
        if (z < lo || z > hi) z = 0.5 * (lo + hi);
        if (std::abs(step) < kZTol) break;
    }
    return z;
}

double d_gamma_weight(const ModelSpec& model,
                      std::span<const double> j_omega) {
    const double z = z_gamma(model, j_omega);
    std::vector<double> I(j_omega.begin(), j_omega.end());
    I.push_back(z);
    // Valid on the boundary of Omega (some omega_l may vanish there);
    // only omega_s must stay positive.
    const auto w = detail::gradient_unchecked(model, I);
    if (!(w[model.s - 1] > 0.0))
        throw std::domain_error("d_gamma_weight: omega_s vanished on shell");
    return model.alpha / w[model.s - 1];
}

double inscribed_volume(const ModelSpec& model,
                        std::span<const double> j_omega) {
    double v = z_gamma(model, j_omega);
    for (double j : j_omega) {
        if (j < 0.0) throw std::domain_error("J_omega outside Omega");
        v *= j;
    }
    return v;
}

VolumeEstimate gamma_volume(const ModelSpec& model, std::uint64_t seed) {
    switch (model.kind) {
        case ModelKind::Oscillator: {
            double prod = 1.0;
            for (double w : model.params) prod *= w;
            return {1.0 / (factorial(model.s) * prod), 0.0};
        }
        case ModelKind::Cuboid: {
            const double pi = std::numbers::pi;
            double prod = 1.0;
            for (double a : model.params) prod *= a;
            const double s = model.s;
            return {prod / (std::pow(pi, s / 2.0) * std::pow(2.0, s - 1.0) *
                            s * std::tgamma(s / 2.0)),
                    0.0};
        }
        case ModelKind::CustomHomogeneous:
            break;
    }

    // Rejection sampling inside the axis-intercept bounding box until the
    // relative standard error of the hit fraction drops below 1e-3.
    std::vector<double> box(static_cast<std::size_t>(model.s));
    double box_volume = 1.0;
    for (int l = 0; l < model.s; ++l) {
        box[l] = axis_intercept(model, l);
        box_volume *= box[l];
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> I(static_cast<std::size_t>(model.s));
    std::uint64_t n = 0;
    std::uint64_t hits = 0;
    const std::uint64_t batch = 1u << 20;
    const std::uint64_t max_samples = 1ull << 33;
    while (true) {
        for (std::uint64_t i = 0; i < batch; ++i) {
            for (int l = 0; l < model.s; ++l) I[l] = box[l] * uni(rng);
            if (hamiltonian_value(model, I) <= 1.0) ++hits;
        }
        n += batch;
        if (hits == 0) {
            if (n >= (1u << 24))
                throw std::runtime_error(
                    "gamma_volume: zero acceptance, malformed custom model");
            continue;
        }
        const double p = static_cast<double>(hits) / static_cast<double>(n);
        const double rel_err = std::sqrt((1.0 - p) / static_cast<double>(hits));
        if (rel_err <= 1e-3 || n >= max_samples) {
            return {p * box_volume, rel_err * p * box_volume};
        }
    }
}

double shell_xi(const ShellGeometry& geom, std::span<const double> j_omega) {
    return inscribed_volume(geom.model, j_omega) / geom.v_gamma;
}

ShellGeometry find_j_crit(const ModelSpec& model) {
    const int d = model.s - 1;
    ShellGeometry geom;
    geom.model = model;
    const auto vol = gamma_volume(model);
    geom.v_gamma = vol.value;
    geom.v_gamma_std_error = vol.std_error;

    // Initial guess: closed forms for builtins, Omega-centroid proxy else.
    Eigen::VectorXd J(d);
    switch (model.kind) {
        case ModelKind::Oscillator:
            for (int l = 0; l < d; ++l) J[l] = 1.0 / (model.s * model.params[l]);
            break;
        case ModelKind::Cuboid:
            for (int l = 0; l < d; ++l)
                J[l] = model.params[l] / (std::sqrt(double(model.s)) * std::numbers::pi);
            break;
        case ModelKind::CustomHomogeneous:
            for (int l = 0; l < d; ++l) J[l] = 0.5 * axis_intercept(model, l);
            break;
    }

    const auto interior = [&](const Eigen::VectorXd& x) {
        for (int l = 0; l < d; ++l)
            if (!(x[l] > 0.0)) return false;
        std::vector<double> jo(x.data(), x.data() + d);
        return shell_h(model, jo, 0.0) < 1.0;
    };
    // grad log V = 1/J_l + (dZ/dJ_l)/Z
    const auto grad = [&](const Eigen::VectorXd& x) {
        std::vector<double> jo(x.data(), x.data() + d);
        const double z = z_gamma(model, jo);
        const auto zg = z_gradient(model, jo, z);
        Eigen::VectorXd g(d);
        for (int l = 0; l < d; ++l) g[l] = 1.0 / x[l] + zg[l] / z;
        return g;
    };

    Eigen::VectorXd g = grad(J);
    bool converged = g.norm() <= 1e-10;
    for (int it = 0; it < 200 && !converged; ++it) {
        // Finite-difference Hessian of log V from the analytic gradient.
        Eigen::MatrixXd H(d, d);
        const double h = 1e-6 * (1.0 + J.norm());
        for (int l = 0; l < d; ++l) {
            Eigen::VectorXd jp = J, jm = J;
            jp[l] += h;
            jm[l] -= h;
            if (!interior(jp)) jp[l] = J[l];
            if (!interior(jm)) jm[l] = J[l];
            const Eigen::VectorXd gp = grad(jp);
            const Eigen::VectorXd gm = grad(jm);
            H.col(l) = (gp - gm) / (jp[l] - jm[l]);
        }
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::VectorXd step = H.ldlt().solve(-g);
        if (!step.allFinite()) step = -g;  // gradient fallback

        double t = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 50; ++bt, t *= 0.5) {
            const Eigen::VectorXd cand = J + t * step;
            if (!interior(cand)) continue;
            const Eigen::VectorXd gc = grad(cand);
            if (gc.norm() < g.norm()) {
                J = cand;
                g = gc;
                moved = true;
                break;
            }
        }
        if (!moved) break;
        converged = g.norm() <= 1e-10;
    }
    if (!converged)
        throw std::runtime_error(
            "find_j_crit: Newton did not converge (model may violate "
            "convexity assumptions)");

    geom.j_crit.assign(J.data(), J.data() + d);
    geom.z_crit = z_gamma(model, geom.j_crit);
    geom.xi_crit = shell_xi(geom, geom.j_crit);

    // Quadratic expansion xi_crit - xi ~ dJ^T Hess dJ, i.e. -1/2 of the
    // second-difference Hessian of xi at the maximum.
    const double h = 1e-4 * J.norm();
    const auto xi_at = [&](const Eigen::VectorXd& x) {
        std::vector<double> jo(x.data(), x.data() + d);
        return shell_xi(geom, jo);
    };
    Eigen::MatrixXd hess(d, d);
    const double xi0 = geom.xi_crit;
    for (int a = 0; a < d; ++a) {
        Eigen::VectorXd xp = J, xm = J;
        xp[a] += h;
        xm[a] -= h;
        hess(a, a) = (xi_at(xp) - 2.0 * xi0 + xi_at(xm)) / (h * h);
        for (int b = a + 1; b < d; ++b) {
            Eigen::VectorXd pp = J, pm = J, mp = J, mm = J;
            pp[a] += h; pp[b] += h;
            pm[a] += h; pm[b] -= h;
            mp[a] -= h; mp[b] += h;
            mm[a] -= h; mm[b] -= h;
            const double v =
                (xi_at(pp) - xi_at(pm) - xi_at(mp) + xi_at(mm)) / (4.0 * h * h);
            hess(a, b) = v;
            hess(b, a) = v;
        }
    }
    geom.hessian = -0.5 * hess;
    geom.hessian = 0.5 * (geom.hessian + geom.hessian.transpose()).eval();
    return geom;
}

}  // namespace nodal
