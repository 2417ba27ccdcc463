#include "nodal/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nodal {

namespace {

void check_positive(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!(x > 0.0)) {
            throw std::invalid_argument(std::string(what) +
                                        " must be strictly positive");
        }
    }
}

std::vector<double> default_mu(int s, double value) {
    return std::vector<double>(static_cast<std::size_t>(s), value);
}

}  // namespace

ModelSpec ModelSpec::oscillator(std::vector<double> omega,
                                std::vector<double> mu) {
    ModelSpec m;
    m.kind = ModelKind::Oscillator;
    m.s = static_cast<int>(omega.size());
    m.alpha = 1.0;
    m.params = std::move(omega);
    m.mu = mu.empty() ? default_mu(m.s, 0.5) : std::move(mu);
    if (m.s < 2) throw std::invalid_argument("dimension s must be >= 2");
    check_positive(m.params, "frequencies");
    if (static_cast<int>(m.mu.size()) != m.s)
        throw std::invalid_argument("mu size mismatch");
    return m;
}

ModelSpec ModelSpec::cuboid(std::vector<double> sides,
                            std::vector<double> mu) {
    ModelSpec m;
    m.kind = ModelKind::Cuboid;
    m.s = static_cast<int>(sides.size());
    m.alpha = 2.0;
    m.params = std::move(sides);
    m.mu = mu.empty() ? default_mu(m.s, 1.0) : std::move(mu);
    if (m.s < 2) throw std::invalid_argument("dimension s must be >= 2");
    check_positive(m.params, "side lengths");
    if (static_cast<int>(m.mu.size()) != m.s)
        throw std::invalid_argument("mu size mismatch");
    return m;
}

ModelSpec ModelSpec::custom(int s, std::vector<MonomialTerm> terms,
                            std::vector<double> mu) {
    ModelSpec m;
    m.kind = ModelKind::CustomHomogeneous;
    m.s = s;
    m.terms = std::move(terms);
    m.mu = mu.empty() ? default_mu(s, 0.5) : std::move(mu);
    if (m.s < 2) throw std::invalid_argument("dimension s must be >= 2");
    if (m.terms.empty())
        throw std::invalid_argument("custom model needs at least one term");
    unsigned degree = 0;
    bool first = true;
    for (const auto& t : m.terms) {
        if (!(t.coeff > 0.0))
            throw std::invalid_argument("monomial coefficients must be > 0");
        if (static_cast<int>(t.powers.size()) != m.s)
            throw std::invalid_argument("monomial power tuple size mismatch");
        unsigned d = 0;
        for (unsigned p : t.powers) d += p;
        if (d == 0)
            throw std::invalid_argument("constant monomial not allowed");
        if (first) {
            degree = d;
            first = false;
        } else if (d != degree) {
            throw std::invalid_argument(
                "all monomials must share one total degree");
        }
    }
    m.alpha = static_cast<double>(degree);
    if (static_cast<int>(m.mu.size()) != m.s)
        throw std::invalid_argument("mu size mismatch");
    return m;
}

std::string ModelSpec::kind_name() const {
    switch (kind) {
        case ModelKind::Oscillator: return "oscillator";
        case ModelKind::Cuboid: return "cuboid";
        case ModelKind::CustomHomogeneous: return "custom";
    }
    return "unknown";
}

double hamiltonian_value(const ModelSpec& model, std::span<const double> I) {
    if (static_cast<int>(I.size()) != model.s)
        throw std::invalid_argument("action vector size mismatch");
    for (double x : I) {
        if (x < 0.0) throw std::domain_error("negative action component");
    }
    switch (model.kind) {
        case ModelKind::Oscillator: {
            double h = 0.0;
            for (int l = 0; l < model.s; ++l) h += model.params[l] * I[l];
            return h;
        }
        case ModelKind::Cuboid: {
            double h = 0.0;
            for (int l = 0; l < model.s; ++l) {
                const double r = I[l] / model.params[l];
                h += r * r;
            }
            return std::numbers::pi * std::numbers::pi * h;
        }
        case ModelKind::CustomHomogeneous: {
            double h = 0.0;
            for (const auto& t : model.terms) {
                double v = t.coeff;
                for (int l = 0; l < model.s; ++l) {
                    for (unsigned p = 0; p < t.powers[l]; ++p) v *= I[l];
                }
                h += v;
            }
            return h;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<double> detail::gradient_unchecked(const ModelSpec& model,
                                               std::span<const double> I) {
    if (static_cast<int>(I.size()) != model.s)
        throw std::invalid_argument("action vector size mismatch");
    std::vector<double> w(static_cast<std::size_t>(model.s));
    switch (model.kind) {
        case ModelKind::Oscillator:
            w = model.params;
            break;
        case ModelKind::Cuboid:
            for (int l = 0; l < model.s; ++l) {
                const double a = model.params[l];
                w[l] = 2.0 * std::numbers::pi * std::numbers::pi * I[l] /
                       (a * a);
            }
            break;
        case ModelKind::CustomHomogeneous: {
            // Central differences; relative step per Design Decisions.
            double norm = 0.0;
            for (double x : I) norm += x * x;
            norm = std::sqrt(norm);
            const double h = 1e-6 * std::max(1.0, norm);
            std::vector<double> probe(I.begin(), I.end());
            for (int l = 0; l < model.s; ++l) {
                const double x0 = probe[l];
                probe[l] = x0 + h;
                const double hi = hamiltonian_value(model, probe);
                probe[l] = std::max(0.0, x0 - h);
                const double lo = hamiltonian_value(model, probe);
                w[l] = (hi - lo) / (x0 + h - probe[l]);
                probe[l] = x0;
            }
            break;
        }
    }
    return w;
}

std::vector<double> frequencies(const ModelSpec& model,
                                std::span<const double> I) {
    auto w = detail::gradient_unchecked(model, I);
    for (double x : w) {
        if (!(x > 0.0))
            throw std::domain_error(
                "non-positive frequency: model violates monotonicity");
    }
    return w;
}

double ebk_energy(const ModelSpec& model, std::span<const int> n) {
    if (static_cast<int>(n.size()) != model.s)
        throw std::invalid_argument("quantum number tuple size mismatch");
    std::vector<double> I(static_cast<std::size_t>(model.s));
    for (int l = 0; l < model.s; ++l) {
        if (n[l] < 0)
            throw std::domain_error("quantum numbers must be non-negative");
        I[l] = static_cast<double>(n[l]) + model.mu[l];
    }
    return hamiltonian_value(model, I);
}

double axis_intercept(const ModelSpec& model, int axis) {
    if (axis < 0 || axis >= model.s)
        throw std::invalid_argument("axis out of range");
    std::vector<double> e(static_cast<std::size_t>(model.s), 0.0);
    e[axis] = 1.0;
    const double h1 = hamiltonian_value(model, e);
    if (!(h1 > 0.0))
        throw std::domain_error("degenerate model: H vanishes along axis");
    // H(t e) = t^alpha H(e) = 1
    return std::pow(h1, -1.0 / model.alpha);
}

}  // namespace nodal
