#include "nodal/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nodal/geometry.hpp"

namespace nodal {

namespace {

std::uint64_t checked_nu(std::span<const int> n) {
    std::uint64_t nu = 1;
    for (int v : n) {
        const auto f = static_cast<std::uint64_t>(v) + 1;
        if (__builtin_mul_overflow(nu, f, &nu))
            throw std::overflow_error("nodal count overflows 64 bits");
    }
    return nu;
}

// Depth-first walk over the lattice {n : H(n + mu) <= e_max}. H is
// strictly increasing in every action, so a level can stop as soon as the
// partial point (with all deeper actions at mu) exceeds e_max.
template <typename Leaf>
std::uint64_t walk_lattice(const ModelSpec& model, double e_max,
                           const Leaf& leaf) {
    const int s = model.s;
    std::vector<int> n(static_cast<std::size_t>(s), 0);
    std::vector<double> I(model.mu);
    if (hamiltonian_value(model, I) > e_max) return 0;

    std::uint64_t visited = 0;
    int level = 0;
    while (level >= 0) {
        I[level] = n[level] + model.mu[level];
        const double e = hamiltonian_value(model, I);
        if (e > e_max) {
            // Exhausted this level; reset and pop.
            n[level] = 0;
            I[level] = model.mu[level];
            --level;
            if (level >= 0) ++n[level];
            continue;
        }
        if (level == s - 1) {
            ++visited;
            leaf(n, e);
            ++n[level];
        } else {
            ++level;
        }
    }
    return visited;
}

}  // namespace

std::uint64_t enumerate_states(const ModelSpec& model, double e0, double g,
                               const StateSink& sink) {
    if (!(e0 > 0.0)) throw std::invalid_argument("e0 must be > 0");
    if (!(g > 0.0)) throw std::invalid_argument("g must be > 0");
    const double e_max = (1.0 + g) * e0;
    std::uint64_t count = 0;
    walk_lattice(model, e_max, [&](const std::vector<int>& n, double e) {
        if (e < e0) return;
        ++count;
        sink(QuantumState{std::span<const int>(n), e, checked_nu(n)});
    });
    return count;
}

double weyl_count(const ModelSpec& model, double v_gamma, double E) {
    if (E < 0.0) throw std::domain_error("energy must be non-negative");
    if (E == 0.0) return 0.0;
    return v_gamma * std::pow(E, double(model.s) / model.alpha);
}

double weyl_count(const ModelSpec& model, double E) {
    return weyl_count(model, gamma_volume(model).value, E);
}

std::uint64_t exact_count(const ModelSpec& model, double E) {
    if (E < 0.0) throw std::domain_error("energy must be non-negative");
    return walk_lattice(model, E, [](const std::vector<int>&, double) {});
}

std::uint64_t normalized_counts(const ModelSpec& model, double e0, double g,
                                NormalizationMode mode,
                                const std::function<void(double)>& sink) {
    if (mode == NormalizationMode::Weyl) {
        const double v_gamma = gamma_volume(model).value;
        return enumerate_states(model, e0, g, [&](const QuantumState& st) {
            sink(double(st.nu) / weyl_count(model, v_gamma, st.energy));
        });
    }

    // Exact-index mode materializes every state up to the window top so
    // that the spectral rank N is exact from the ground state on.
    if (!(e0 > 0.0)) throw std::invalid_argument("e0 must be > 0");
    if (!(g > 0.0)) throw std::invalid_argument("g must be > 0");
    const double e_max = (1.0 + g) * e0;
    struct Rec {
        double e;
        std::uint64_t nu;
        std::uint64_t off;  // offset into the flattened n storage
    };
    std::vector<Rec> recs;
    std::vector<std::uint16_t> ns;
    const int s = model.s;
    walk_lattice(model, e_max, [&](const std::vector<int>& n, double e) {
        const std::uint64_t off = ns.size();
        for (int v : n) {
            if (v > 0xffff)
                throw std::overflow_error("quantum number exceeds 16 bits");
            ns.push_back(static_cast<std::uint16_t>(v));
        }
        recs.push_back({e, checked_nu(n), off});
    });
    std::sort(recs.begin(), recs.end(), [&](const Rec& a, const Rec& b) {
        if (a.e != b.e) return a.e < b.e;
        return std::lexicographical_compare(
            ns.begin() + a.off, ns.begin() + a.off + s,
            ns.begin() + b.off, ns.begin() + b.off + s);
    });
    std::uint64_t emitted = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].e < e0) continue;
        sink(double(recs[i].nu) / double(i + 1));
        ++emitted;
    }
    return emitted;
}

Histogram xi_histogram(const ModelSpec& model, double e0, double g,
                       NormalizationMode mode, double bin_width) {
    Histogram h(bin_width);
    normalized_counts(model, e0, g, mode, [&](double xi) { h.add(xi); });
    return h;
}

}  // namespace nodal
