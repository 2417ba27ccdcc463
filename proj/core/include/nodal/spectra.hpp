#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "nodal/histogram.hpp"
#include "nodal/model.hpp"

namespace nodal {

/// One EBK state: quantum numbers, energy, nodal count nu = prod(n_l + 1).
/// The n span is only valid during the sink callback.
struct QuantumState {
    std::span<const int> n;
    double energy = 0.0;
    std::uint64_t nu = 0;
};

using StateSink = std::function<void(const QuantumState&)>;

/// Streams every state with e0 <= E_n <= (1+g) e0 to the sink, in
/// lexicographic order of n, and returns the number of states visited.
/// Nodal counts use checked 64-bit arithmetic; overflow throws
/// std::overflow_error.
std::uint64_t enumerate_states(const ModelSpec& model, double e0, double g,
                               const StateSink& sink);

/// Leading Weyl term V_Gamma * E^{s/alpha}.
double weyl_count(const ModelSpec& model, double E);
double weyl_count(const ModelSpec& model, double v_gamma, double E);

/// Exact number of EBK lattice points with energy <= E.
std::uint64_t exact_count(const ModelSpec& model, double E);

enum class NormalizationMode { Weyl, ExactIndex };

/// Streams normalised nodal counts xi for states in [e0, (1+g) e0].
/// Weyl mode: xi = nu / (V_Gamma E^{s/alpha}), streamed state by state.
/// ExactIndex mode: all states up to (1+g) e0 are sorted by energy (ties
/// broken lexicographically on n) and xi = nu / N with N the 1-based rank.
std::uint64_t normalized_counts(const ModelSpec& model, double e0, double g,
                                NormalizationMode mode,
                                const std::function<void(double)>& sink);

/// Bins a stream of xi values produced by normalized_counts.
Histogram xi_histogram(const ModelSpec& model, double e0, double g,
                       NormalizationMode mode, double bin_width);

}  // namespace nodal
