#pragma once

#include <cstdint>
#include <vector>

namespace nodal {

/// Gaussian random-wave sample inside a cube: a superposition of n_waves
/// plane waves with directions uniform on the sphere and random phases,
/// evaluated on a uniform grid of spacing h. Connectivity for the nodal
/// domain census is fixed 6-neighbor.
struct RandomWaveConfig {
    int n_waves = 1000;
    double k = 1.0;
    double side = 25.0;
    double h = 0.0;  // 0 selects the default (2 pi / k) / 10
    std::uint64_t seed = 1;

    double grid_spacing() const;
    int points_per_axis() const;
    void validate() const;
};

struct Field3D {
    int nx = 0, ny = 0, nz = 0;
    std::vector<double> values;  // x fastest, then y, then z
    double at(int i, int j, int k) const {
        return values[std::size_t(i) + std::size_t(nx) * (std::size_t(j) + std::size_t(ny) * k)];
    }
};

struct SignGrid {
    int nx = 0, ny = 0, nz = 0;
    std::vector<std::uint8_t> positive;  // 1 when field >= 0
    std::size_t cells() const {
        return std::size_t(nx) * std::size_t(ny) * std::size_t(nz);
    }
};

struct DomainCensus {
    std::uint64_t total_domains = 0;
    std::uint64_t boundary_domains = 0;
    std::uint64_t interior_domains = 0;
    std::uint64_t largest_volume_cells = 0;
    std::uint64_t grid_cells = 0;
};

struct ScalingRow {
    double side = 0.0;
    int realization = 0;
    DomainCensus census;
    double largest_fraction = 0.0;
};

struct SideSummary {
    double side = 0.0;
    double total_mean = 0.0, total_std_error = 0.0;
    double boundary_mean = 0.0, boundary_std_error = 0.0;
    double interior_mean = 0.0, interior_std_error = 0.0;
    double largest_fraction_mean = 0.0;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    std::vector<SideSummary> summaries;
    double total_slope = 0.0;     // log(mean total) vs log(side)
    double boundary_slope = 0.0;  // log(mean boundary) vs log(side)
    double largest_fraction_cv = 0.0;
};

/// Evaluates the random-wave field on the grid. Deterministic given seed.
Field3D sample_wave(const RandomWaveConfig& config);

SignGrid signs_of(const Field3D& field);

/// Hoshen-Kopelman style union-find labeling of equal-sign components
/// under 6-connectivity. Optionally exports per-cell root labels.
DomainCensus label_domains(const SignGrid& grid,
                           std::vector<std::uint32_t>* labels = nullptr);

/// Runs `realizations` independent seeds per side, aggregates the census
/// and fits log-log slopes of the mean counts against the side length.
ScalingResult scaling_study(const RandomWaveConfig& base,
                            const std::vector<double>& sides,
                            int realizations);

}  // namespace nodal
