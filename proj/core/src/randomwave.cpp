#include "nodal/randomwave.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace nodal {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = std::uint32_t(i);
    }
    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {  // path compression
            const std::uint32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

}  // namespace

double RandomWaveConfig::grid_spacing() const {
    return h > 0.0 ? h : (2.0 * std::numbers::pi / k) / 10.0;
}

int RandomWaveConfig::points_per_axis() const {
    return static_cast<int>(std::floor(side / grid_spacing())) + 1;
}

void RandomWaveConfig::validate() const {
    if (n_waves < 1) throw std::invalid_argument("n_waves must be >= 1");
    if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be > 0");
    if (!(side > 0.0)) throw std::invalid_argument("cube side must be > 0");
    const double wavelength = 2.0 * std::numbers::pi / k;
    if (grid_spacing() > wavelength / 8.0 + 1e-12)
        throw std::invalid_argument(
            "grid spacing must resolve at least 8 points per wavelength");
    if (points_per_axis() > 1024)
        throw std::invalid_argument("more than 1024 grid points per axis");
}

Field3D sample_wave(const RandomWaveConfig& config) {
    config.validate();
    const int m = config.points_per_axis();
    const double h = config.grid_spacing();
    Field3D field;
    field.nx = field.ny = field.nz = m;
    field.values.assign(std::size_t(m) * m * m, 0.0);

    std::mt19937_64 rng(splitmix64(config.seed));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uphase(0.0,
                                                  2.0 * std::numbers::pi);

    const double amp = std::sqrt(2.0 / config.n_waves);
    std::vector<std::complex<double>> cx(m), cy(m), cz(m);
    for (int j = 0; j < config.n_waves; ++j) {
        // Direction uniform on S^2 via a normalized Gaussian 3-vector.
        double nx, ny, nz, norm;
        do {
            nx = gauss(rng);
            ny = gauss(rng);
            nz = gauss(rng);
            norm = std::sqrt(nx * nx + ny * ny + nz * nz);
        } while (!(norm > 1e-12));
        nx /= norm;
        ny /= norm;
        nz /= norm;
        const double phi = uphase(rng);

        // Phase factors along each axis; the plane-wave phase factorizes.
        for (int i = 0; i < m; ++i) {
            const double x = i * h;
            cx[i] = std::polar(1.0, config.k * nx * x);
            cy[i] = std::polar(1.0, config.k * ny * x);
            cz[i] = std::polar(1.0, config.k * nz * x);
        }
        const std::complex<double> phase = std::polar(amp, phi);
        std::size_t idx = 0;
        for (int z = 0; z < m; ++z) {
            const std::complex<double> pz = phase * cz[z];
            for (int y = 0; y < m; ++y) {
                const std::complex<double> pyz = pz * cy[y];
                const double pr = pyz.real(), pi = pyz.imag();
                for (int x = 0; x < m; ++x, ++idx) {
                    field.values[idx] +=
                        pr * cx[x].real() - pi * cx[x].imag();
                }
            }
        }
    }
    return field;
}

SignGrid signs_of(const Field3D& field) {
    SignGrid grid;
    grid.nx = field.nx;
    grid.ny = field.ny;
    grid.nz = field.nz;
    grid.positive.resize(field.values.size());
    // Exact zeros join the positive class.
    for (std::size_t i = 0; i < field.values.size(); ++i)
        grid.positive[i] = field.values[i] >= 0.0 ? 1 : 0;
    return grid;
}

DomainCensus label_domains(const SignGrid& grid,
                           std::vector<std::uint32_t>* labels) {
    const std::size_t cells = grid.cells();
    if (cells == 0) throw std::invalid_argument("empty sign grid");
    if (cells > 0xffffffffull)
        throw std::invalid_argument("grid too large for 32-bit labels");
    const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
    const auto at = [&](int i, int j, int k) {
        return std::size_t(i) + std::size_t(nx) * (std::size_t(j) + std::size_t(ny) * k);
    };

    UnionFind uf(cells);
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const std::size_t c = at(i, j, k);
                const std::uint8_t s = grid.positive[c];
                if (i > 0 && grid.positive[at(i - 1, j, k)] == s)
                    uf.unite(std::uint32_t(c), std::uint32_t(at(i - 1, j, k)));
                if (j > 0 && grid.positive[at(i, j - 1, k)] == s)
                    uf.unite(std::uint32_t(c), std::uint32_t(at(i, j - 1, k)));
                if (k > 0 && grid.positive[at(i, j, k - 1)] == s)
                    uf.unite(std::uint32_t(c), std::uint32_t(at(i, j, k - 1)));
            }
        }
    }

    std::vector<std::uint8_t> touches(cells, 0);
    DomainCensus census;
    census.grid_cells = cells;
    if (labels) labels->assign(cells, 0);
    // Single relabel pass: roots carry component size; mark roots whose
    // component touches any face of the cube.
    for (int k = 0; k < nz; ++k) {
        const bool fz = (k == 0 || k == nz - 1);
        for (int j = 0; j < ny; ++j) {
            const bool fy = fz || j == 0 || j == ny - 1;
            for (int i = 0; i < nx; ++i) {
                const std::size_t c = at(i, j, k);
                const std::uint32_t root = uf.find(std::uint32_t(c));
                if (labels) (*labels)[c] = root;
                if (fy || i == 0 || i == nx - 1) touches[root] = 1;
            }
        }
    }
    for (std::size_t c = 0; c < cells; ++c) {
        if (uf.parent[c] != c) continue;
        ++census.total_domains;
        if (touches[c])
            ++census.boundary_domains;
        else
            ++census.interior_domains;
        census.largest_volume_cells =
            std::max<std::uint64_t>(census.largest_volume_cells, uf.size[c]);
    }
    return census;
}

ScalingResult scaling_study(const RandomWaveConfig& base,
                            const std::vector<double>& sides,
                            int realizations) {
    if (sides.size() < 3)
        throw std::invalid_argument("scaling study needs at least 3 sides");
    if (realizations < 5)
        throw std::invalid_argument("scaling study needs at least 5 realizations");

    ScalingResult result;
    for (std::size_t si = 0; si < sides.size(); ++si) {
        SideSummary summary;
        summary.side = sides[si];
        double st = 0, st2 = 0, sb = 0, sb2 = 0, sn = 0, sn2 = 0, sf = 0;
        for (int r = 0; r < realizations; ++r) {
            RandomWaveConfig cfg = base;
            cfg.side = sides[si];
            cfg.seed = splitmix64(base.seed + 1000003ull * si + r);
            const auto census = label_domains(signs_of(sample_wave(cfg)));
            const double frac = double(census.largest_volume_cells) /
                                double(census.grid_cells);
            result.rows.push_back({sides[si], r, census, frac});
            st += double(census.total_domains);
            st2 += double(census.total_domains) * double(census.total_domains);
            sb += double(census.boundary_domains);
            sb2 += double(census.boundary_domains) * double(census.boundary_domains);
            sn += double(census.interior_domains);
            sn2 += double(census.interior_domains) * double(census.interior_domains);
            sf += frac;
        }
        const double n = realizations;
        const auto finish = [&](double s1, double s2, double& mean, double& se) {
            mean = s1 / n;
            const double var = std::max(0.0, s2 / n - mean * mean);
            se = std::sqrt(var / n);
        };
        finish(st, st2, summary.total_mean, summary.total_std_error);
        finish(sb, sb2, summary.boundary_mean, summary.boundary_std_error);
        finish(sn, sn2, summary.interior_mean, summary.interior_std_error);
        summary.largest_fraction_mean = sf / n;
        result.summaries.push_back(summary);
    }

    const auto slope = [&](auto pick) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& s : result.summaries) {
            const double v = pick(s);
            if (!(v > 0.0)) continue;
            const double x = std::log(s.side);
            const double y = std::log(v);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        if (n < 3) throw std::runtime_error("degenerate log-log fit");
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    result.total_slope = slope([](const SideSummary& s) { return s.total_mean; });
    result.boundary_slope =
        slope([](const SideSummary& s) { return s.boundary_mean; });

    double fm = 0, fm2 = 0;
    for (const auto& s : result.summaries) {
        fm += s.largest_fraction_mean;
        fm2 += s.largest_fraction_mean * s.largest_fraction_mean;
    }
    const double n = double(result.summaries.size());
    const double mean = fm / n;
    const double var = std::max(0.0, fm2 / n - mean * mean);
    result.largest_fraction_cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    return result;
}

}  // namespace nodal
