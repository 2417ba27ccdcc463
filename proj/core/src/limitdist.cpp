#include "nodal/limitdist.hpp"

#include <array>
#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "nodal/threads.hpp"

namespace nodal {

namespace {

using boost::multiprecision::cpp_int;

// One chunk of accepted samples; fixed size makes the stream of xi values
// independent of how chunks are assigned to threads.
constexpr std::uint64_t kChunk = 1u << 19;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Runs `consume(chunk_index, xi)` over exactly `samples` accepted draws,
// partitioned into fixed chunks processed by a thread pool. Results must
// be merged per chunk index by the caller to stay deterministic.
template <typename Consume>
void sample_xi_chunks(const ShellGeometry& geom, std::uint64_t samples,
                      std::uint64_t seed, int threads,
                      const Consume& consume) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const ModelSpec& model = geom.model;
    const int s = model.s;
    std::vector<double> box(static_cast<std::size_t>(s));
    for (int l = 0; l < s; ++l) box[l] = axis_intercept(model, l);

    const std::uint64_t n_chunks = (samples + kChunk - 1) / kChunk;
    std::atomic<std::uint64_t> next{0};
    const int n_threads =
        std::max(1, std::min<int>(threads > 0 ? threads : default_thread_count(),
                                  static_cast<int>(n_chunks)));

    const auto worker = [&] {
        std::vector<double> I(static_cast<std::size_t>(s));
        while (true) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t quota =
                std::min(kChunk, samples - c * kChunk);
            std::mt19937_64 rng(splitmix64(seed + 0x5bd1e995u * (c + 1)));
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            std::uint64_t accepted = 0;
            while (accepted < quota) {
                for (int l = 0; l < s; ++l) I[l] = box[l] * uni(rng);
                double h = 0.0;
                switch (model.kind) {
                    case ModelKind::Oscillator:
                        for (int l = 0; l < s; ++l) h += model.params[l] * I[l];
                        break;
                    case ModelKind::Cuboid: {
                        for (int l = 0; l < s; ++l) {
                            const double r = I[l] / model.params[l];
                            h += r * r;
                        }
                        h *= std::numbers::pi * std::numbers::pi;
                        break;
                    }
                    case ModelKind::CustomHomogeneous:
                        h = hamiltonian_value(model, I);
                        break;
                }
                if (!(h > 0.0) || h > 1.0) continue;
                // Radial projection onto the shell: J = I / h^{1/alpha},
                // xi = prod(J) / V_Gamma (the shell height is J_s itself).
                const double eps = std::pow(h, 1.0 / model.alpha);
                double prod = 1.0;
                for (int l = 0; l < s; ++l) prod *= I[l];
                const double xi =
                    prod / (std::pow(eps, double(s)) * geom.v_gamma);
                consume(c, xi);
                ++accepted;
            }
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
}

}  // namespace

Histogram sample_limit_distribution(const ShellGeometry& geom,
                                    std::uint64_t samples,
                                    std::uint64_t seed, double bin_width,
                                    int threads) {
    // One private histogram per chunk, merged in chunk order.
    const std::uint64_t n_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Histogram> partials(n_chunks, Histogram(bin_width));
    sample_xi_chunks(geom, samples, seed, threads,
                     [&](std::uint64_t c, double xi) { partials[c].add(xi); });
    Histogram out(bin_width);
    for (const auto& h : partials) out.merge(h);
    return out;
}

std::vector<MomentEstimate> sample_moments(const ShellGeometry& geom,
                                           std::uint64_t samples,
                                           std::uint64_t seed, int m_max,
                                           int threads) {
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    const std::uint64_t n_chunks = (samples + kChunk - 1) / kChunk;
    // Per-chunk partial sums of xi^m and xi^{2m}, reduced in chunk order.
    std::vector<std::vector<double>> sums(
        n_chunks, std::vector<double>(static_cast<std::size_t>(2 * m_max), 0.0));
    sample_xi_chunks(geom, samples, seed, threads,
                     [&](std::uint64_t c, double xi) {
                         auto& row = sums[c];
                         double p = 1.0;
                         for (int m = 0; m < m_max; ++m) {
                             p *= xi;
                             row[2 * m] += p;
                             row[2 * m + 1] += p * p;
                         }
                     });
    std::vector<MomentEstimate> out(static_cast<std::size_t>(m_max));
    for (int m = 0; m < m_max; ++m) {
        double s1 = 0.0, s2 = 0.0;
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            s1 += sums[c][2 * m];
            s2 += sums[c][2 * m + 1];
        }
        const double n = static_cast<double>(samples);
        const double mean = s1 / n;
        const double var = std::max(0.0, s2 / n - mean * mean);
        out[m] = {mean, std::sqrt(var / n)};
    }
    return out;
}

double closed_form_p2(const ModelSpec& model, double xi) {
    if (model.s != 2)
        throw std::invalid_argument("closed form exists only for s = 2");
    switch (model.kind) {
        case ModelKind::Oscillator:
            if (!(xi > 0.0 && xi < 0.5))
                throw std::domain_error("xi outside the support (0, 1/2)");
            return 1.0 / std::sqrt(1.0 - 2.0 * xi);
        case ModelKind::Cuboid: {
            const double pi = std::numbers::pi;
            if (!(xi > 0.0 && xi < 2.0 / pi))
                throw std::domain_error("xi outside the support (0, 2/pi)");
            return 1.0 / std::sqrt(1.0 - pi * pi * xi * xi / 4.0);
        }
        case ModelKind::CustomHomogeneous:
            break;
    }
    throw std::invalid_argument("no closed form for custom models");
}

Rational ho_moment(int s, int m) {
    if (s < 1 || m < 0)
        throw std::invalid_argument("ho_moment requires s >= 1, m >= 0");
    const auto fact = [](int n) {
        cpp_int f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    cpp_int num = 1;
    const cpp_int fs = fact(s);
    for (int i = 0; i <= m; ++i) num *= fs;
    const cpp_int fm = fact(m);
    for (int i = 0; i < s; ++i) num *= fm;
    num *= (m + 1);
    cpp_int den = fact(s * (m + 1));
    const cpp_int g = boost::multiprecision::gcd(num, den);
    num /= g;
    den /= g;
    Rational r;
    r.numerator = num.str();
    r.denominator = den.str();
    r.value = boost::multiprecision::cpp_rational(num, den)
                  .convert_to<double>();
    return r;
}

TailReport tail_report(const ShellGeometry& geom) {
    const int s = geom.model.s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(geom.hessian);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("hessian at the maximum is not positive definite");
    const double pi = std::numbers::pi;
    // Volume of the (s-2)-sphere; equals 2 for s = 2.
    const double v_sphere =
        2.0 * std::pow(pi, (s - 1) / 2.0) / std::tgamma((s - 1) / 2.0);
    TailReport rep;
    rep.xi_crit = geom.xi_crit;
    rep.prefactor = geom.z_crit * v_sphere /
                    (2.0 * geom.v_gamma * std::sqrt(geom.hessian.determinant()));
    rep.exponent = (s - 3) / 2.0;
    rep.small_xi_constant = s >= 3 ? 1.0 / factorial(s - 2) : 1.0;
    return rep;
}

double small_xi_asymptote(int s, double xi) {
    if (s < 2) throw std::invalid_argument("s must be >= 2");
    if (!(xi > 0.0 && xi < 1.0))
        throw std::domain_error("xi must lie in (0, 1)");
    return std::pow(-std::log(xi), double(s - 2)) / factorial(s - 2);
}

namespace {

// Continuous extension of the inscribed volume over the bounding box of
// Omega: zero outside Omega, prod(J) * Z inside.
double v_extended(const ModelSpec& model, double j1, double j2) {
    const std::array<double, 2> jo{j1, j2};
    std::array<double, 3> I{j1, j2, 0.0};
    if (hamiltonian_value(model, I) >= 1.0) return 0.0;
    return j1 * j2 * z_gamma(model, jo);
}

struct Pt {
    double x, y;
};

double segment_contribution(const ModelSpec& model, const Pt& a, const Pt& b) {
    const double mx = 0.5 * (a.x + b.x);
    const double my = 0.5 * (a.y + b.y);
    if (!(mx > 0.0) || !(my > 0.0)) return 0.0;
    const std::array<double, 2> jo{mx, my};
    std::array<double, 3> I{mx, my, 0.0};
    if (hamiltonian_value(model, I) >= 1.0) return 0.0;
    const double z = z_gamma(model, jo);
    I[2] = z;
    const auto w = frequencies(model, I);
    // grad V with dZ/dJ_l = -omega_l / omega_s
    const double gx = my * z - mx * my * w[0] / w[2];
    const double gy = mx * z - mx * my * w[1] / w[2];
    const double gn = std::hypot(gx, gy);
    if (!(gn > 0.0)) return 0.0;
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    return len * z / gn;
}

double quadrature_pass(const ShellGeometry& geom, double level, int n) {
    const ModelSpec& model = geom.model;
    const double tx = axis_intercept(model, 0);
    const double ty = axis_intercept(model, 1);
    const double hx = tx / n;
    const double hy = ty / n;

    std::vector<double> row_lo(static_cast<std::size_t>(n + 1));
    std::vector<double> row_hi(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        row_lo[i] = v_extended(model, i * hx, 0.0) - level;

    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        const double y0 = j * hy;
        const double y1 = (j + 1) * hy;
        for (int i = 0; i <= n; ++i)
            row_hi[i] = v_extended(model, i * hx, y1) - level;
        for (int i = 0; i < n; ++i) {
            const double f00 = row_lo[i], f10 = row_lo[i + 1];
            const double f01 = row_hi[i], f11 = row_hi[i + 1];
            const int code = (f00 >= 0.0) | ((f10 >= 0.0) << 1) |
                             ((f11 >= 0.0) << 2) | ((f01 >= 0.0) << 3);
            if (code == 0 || code == 15) continue;
            const double x0 = i * hx;
            const double x1 = (i + 1) * hx;
            const auto lerp = [](double a, double b, double fa, double fb) {
                return a + (b - a) * (fa / (fa - fb));
            };
            Pt pb{lerp(x0, x1, f00, f10), y0};   // bottom edge
            Pt pr{x1, lerp(y0, y1, f10, f11)};   // right edge
            Pt pt{lerp(x0, x1, f01, f11), y1};   // top edge
            Pt pl{x0, lerp(y0, y1, f00, f01)};   // left edge
            switch (code) {
                case 1: case 14:
                    total += segment_contribution(model, pl, pb); break;
                case 2: case 13:
                    total += segment_contribution(model, pb, pr); break;
                case 4: case 11:
                    total += segment_contribution(model, pr, pt); break;
                case 8: case 7:
                    total += segment_contribution(model, pt, pl); break;
                case 3: case 12:
                    total += segment_contribution(model, pl, pr); break;
                case 6: case 9:
                    total += segment_contribution(model, pb, pt); break;
                case 5: case 10: {
                    // Saddle: split by the centre value.
                    const double fc = v_extended(model, 0.5 * (x0 + x1),
                                                 0.5 * (y0 + y1)) -
                                      level;
                    const bool centre_with_00 = (fc >= 0.0) == (f00 >= 0.0);
                    if (centre_with_00) {
                        total += segment_contribution(model, pb, pr);
                        total += segment_contribution(model, pt, pl);
                    } else {
                        total += segment_contribution(model, pl, pb);
                        total += segment_contribution(model, pr, pt);
                    }
                    break;
                }
                default: break;
            }
        }
        std::swap(row_lo, row_hi);
    }
    return total;
}

}  // namespace

double quadrature_p(const ShellGeometry& geom, double xi) {
    if (geom.model.s != 3)
        throw std::invalid_argument("level-set quadrature implemented for s = 3 only");
    if (!(xi > 0.0))
        throw std::domain_error("xi must be positive");
    if (xi > geom.xi_crit - 1e-6)
        throw std::domain_error("xi too close to xi_crit: level set degenerates");

    const double level = xi * geom.v_gamma;
    double prev = -1.0;
    double value = 0.0;
    for (int n = 256; n <= 16384; n *= 2) {
        value = quadrature_pass(geom, level, n);
        if (prev > 0.0 && std::abs(value - prev) < 0.005 * std::abs(value))
            return value;
        prev = value;
    }
    return value;
}

}  // namespace nodal
