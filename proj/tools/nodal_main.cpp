// Command-line front end for the nodal-count toolkit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nodal/geometry.hpp"
#include "nodal/limitdist.hpp"
#include "nodal/model.hpp"
#include "nodal/randomwave.hpp"
#include "nodal/spectra.hpp"
#include "svg.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "nodal 0.1.0";

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Exponent tuples of total degree d over s variables, descending lex.
void degree_tuples(int s, int d, std::vector<unsigned>& cur,
                   std::vector<std::vector<unsigned>>& out) {
    if (static_cast<int>(cur.size()) == s - 1) {
        cur.push_back(static_cast<unsigned>(d));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int p = d; p >= 0; --p) {
        cur.push_back(static_cast<unsigned>(p));
        degree_tuples(s, d - p, cur, out);
        cur.pop_back();
    }
}

struct ModelOptions {
    std::string kind = "oscillator";
    int s = 0;
    double alpha = 0.0;
    std::string params;
    std::string mu;

    void attach(CLI::App* cmd) {
        cmd->add_option("--kind", kind,
                        "model kind: oscillator | cuboid | custom")
            ->capture_default_str();
        cmd->add_option("--s", s, "dimension (custom models)");
        cmd->add_option("--alpha", alpha,
                        "homogeneity degree (custom models)");
        cmd->add_option("--params", params,
                        "comma-separated frequencies / side lengths / "
                        "monomial coefficients");
        cmd->add_option("--mu", mu, "comma-separated Maslov shifts");
    }

    nodal::ModelSpec build() const {
        auto p = parse_doubles(params);
        auto m = parse_doubles(mu);
        if (kind == "oscillator") {
            if (p.empty()) p = {1.0, std::sqrt(2.0)};
            return nodal::ModelSpec::oscillator(p, m);
        }
        if (kind == "cuboid") {
            if (p.empty()) p = {1.0, 1.0};
            return nodal::ModelSpec::cuboid(p, m);
        }
        if (kind == "custom") {
            if (s < 2 || alpha < 1.0)
                throw CLI::ValidationError(
                    "--kind custom requires --s and an integer --alpha");
            const int d = static_cast<int>(alpha);
            std::vector<std::vector<unsigned>> tuples;
            std::vector<unsigned> cur;
            degree_tuples(s, d, cur, tuples);
            if (p.size() != tuples.size())
                throw CLI::ValidationError(
                    "--params for custom must list " +
                    std::to_string(tuples.size()) +
                    " coefficients (all degree-" + std::to_string(d) +
                    " monomials, descending lex)");
            std::vector<nodal::MonomialTerm> terms;
            for (std::size_t i = 0; i < tuples.size(); ++i) {
                if (p[i] == 0.0) continue;
                terms.push_back({p[i], tuples[i]});
            }
            return nodal::ModelSpec::custom(s, terms, m);
        }
        throw CLI::ValidationError("unknown model kind: " + kind);
    }

    json to_json() const {
        return json{{"kind", kind}, {"s", s},      {"alpha", alpha},
                    {"params", params}, {"mu", mu}};
    }
};

struct Manifest {
    std::string subcommand;
    json parameters;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    std::string write(const std::string& prefix) const {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        json doc{{"subcommand", subcommand},
                 {"parameters", parameters},
                 {"version", kVersion},
                 {"wall_time_s", wall},
                 {"outputs", outputs}};
        const std::string path = prefix + ".manifest.json";
        std::ofstream(path) << doc.dump(2) << "\n";
        return path;
    }
};

void write_histogram_csv(const std::string& path, const nodal::Histogram& h,
                         const std::string& manifest_path) {
    std::ofstream out(path);
    out << "# manifest: " << manifest_path << "\n";
    out << "bin_left,bin_center,density\n";
    for (std::size_t k = 0; k < h.bins(); ++k) {
        out << fmt(h.bin_left(k)) << "," << fmt(h.bin_center(k)) << ","
            << fmt(h.density(k)) << "\n";
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream(path) << doc.dump(2) << "\n";
}

nodal::tools::SvgSeries histogram_series(const nodal::Histogram& h,
                                         const std::string& name,
                                         const std::string& color) {
    nodal::tools::SvgSeries s{name, color, {}};
    for (std::size_t k = 0; k < h.bins(); ++k)
        s.points.emplace_back(h.bin_center(k), h.density(k));
    return s;
}

json geometry_json(const nodal::ShellGeometry& geom) {
    json hess = json::array();
    for (int a = 0; a < geom.hessian.rows(); ++a) {
        json row = json::array();
        for (int b = 0; b < geom.hessian.cols(); ++b)
            row.push_back(geom.hessian(a, b));
        hess.push_back(row);
    }
    return json{{"v_gamma", geom.v_gamma},
                {"v_gamma_std_error", geom.v_gamma_std_error},
                {"j_crit", geom.j_crit},
                {"z_crit", geom.z_crit},
                {"xi_crit", geom.xi_crit},
                {"hessian", hess},
                {"det_hessian", geom.hessian.determinant()}};
}

struct Distances {
    double sup = 0.0;
    double l1 = 0.0;
};

// Distances over bins with center below xi_crit - 5*bin_width.
Distances histogram_distance(const nodal::Histogram& a,
                             const nodal::Histogram& b, double xi_crit) {
    Distances d;
    const double cut = xi_crit - 5.0 * a.bin_width();
    const std::size_t bins = std::max(a.bins(), b.bins());
    for (std::size_t k = 0; k < bins; ++k) {
        if (a.bin_center(k) >= cut) break;
        const double diff = std::abs(a.density(k) - b.density(k));
        d.sup = std::max(d.sup, diff);
        d.l1 += diff * a.bin_width();
    }
    return d;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nodal count statistics for separable quantum systems"};
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1);

    // ---- enumerate ----
    auto* enum_cmd = app.add_subcommand(
        "enumerate", "Empirical xi histogram over an energy window");
    ModelOptions enum_model;
    enum_model.attach(enum_cmd);
    double e0 = 1000.0, g = 1.0, bins = 0.01;
    std::string mode = "weyl";
    std::string out_prefix = "enumerate";
    bool svg = false;
    enum_cmd->add_option("--e0", e0, "window start energy");
    enum_cmd->add_option("--g", g, "window width factor: [e0, (1+g) e0]");
    enum_cmd->add_option("--bins", bins, "bin width (delta xi)");
    enum_cmd->add_option("--mode", mode, "weyl | exact");
    enum_cmd->add_option("--out", out_prefix, "output path prefix");
    enum_cmd->add_flag("--svg", svg, "emit an SVG plot");

    // ---- limit ----
    auto* limit_cmd = app.add_subcommand(
        "limit", "Monte-Carlo histogram of the limiting distribution");
    ModelOptions limit_model;
    limit_model.attach(limit_cmd);
    std::uint64_t samples = 10'000'000, seed = 1;
    double limit_bins = 0.002;
    std::string limit_out = "limit";
    bool limit_svg = false;
    limit_cmd->add_option("--samples", samples, "accepted sample count");
    limit_cmd->add_option("--seed", seed, "random seed");
    limit_cmd->add_option("--bins", limit_bins, "bin width (delta xi)");
    limit_cmd->add_option("--out", limit_out, "output path prefix");
    limit_cmd->add_flag("--svg", limit_svg, "emit an SVG plot");

    // ---- analytic ----
    auto* analytic_cmd =
        app.add_subcommand("analytic", "Closed-form s=2 density at xi");
    ModelOptions analytic_model;
    analytic_model.attach(analytic_cmd);
    double xi = 0.25;
    analytic_cmd->add_option("--xi", xi, "evaluation point")->required();

    // ---- moments ----
    auto* moments_cmd = app.add_subcommand(
        "moments", "Exact harmonic-oscillator moments of the limit law");
    int mom_s = 2, m_max = 2;
    moments_cmd->add_option("--s", mom_s, "dimension");
    moments_cmd->add_option("--m-max", m_max, "highest moment");

    // ---- geometry ----
    auto* geom_cmd =
        app.add_subcommand("geometry", "Action-space shell geometry");
    ModelOptions geom_model;
    geom_model.attach(geom_cmd);
    std::string geom_out;
    geom_cmd->add_option("--out", geom_out, "optional output path prefix");

    // ---- tails ----
    auto* tails_cmd =
        app.add_subcommand("tails", "Universal tail laws of the limit law");
    ModelOptions tails_model;
    tails_model.attach(tails_cmd);

    // ---- weyl ----
    auto* weyl_cmd = app.add_subcommand(
        "weyl", "Weyl estimate vs exact lattice count");
    ModelOptions weyl_model;
    weyl_model.attach(weyl_cmd);
    std::string energies = "1000";
    weyl_cmd->add_option("--e", energies, "comma-separated energies");

    // ---- randomwave ----
    auto* rw_cmd = app.add_subcommand(
        "randomwave", "3-D random-wave nodal domain census");
    std::string sides = "15,25,40,60";
    int realizations = 20, n_waves = 1000;
    double rw_k = 1.0;
    std::string rw_h = "auto";
    std::uint64_t rw_seed = 1;
    std::string rw_out = "randomwave";
    rw_cmd->set_help_flag("--help", "print help");
    rw_cmd->add_option("--sides", sides, "comma-separated cube sides");
    rw_cmd->add_option("--realizations", realizations, "seeds per side");
    rw_cmd->add_option("--n-waves", n_waves, "plane waves per realization");
    rw_cmd->add_option("--k", rw_k, "wavenumber");
    rw_cmd->add_option("--h", rw_h, "grid spacing or 'auto'");
    rw_cmd->add_option("--seed", rw_seed, "base seed");
    rw_cmd->add_option("--out", rw_out, "output path prefix");

    // ---- compare ----
    auto* cmp_cmd = app.add_subcommand(
        "compare",
        "Overlay finite-energy histogram, MC limit law and closed form");
    ModelOptions cmp_model;
    cmp_model.attach(cmp_cmd);
    double cmp_e0 = 1000.0, cmp_g = 1.0, cmp_bins = 0.01;
    std::uint64_t cmp_samples = 10'000'000, cmp_seed = 1;
    std::string cmp_out = "compare";
    bool cmp_svg = false;
    cmp_cmd->add_option("--e0", cmp_e0, "window start energy");
    cmp_cmd->add_option("--g", cmp_g, "window width factor");
    cmp_cmd->add_option("--bins", cmp_bins, "bin width (delta xi)");
    cmp_cmd->add_option("--samples", cmp_samples, "MC sample count");
    cmp_cmd->add_option("--seed", cmp_seed, "MC seed");
    cmp_cmd->add_option("--out", cmp_out, "output path prefix");
    cmp_cmd->add_flag("--svg", cmp_svg, "emit an SVG plot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*enum_cmd) {
            Manifest man;
            man.subcommand = "enumerate";
            man.parameters = {{"model", enum_model.to_json()},
                              {"e0", e0},
                              {"g", g},
                              {"bins", bins},
                              {"mode", mode}};
            const auto model = enum_model.build();
            const auto nmode = mode == "exact"
                                   ? nodal::NormalizationMode::ExactIndex
                                   : nodal::NormalizationMode::Weyl;
            const auto t0 = std::chrono::steady_clock::now();
            const auto hist = nodal::xi_histogram(model, e0, g, nmode, bins);
            const double runtime =
                std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
            const std::string csv = out_prefix + ".csv";
            const std::string sidecar = out_prefix + ".json";
            man.outputs = {csv, sidecar};
            if (svg) man.outputs.push_back(out_prefix + ".svg");
            const std::string man_path = man.write(out_prefix);
            write_histogram_csv(csv, hist, man_path);
            write_json_file(sidecar,
                            json{{"states_total", hist.total()},
                                 {"e0", e0},
                                 {"g", g},
                                 {"mode", mode},
                                 {"runtime", runtime},
                                 {"manifest", man_path}});
            if (svg)
                nodal::tools::write_svg(
                    out_prefix + ".svg",
                    {histogram_series(hist, "empirical", "crimson")});
            std::cout << man_path << "\n";
        } else if (*limit_cmd) {
            Manifest man;
            man.subcommand = "limit";
            man.parameters = {{"model", limit_model.to_json()},
                              {"samples", samples},
                              {"seed", seed},
                              {"bins", limit_bins}};
            const auto model = limit_model.build();
            const auto geom = nodal::find_j_crit(model);
            const auto hist = nodal::sample_limit_distribution(
                geom, samples, seed, limit_bins);
            const auto tails = nodal::tail_report(geom);
            const std::string csv = limit_out + ".csv";
            const std::string sidecar = limit_out + ".json";
            man.outputs = {csv, sidecar};
            if (limit_svg) man.outputs.push_back(limit_out + ".svg");
            const std::string man_path = man.write(limit_out);
            write_histogram_csv(csv, hist, man_path);
            write_json_file(sidecar,
                            json{{"xi_crit", tails.xi_crit},
                                 {"prefactor", tails.prefactor},
                                 {"exponent", tails.exponent},
                                 {"small_xi_constant", tails.small_xi_constant},
                                 {"samples", samples},
                                 {"seed", seed},
                                 {"manifest", man_path}});
            if (limit_svg)
                nodal::tools::write_svg(
                    limit_out + ".svg",
                    {histogram_series(hist, "limit (MC)", "black")});
            std::cout << man_path << "\n";
        } else if (*analytic_cmd) {
            const auto model = analytic_model.build();
            const double p2 = nodal::closed_form_p2(model, xi);
            std::cout << json{{"xi", xi}, {"p2", p2}}.dump() << "\n";
        } else if (*moments_cmd) {
            for (int m = 1; m <= m_max; ++m) {
                const auto r = nodal::ho_moment(mom_s, m);
                std::cout << "m=" << m << ": " << r.str() << " = "
                          << fmt(r.value) << "\n";
            }
        } else if (*geom_cmd) {
            const auto model = geom_model.build();
            const auto geom = nodal::find_j_crit(model);
            const json doc = geometry_json(geom);
            std::cout << doc.dump(2) << "\n";
            if (!geom_out.empty()) {
                Manifest man;
                man.subcommand = "geometry";
                man.parameters = {{"model", geom_model.to_json()}};
                man.outputs = {geom_out + ".json"};
                const std::string man_path = man.write(geom_out);
                json with_man = doc;
                with_man["manifest"] = man_path;
                write_json_file(geom_out + ".json", with_man);
                std::cout << man_path << "\n";
            }
        } else if (*tails_cmd) {
            const auto model = tails_model.build();
            const auto rep = nodal::tail_report(nodal::find_j_crit(model));
            std::cout << json{{"xi_crit", rep.xi_crit},
                              {"prefactor", rep.prefactor},
                              {"exponent", rep.exponent},
                              {"small_xi_constant", rep.small_xi_constant}}
                             .dump(2)
                      << "\n";
        } else if (*weyl_cmd) {
            const auto model = weyl_model.build();
            const double v_gamma = nodal::gamma_volume(model).value;
            json rows = json::array();
            for (double e : parse_doubles(energies)) {
                rows.push_back(
                    {{"e", e},
                     {"weyl", nodal::weyl_count(model, v_gamma, e)},
                     {"exact", nodal::exact_count(model, e)}});
            }
            std::cout << rows.dump(2) << "\n";
        } else if (*rw_cmd) {
            Manifest man;
            man.subcommand = "randomwave";
            man.parameters = {{"sides", sides},
                              {"realizations", realizations},
                              {"n_waves", n_waves},
                              {"k", rw_k},
                              {"h", rw_h},
                              {"seed", rw_seed}};
            nodal::RandomWaveConfig base;
            base.n_waves = n_waves;
            base.k = rw_k;
            base.seed = rw_seed;
            base.h = rw_h == "auto" ? 0.0 : std::stod(rw_h);
            const auto result = nodal::scaling_study(
                base, parse_doubles(sides), realizations);
            const std::string csv = rw_out + ".csv";
            const std::string sidecar = rw_out + ".json";
            man.outputs = {csv, sidecar};
            const std::string man_path = man.write(rw_out);
            std::ofstream out(csv);
            out << "# manifest: " << man_path << "\n";
            out << "side,realization,total,boundary,interior,"
                   "largest_fraction\n";
            for (const auto& row : result.rows) {
                out << fmt(row.side) << "," << row.realization << ","
                    << row.census.total_domains << ","
                    << row.census.boundary_domains << ","
                    << row.census.interior_domains << ","
                    << fmt(row.largest_fraction) << "\n";
            }
            write_json_file(
                sidecar,
                json{{"total_slope", result.total_slope},
                     {"boundary_slope", result.boundary_slope},
                     {"largest_fraction_cv", result.largest_fraction_cv},
                     {"manifest", man_path}});
            std::cout << man_path << "\n";
        } else if (*cmp_cmd) {
            Manifest man;
            man.subcommand = "compare";
            man.parameters = {{"model", cmp_model.to_json()},
                              {"e0", cmp_e0},
                              {"g", cmp_g},
                              {"bins", cmp_bins},
                              {"samples", cmp_samples},
                              {"seed", cmp_seed}};
            const auto model = cmp_model.build();
            const auto geom = nodal::find_j_crit(model);
            const auto empirical = nodal::xi_histogram(
                model, cmp_e0, cmp_g, nodal::NormalizationMode::Weyl,
                cmp_bins);
            const auto limit = nodal::sample_limit_distribution(
                geom, cmp_samples, cmp_seed, cmp_bins);
            const auto d = histogram_distance(empirical, limit, geom.xi_crit);
            json doc{{"xi_crit", geom.xi_crit},
                     {"sup_norm_empirical_vs_limit", d.sup},
                     {"l1_empirical_vs_limit", d.l1}};
            std::vector<nodal::tools::SvgSeries> series{
                histogram_series(empirical, "empirical", "crimson"),
                histogram_series(limit, "limit (MC)", "black")};
            if (model.s == 2 &&
                model.kind != nodal::ModelKind::CustomHomogeneous) {
                double sup_cf = 0.0, l1_cf = 0.0;
                nodal::tools::SvgSeries cf{"closed form", "royalblue", {}};
                const double cut = geom.xi_crit - 5.0 * cmp_bins;
                for (std::size_t k = 0; k < empirical.bins(); ++k) {
                    const double x = empirical.bin_center(k);
                    if (x >= cut) break;
                    const double p = nodal::closed_form_p2(model, x);
                    cf.points.emplace_back(x, p);
                    const double diff = std::abs(empirical.density(k) - p);
                    sup_cf = std::max(sup_cf, diff);
                    l1_cf += diff * cmp_bins;
                }
                doc["sup_norm_empirical_vs_closed_form"] = sup_cf;
                doc["l1_empirical_vs_closed_form"] = l1_cf;
                series.push_back(cf);
            }
            const std::string emp_csv = cmp_out + ".empirical.csv";
            const std::string lim_csv = cmp_out + ".limit.csv";
            const std::string sidecar = cmp_out + ".json";
            man.outputs = {emp_csv, lim_csv, sidecar};
            if (cmp_svg) man.outputs.push_back(cmp_out + ".svg");
            const std::string man_path = man.write(cmp_out);
            write_histogram_csv(emp_csv, empirical, man_path);
            write_histogram_csv(lim_csv, limit, man_path);
            doc["manifest"] = man_path;
            write_json_file(sidecar, doc);
            if (cmp_svg) nodal::tools::write_svg(cmp_out + ".svg", series);
            std::cout << man_path << "\n";
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
