// admlab: scenario runner for the radial asymptotically-flat metric laboratory.
//
// Subcommands:
//   mass <metric-file>      ADM mass of a sampled radial metric table
//   flatten <metric-file>   conformal scalar-flattening, writes the new table
//   flow <scenario>         one mass-flow experiment m(s), CSV + plot
//   sweep <scenario>        family sweep: sup|U-1| against mass, CSV + plots
//   check                   deterministic self-check table, nonzero exit on failure
#include "CLI11.hpp"

#include "admlab/constants.hpp"
#include "admlab/deformation.hpp"
#include "admlab/harmonic.hpp"
#include "admlab/io.hpp"
#include "admlab/mass.hpp"
#include "admlab/metric.hpp"
#include "admlab/norms.hpp"
#include "admlab/quadrature.hpp"
#include "admlab/solver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace admlab;

struct FamilyMember {
    std::string label;
    RadialMetric metric;
    ExteriorHarmonic end; // harmonic factor of the (outer) end
};

// One scenario family member per mass/amplitude entry. Kinds:
//   schwarzschild: isotropic slices across `masses`
//   bump:          pure curvature shells across `amps` (flat core)
//   glued:         harmonic monopole `mass` plus a curvature shell per amp
std::vector<FamilyMember> build_family(const io::Scenario& sc, int grid_points) {
    std::string kind = sc.get_string("family", "kind", "schwarzschild");
    double r0 = sc.get_double("grid", "r_min", 0.5);
    double r1 = sc.get_double("grid", "r_max", 1.0e4);
    int ppd = grid_points > 0 ? grid_points : sc.get_int("grid", "points_per_decade", 128);
    std::vector<FamilyMember> fam;
    if (kind == "schwarzschild") {
        for (double m : sc.get_list("family", "masses")) {
            fam.push_back({"schw-m=" + io::format_double(m),
                           RadialMetric::schwarzschild(3, m, r0, r1, ppd),
                           ExteriorHarmonic::schwarzschild(3, m)});
        }
        return fam;
    }
    double lo = sc.get_double("family", "shell_lo", 2.0);
    double hi = sc.get_double("family", "shell_hi", 6.0);
    double glue_mass = sc.get_double("family", "mass", 0.0);
    if (kind != "bump" && kind != "glued")
        throw std::invalid_argument("unknown family kind: " + kind);
    for (double amp : sc.get_list("family", "amps")) {
        auto U = [amp, lo, hi, glue_mass, kind](double r) {
            double u = 1.0 + amp * shell_bump_potential(3, lo, hi, r);
            if (kind == "glued") u += 0.5 * glue_mass / r;
            return u;
        };
        auto W = [&U](double r) { return std::pow(U(r), 4.0); };
        RadialMetric g = RadialMetric::from_profiles(3, r0, r1, ppd, W, W, r0, 1.0);
        // beyond the shell the factor is exactly 1 + monopole / r
        double monopole = (U(hi * 2.0) - 1.0) * (hi * 2.0);
        fam.push_back({kind + "-amp=" + io::format_double(amp), std::move(g),
                       ExteriorHarmonic::make(3, 1.0, monopole)});
    }
    return fam;
}

int cmd_mass(const std::string& path) {
    RadialMetric g = RadialMetric::from_table(io::read_file(path));
    MassReport rep = adm_mass(g);
    std::printf("mass             %s\n", io::format_double(rep.mass).c_str());
    if (rep.expansion_mass)
        std::printf("expansion_mass   %s\n", io::format_double(*rep.expansion_mass).c_str());
    std::printf("decay_exponent   %s\n", io::format_double(rep.decay_exponent).c_str());
    std::printf("fit_residual     %s\n", io::format_double(rep.fit_residual).c_str());
    std::printf("flux_radii       %zu in [%s, %s]\n", rep.radii.size(),
                io::format_double(rep.radii.front()).c_str(),
                io::format_double(rep.radii.back()).c_str());
    std::printf("converged        %s\n", rep.converged ? "yes" : "no");
    return rep.converged ? 0 : 1;
}

int cmd_flatten(const std::string& path, const std::string& out) {
    RadialMetric g = RadialMetric::from_table(io::read_file(path));
    double before = adm_mass(g).mass;
    FlattenResult fl = scalar_flatten(g);
    double after = adm_mass(fl.g_tilde).mass;
    std::printf("mass_before      %s\n", io::format_double(before).c_str());
    std::printf("mass_after       %s\n", io::format_double(after).c_str());
    std::printf("monopole         %s\n", io::format_double(fl.U_tilde.monopole_coeff()).c_str());
    std::printf("min_factor       %s\n", io::format_double(fl.report.min_u).c_str());
    std::printf("fit_residual     %s\n", io::format_double(fl.fit_residual).c_str());
    if (!out.empty()) {
        io::write_file(out, fl.g_tilde.to_table());
        std::printf("written          %s\n", out.c_str());
    }
    return 0;
}

RadialMetric scalar_flat_base(const FamilyMember& member) {
    if (member.metric.scalar_curvature_nodes().cwiseAbs().maxCoeff() <= 1e-8)
        return member.metric;
    return scalar_flatten(member.metric).g_tilde;
}

int cmd_flow(const std::string& scenario_path, const std::string& out_dir, int grid_points,
             double a_override) {
    io::Scenario sc = io::Scenario::parse(io::read_file(scenario_path));
    double a = a_override > 0.0 ? a_override : sc.get_double("cutoff", "a", 4.0);
    std::vector<FamilyMember> fam = build_family(sc, grid_points);
    if (fam.empty()) {
        std::fprintf(stderr, "warning: empty family, nothing to run\n");
        return 0;
    }
    std::filesystem::create_directories(out_dir);
    Cutoff cutoff(a);
    FlowRun run = mass_curve(scalar_flat_base(fam.front()), cutoff);

    io::CsvWriter csv({"scenario_hash", "s", "m", "residual", "admissible"});
    for (size_t k = 0; k < run.s_grid.size(); ++k)
        csv.add_row(std::vector<std::string>{sc.hash(), io::format_double(run.s_grid[k]),
                                             io::format_double(run.mass_samples[k]),
                                             io::format_double(run.residuals[k]),
                                             run.admissible[k] ? "1" : "0"});
    io::write_file(out_dir + "/flow.csv", csv.str());

    std::string summary;
    summary += "scenario_hash = " + sc.hash() + "\n";
    summary += "member = " + fam.front().label + "\n";
    summary += "m0 = " + io::format_double(run.m0) + "\n";
    summary += "mdot0_fd = " + io::format_double(run.mdot0_fd) + "\n";
    summary += "mdot0_formula = " + io::format_double(run.mdot0_formula) + "\n";
    summary += "mddot_max = " + io::format_double(run.mddot_max) + "\n";
    summary += "admissible = [" + io::format_double(run.admissible_lo) + ", " +
               io::format_double(run.admissible_hi) + "]\n";
    double gamma = 1.01 * std::sqrt(2.0 * run.mddot_max * std::max(run.m0, 0.0));
    if (gamma > 0.0) {
        DeltaGammaVerdict v = delta_gamma_experiment(run, gamma);
        summary += "gamma = " + io::format_double(gamma) + "\n";
        summary += std::string("delta_gamma = ") +
                   (v.outcome == DeltaGammaVerdict::Outcome::Pass          ? "pass"
                        : v.outcome == DeltaGammaVerdict::Outcome::Fail ? "fail"
                                                                        : "inconclusive") +
                   "\n";
    }
    io::write_file(out_dir + "/flow_summary.txt", summary);

    io::PlotSeries curve{"m(s)", {}, {}};
    for (size_t k = 0; k < run.s_grid.size(); ++k) {
        if (!run.admissible[k]) continue;
        curve.x.push_back(run.s_grid[k]);
        curve.y.push_back(run.mass_samples[k]);
    }
    io::write_file(out_dir + "/flow.svg",
                   io::svg_line_plot("mass flow " + fam.front().label, "s", "m(s)", {curve}));
    std::printf("flow: m0=%s mdot0=%s -> %s\n", io::format_double(run.m0).c_str(),
                io::format_double(run.mdot0_fd).c_str(), out_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& out_dir, int grid_points,
              double a_override) {
    io::Scenario sc = io::Scenario::parse(io::read_file(scenario_path));
    double a = a_override > 0.0 ? a_override : sc.get_double("cutoff", "a", 5.0);
    std::vector<FamilyMember> fam = build_family(sc, grid_points);
    std::filesystem::create_directories(out_dir);
    io::CsvWriter csv({"scenario_hash", "member", "mass", "a", "sup_deviation", "mdot0_fd",
                       "mdot0_formula", "mddot_max", "delta_gamma", "status"});
    io::PlotSeries dev{"sup|U-1|", {}, {}};
    std::vector<io::PlotSeries> curves;
    std::vector<std::pair<double, double>> points; // (mass, sup deviation)
    Cutoff cutoff(a);
    for (const FamilyMember& member : fam) {
        std::vector<std::string> row{sc.hash(), member.label, "", io::format_double(a),
                                     "",        "",           "", "", "", "ok"};
        try {
            double mass = adm_mass(member.metric).mass;
            double sup = member.end.sup_deviation(a);
            row[2] = io::format_double(mass);
            row[4] = io::format_double(sup);
            FlowRun run = mass_curve(scalar_flat_base(member), cutoff);
            row[5] = io::format_double(run.mdot0_fd);
            row[6] = io::format_double(run.mdot0_formula);
            row[7] = io::format_double(run.mddot_max);
            oscillation_bound_check(member.end, a, run.mdot0_formula, mass);
            if (run.mddot_max > 0.0 && run.m0 > 0.0) {
                double gamma = 1.01 * std::sqrt(2.0 * run.mddot_max * run.m0);
                DeltaGammaVerdict v = delta_gamma_experiment(run, gamma);
                row[8] = v.outcome == DeltaGammaVerdict::Outcome::Pass ? "pass" : "other";
            }
            dev.x.push_back(mass);
            dev.y.push_back(sup);
            points.emplace_back(mass, sup);
            io::PlotSeries mc{member.label, {}, {}};
            for (size_t k = 0; k < run.s_grid.size(); ++k)
                if (run.admissible[k]) {
                    mc.x.push_back(run.s_grid[k]);
                    mc.y.push_back(run.mass_samples[k]);
                }
            curves.push_back(std::move(mc));
        } catch (const std::exception& e) {
            row[9] = std::string("failed: ") + e.what();
        }
        csv.add_row(row);
    }
    io::write_file(out_dir + "/sweep.csv", csv.str());
    io::write_file(out_dir + "/sweep.svg",
                   io::svg_line_plot("near-equality sweep", "mass", "sup|U-1| beyond a", {dev},
                                     true, true));
    io::write_file(out_dir + "/mass_curves.svg",
                   io::svg_line_plot("mass flows", "s", "m(s)", curves));

    // fitted power of sup|U-1| against mass on the log-log cloud
    std::string summary = "scenario_hash = " + sc.hash() + "\n";
    if (points.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (auto [m, s] : points) {
            if (m <= 0.0 || s <= 0.0) continue;
            double lx = std::log(m), ly = std::log(s);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++cnt;
        }
        if (cnt >= 2) {
            double power = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
            summary += "fitted_power = " + io::format_double(power) + "\n";
            std::printf("sweep: fitted power %s over %d members -> %s\n",
                        io::format_double(power).c_str(), cnt, out_dir.c_str());
        }
    }
    summary += "members = " + std::to_string(fam.size()) + "\n";
    io::write_file(out_dir + "/sweep_summary.txt", summary);
    if (fam.empty()) std::fprintf(stderr, "warning: empty family\n");
    return 0;
}

int cmd_check(const std::string& out_dir, unsigned seed) {
    std::filesystem::create_directories(out_dir);
    io::CsvWriter csv({"invariant", "measured", "tolerance", "pass"});
    bool all = true;
    auto record = [&csv, &all](const std::string& name, double measured, double tol) {
        bool ok = measured <= tol;
        all = all && ok;
        csv.add_row(std::vector<std::string>{name, io::format_double(measured),
                                             io::format_double(tol), ok ? "1" : "0"});
        std::printf("%-34s %-14s %s\n", name.c_str(), io::format_double(measured).c_str(),
                    ok ? "pass" : "FAIL");
    };

    RadialMetric schw = RadialMetric::schwarzschild(3, 1.0, 0.5, 1.0e4, 128);
    record("mass_flux_vs_expansion", std::abs(adm_mass(schw).mass - 1.0), 1e-6);

    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    ExteriorHarmonic U = ExteriorHarmonic::make(3, 1.0, 0.25, {{2, 1, 0.05}});
    ConformallyFlatMetric cf(U);
    double worst_r = 0.0;
    for (int i = 0; i < 200; ++i) {
        Eigen::VectorXd x(3);
        x << nd(rng), nd(rng), nd(rng);
        x *= (1.5 + 10.0 * std::abs(nd(rng))) / x.norm();
        worst_r = std::max(worst_r, std::abs(cf.scalar_curvature(x)));
    }
    record("harmonic_scalar_flat", worst_r, 1e-10);

    Cutoff c(4.0);
    FlowRun run = mass_curve(schw, c);
    record("dual_route_mdot0",
           std::abs(run.mdot0_fd - run.mdot0_formula) / std::max(run.mdot0_formula, 1e-12), 1e-3);
    record("mdot0_sign", run.mdot0_fd < 0.0 ? 1.0 : 0.0, 0.0);

    Eigen::VectorXd p(3);
    p << 3.0, 1.0, 0.5;
    BarrierReport brep = barrier_subharmonicity_check(U, -0.5, {p});
    record("barrier_two_route", brep.max_rel_mismatch, 1e-6);
    record("barrier_positive", brep.positive ? 0.0 : 1.0, 0.0);

    // Poisson kernel normalization over S_r
    double worst_k = 0.0;
    for (double r : {1.0, 2.0}) {
        for (double rho : {3.0, 5.0}) {
            Eigen::VectorXd x(3);
            x << rho, 0.0, 0.0;
            SphereSample s = SphereSample::build(3, 24, r);
            double total = s.integrate([&x, r](const Eigen::VectorXd& y) {
                return exterior_poisson_kernel(x, y, r, 3);
            });
            worst_k = std::max(worst_k, std::abs(total - r / rho));
        }
    }
    record("poisson_normalization", worst_k, 1e-8);

    io::write_file(out_dir + "/check.csv", csv.str());
    std::printf("%s\n", all ? "all checks passed" : "CHECK FAILURES");
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial asymptotically-flat metric laboratory"};
    app.require_subcommand(1);
    int grid_points = 0;
    double a = 0.0;
    std::string out = "out";
    unsigned seed = 12345u;
    app.add_option("--grid-points", grid_points, "points per decade override");
    app.add_option("--a", a, "cutoff scale override");
    app.add_option("--out", out, "output directory (or file for flatten)");
    app.add_option("--seed", seed, "sampling seed for check");

    std::string metric_path, scenario_path;
    CLI::App* mass_cmd = app.add_subcommand("mass", "ADM mass of a metric table");
    mass_cmd->add_option("metric-file", metric_path)->required();
    CLI::App* flat_cmd = app.add_subcommand("flatten", "scalar-flatten a metric table");
    flat_cmd->add_option("metric-file", metric_path)->required();
    CLI::App* flow_cmd = app.add_subcommand("flow", "mass-flow experiment");
    flow_cmd->add_option("scenario", scenario_path)->required();
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "family sweep");
    sweep_cmd->add_option("scenario", scenario_path)->required();
    app.add_subcommand("check", "deterministic self-check");

    CLI11_PARSE(app, argc, argv);
    try {
        if (mass_cmd->parsed()) return cmd_mass(metric_path);
        if (flat_cmd->parsed()) return cmd_flatten(metric_path, out == "out" ? "" : out);
        if (flow_cmd->parsed()) return cmd_flow(scenario_path, out, grid_points, a);
        if (sweep_cmd->parsed()) return cmd_sweep(scenario_path, out, grid_points, a);
        return cmd_check(out, seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
