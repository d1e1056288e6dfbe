#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "admlab/constants.hpp"
#include "admlab/deformation.hpp"
#include "admlab/mass.hpp"
#include "admlab/metric.hpp"
#include "admlab/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace admlab;

namespace {

RadialMetric schw(double mass, int ppd = 128) {
    return RadialMetric::schwarzschild(3, mass, 0.5, 1.0e4, ppd);
}

} // namespace

TEST_CASE("cutoff: plateau values, transitions, smoothness") {
    Cutoff c(4.0);
    double a = c.a;
    CHECK(c(0.0) == 0.0);
    CHECK(c(a / 3.0) == 0.0);
    CHECK(c(a / 2.0) == 1.0);
    CHECK(c(3.0 * a) == 1.0);
    CHECK(c(4.0 * a) == 0.0);
    CHECK(c(100.0 * a) == 0.0);
    // symmetric profile midpoints
    CHECK(c(0.5 * (a / 3.0 + a / 2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c(3.5 * a) == doctest::Approx(0.5).epsilon(1e-14));
    // range and monotone transitions
    for (int i = 0; i <= 200; ++i) {
        double r = 5.0 * a * i / 200.0;
        double v = c(r);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    // derivative vanishes on plateau interiors and matches C^2 joins:
    // one-sided second differences agree across each transition endpoint
    double eps = 1e-5;
    for (double r : {a / 4.0, a, 2.0 * a, 5.0 * a}) {
        double d1 = (c(r + eps) - c(r - eps)) / (2.0 * eps);
        CHECK(std::abs(d1) < 1e-10);
    }
    for (double rj : {a / 3.0, a / 2.0, 3.0 * a, 4.0 * a}) {
        double left = (c(rj) - 2.0 * c(rj - eps) + c(rj - 2.0 * eps)) / (eps * eps);
        double right = (c(rj + 2.0 * eps) - 2.0 * c(rj + eps) + c(rj)) / (eps * eps);
        // C^2 joins: both one-sided curvatures tend to 0; the difference is
        // third-derivative truncation of the one-sided stencils, O(c''' eps)
        CHECK(std::abs(left - right) < 5e-3);
    }
    CHECK_THROWS_AS(Cutoff(3.0), std::invalid_argument);
    CHECK_THROWS_AS(c(-1.0), std::domain_error);
}

TEST_CASE("deform: identity at s = 0, flat fixed point, cutoff support") {
    Cutoff c(4.0);
    RadialMetric g = schw(1.0);
    RadialMetric g0 = deform(g, 0.0, c);
    CHECK((g0.A() - g.A()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g0.B() - g.B()).cwiseAbs().maxCoeff() == 0.0);

    RadialMetric flat = RadialMetric::from_profiles(
        3, 0.5, 1.0e3, 64, [](double) { return 1.0; }, [](double) { return 1.0; }, 0.5, 1.0);
    RadialMetric flat_s = deform(flat, 0.7, c);
    CHECK((flat_s.A().array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK((flat_s.B().array() - 1.0).abs().maxCoeff() < 1e-12);

    RadialMetric gs = deform(g, 0.05, c);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        double r = g.grid()(i);
        bool inside = (r > c.a / 3.0 && r < 4.0 * c.a);
        double da = std::abs(gs.A()(i) - g.A()(i));
        double db = std::abs(gs.B()(i) - g.B()(i));
        if (!inside) {
            CHECK(da == 0.0);
            CHECK(db == 0.0);
        }
    }
    // the deformation does change the metric on the plateau
    Eigen::Index mid = g.nearest_index(2.0 * c.a);
    CHECK(std::abs(gs.A()(mid) - g.A()(mid)) > 1e-6);

    // past the positivity boundary the deformation is rejected
    double scale = inadmissibility_scale(g, c);
    CHECK_THROWS_AS(deform(g, 1.05 * scale, c), std::domain_error);
    CHECK(inadmissibility_scale(flat, c) > 1e12); // Ricci is FD-roundoff only
}

TEST_CASE("mdot0_formula: sign, flat zero, annulus lower bound") {
    Cutoff c(4.0);
    RadialMetric flat = RadialMetric::from_profiles(
        3, 0.5, 1.0e3, 64, [](double) { return 1.0; }, [](double) { return 1.0; }, 0.5, 1.0);
    MdotZero mz = mdot0_formula(flat, c);
    CHECK(std::abs(mz.value) < 1e-14);
    CHECK(std::abs(mz.annulus_lower_bound) < 1e-14);

    MdotZero ms = mdot0_formula(schw(1.0), c);
    CHECK(ms.value > 0.0);
    CHECK(ms.annulus_lower_bound > 0.0);
    CHECK(ms.value >= ms.annulus_lower_bound);
    CHECK(ms.quad_error < 1e-6 * ms.value);
}

TEST_CASE("mass curve: dual-route first variation on Schwarzschild") {
    Cutoff c(4.0);
    RadialMetric g = schw(1.0);
    FlowRun run = mass_curve(g, c);

    CHECK(run.m0 == doctest::Approx(adm_mass(g).mass).epsilon(1e-7));
    CHECK(run.mdot0_fd >= 0.0);
    CHECK(run.mdot0_formula > 0.0);
    double rel = std::abs(run.mdot0_fd - run.mdot0_formula) / run.mdot0_formula;
    CHECK(rel < 1e-3);
    CHECK(run.mddot_max > 0.0);
    CHECK(run.admissible_hi > 0.0);
    CHECK(run.admissible_lo < 0.0);
    // grid endpoints probe the positivity boundary: the curve is recorded
    // exactly on the successful subset
    for (size_t k = 0; k < run.s_grid.size(); ++k)
        CHECK(run.admissible[k] == !std::isnan(run.mass_samples[k]));

    // refinement improves the dual-route agreement
    double h = run.s_grid[1] - run.s_grid[0];
    std::vector<double> fine;
    for (int k = -4; k <= 4; ++k) fine.push_back(0.25 * h * k);
    FlowRun runf = mass_curve(g, c, fine);
    double relf = std::abs(runf.mdot0_fd - runf.mdot0_formula) / runf.mdot0_formula;
    CHECK(relf < rel);

    // curvature estimate is stable when the s-step halves over a fixed span
    // (kept well inside the admissible range, where the curve is smooth)
    std::vector<double> coarse, half;
    for (int k = -4; k <= 4; ++k) coarse.push_back(0.25 * h * k);
    for (int k = -8; k <= 8; ++k) half.push_back(0.125 * h * k);
    FlowRun runc = mass_curve(g, c, coarse);
    FlowRun runh = mass_curve(g, c, half);
    CHECK(std::abs(runh.mddot_max - runc.mddot_max) < 0.05 * runc.mddot_max);
}

TEST_CASE("mass curve: flow on a flattened glued background") {
    // harmonic monopole plus a curvature shell over a flat-ish core; the
    // flatten step produces an exactly monopole end with positive mass
    auto U = [](double r) {
        return 1.0 + 0.15 / r + 0.05 * shell_bump_potential(3, 2.0, 6.0, r);
    };
    auto W = [&U](double r) { return std::pow(U(r), 4.0); };
    RadialMetric g = RadialMetric::from_profiles(3, 0.5, 1.0e4, 128, W, W, 0.5, 1.0);
    FlattenResult fl = scalar_flatten(g);
    CHECK(fl.U_tilde.monopole_coeff() > 0.0);
    CHECK(adm_mass(fl.g_tilde).mass < adm_mass(g).mass);

    Cutoff c(4.0);
    FlowRun run = mass_curve(fl.g_tilde, c);
    CHECK(run.mdot0_fd >= 0.0);
    CHECK(run.mdot0_formula > 0.0);
    CHECK(std::abs(run.mdot0_fd - run.mdot0_formula) < 1e-3 * run.mdot0_formula);

    // a raw (non-scalar-flat) background is rejected by the precondition
    CHECK_THROWS_AS(mass_curve(g, c), std::invalid_argument);
}

TEST_CASE("first variation vanishes exactly when Ricci vanishes on the support") {
    // flattening a shell bump over a flat core removes all of its mass: the
    // flat-level harmonic factor has zero inner flux, so its monopole is zero
    // and the flattened metric is exactly flat (the radial rigidity: a radial
    // scalar-flat end is a monopole end)
    RadialMetric bump = bump_metric(3, 0.5, 1.0e4, 128, 0.05, 2.0, 6.0);
    FlattenResult fl = scalar_flatten(bump);
    CHECK(std::abs(fl.U_tilde.monopole_coeff()) < 1e-8);
    Cutoff c(4.0);
    CHECK(std::abs(mdot0_formula(fl.g_tilde, c).value) < 1e-18);
    FlowRun run = mass_curve(fl.g_tilde, c,
                             std::vector<double>{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0});
    CHECK(std::abs(run.mdot0_fd) < 1e-7);

    // and conversely: curvature on the support forces a positive variation
    CHECK(mdot0_formula(schw(1.0), c).value > 1e-3);
}

TEST_CASE("oscillation bound: family ratio is uniformly bounded") {
    double a = 5.0;
    Cutoff c(a);
    double prev_ratio = -1.0;
    double first_chain = 0.0;
    double prev_grad4_over_mdot = -1.0;
    for (double m : {1.0, 0.1, 0.01}) {
        ExteriorHarmonic U = ExteriorHarmonic::schwarzschild(3, m);
        RadialMetric g = schw(m);
        double mdot0 = mdot0_formula(g, c).value;
        OscillationReport rep = oscillation_bound_check(U, a, mdot0, m);
        CHECK(rep.sup_dev == doctest::Approx(0.5 * m / a).epsilon(1e-8));
        CHECK(rep.ratio > 0.0);
        CHECK(rep.ratio < 10.0); // one constant across the family
        CHECK(rep.chain_sup <= rep.sup_dev + 1e-12);
        CHECK(rep.chain_ratio > 0.0);
        if (first_chain == 0.0) first_chain = rep.chain_ratio;
        CHECK(rep.chain_ratio < 3.0 * first_chain); // chain constant is stable
        // grad-4 against the first variation: finite and shrinking with m
        double q = rep.grad4_integral / mdot0;
        CHECK(std::isfinite(q));
        if (prev_grad4_over_mdot >= 0.0) CHECK(q <= prev_grad4_over_mdot);
        prev_grad4_over_mdot = q;
        if (prev_ratio >= 0.0) CHECK(rep.ratio < 2.0 * prev_ratio + 2.0);
        prev_ratio = rep.ratio;
    }

    // flat case: every quantity vanishes
    OscillationReport fl =
        oscillation_bound_check(ExteriorHarmonic::flat(3), a, 0.0, 0.0);
    CHECK(fl.sup_dev == 0.0);
    CHECK(fl.variation_term == 0.0);
    CHECK(fl.mass_term == 0.0);
    CHECK(fl.ratio == 0.0);
    CHECK(fl.chain_sup < 1e-14);

    CHECK_THROWS_AS(oscillation_bound_check(ExteriorHarmonic::flat(3), 2.0, 0.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("delta-gamma experiment: quadratic argument at small mass") {
    Cutoff c(5.0);
    RadialMetric g = schw(1.0e-3);
    FlowRun run = mass_curve(g, c);

    // huge gamma: the conclusion holds outright
    DeltaGammaVerdict big = delta_gamma_experiment(run, 1.0e6);
    CHECK(big.outcome == DeltaGammaVerdict::Outcome::Pass);

    // the critical threshold: gamma just above sqrt(2 C0 m(0))
    double gamma = 1.01 * std::sqrt(2.0 * run.mddot_max * run.m0);
    DeltaGammaVerdict v = delta_gamma_experiment(run, gamma);
    CHECK(v.outcome == DeltaGammaVerdict::Outcome::Pass);
    CHECK(v.premise_m0.has_value());
    CHECK(*v.premise_m0);
    CHECK(v.mdot0 < gamma);
    REQUIRE(v.m_at_s_star.has_value());
    CHECK(*v.m_at_s_star >= 0.0);

    // Taylor-remainder consistency of the stored curve against C0
    for (size_t k = 0; k < run.s_grid.size(); ++k) {
        if (!run.admissible[k]) continue;
        double s = run.s_grid[k];
        double taylor = run.m0 + run.mdot0_fd * s + 0.5 * run.mddot_max * s * s;
        CHECK(run.mass_samples[k] <= taylor + 1e-8 * std::max(1.0, std::abs(run.m0)));
    }

    CHECK_THROWS_AS(delta_gamma_experiment(run, -1.0), std::invalid_argument);
}
