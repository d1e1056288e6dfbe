#include "admlab/deformation.hpp"

#include "admlab/constants.hpp"
#include "admlab/mass.hpp"
#include "admlab/quadrature.hpp"
#include "admlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace admlab {

namespace {

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

} // namespace

Cutoff::Cutoff(double a_scale) : a(a_scale) {
    if (!(a > 3.0)) throw std::invalid_argument("Cutoff: scale a must exceed 3");
}

double Cutoff::operator()(double r) const {
    if (r < 0.0) throw std::domain_error("cutoff_eval: negative radius");
    if (r <= a / 3.0 || r >= 4.0 * a) return 0.0;
    if (r < a / 2.0) return smoothstep((r - a / 3.0) / (a / 2.0 - a / 3.0));
    if (r <= 3.0 * a) return 1.0;
    return smoothstep((4.0 * a - r) / a);
}

double cutoff_eval(const Cutoff& c, double r) { return c(r); }

RadialMetric deform(const RadialMetric& g, double s, const Cutoff& c) {
    const Eigen::VectorXd& r = g.grid();
    Eigen::VectorXd A = g.A();
    Eigen::VectorXd B = g.B();
    const Eigen::VectorXd& lr = g.ricci_radial_nodes();
    const Eigen::VectorXd& lt = g.ricci_tangential_nodes();
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        double phi = c(r(i));
        if (phi == 0.0) continue;
        double fr = 1.0 + s * phi * lr(i);
        double ft = 1.0 + s * phi * lt(i);
        if (fr <= 0.0 || ft <= 0.0)
            throw std::domain_error("deform: inadmissible s, profile lost positivity");
        A(i) *= fr;
        B(i) *= ft;
    }
    return RadialMetric(g.dimension(), r, A, B, g.R_flat(), g.decay_p());
}

double inadmissibility_scale(const RadialMetric& g, const Cutoff& c) {
    const Eigen::VectorXd& r = g.grid();
    const Eigen::VectorXd& lr = g.ricci_radial_nodes();
    const Eigen::VectorXd& lt = g.ricci_tangential_nodes();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
        worst = std::max(worst, c(r(i)) * std::max(std::abs(lr(i)), std::abs(lt(i))));
    if (worst == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / worst;
}

MdotZero mdot0_formula(const RadialMetric& g, const Cutoff& c) {
    double norm = 1.0 / (2.0 * (g.dimension() - 1.0) * unit_sphere_area(g.dimension()));
    IntegralResult full =
        g.ricci_norm_sq_integral(c.a / 3.0, 4.0 * c.a, [&c](double r) { return c(r); });
    IntegralResult plateau =
        g.ricci_norm_sq_integral(c.a / 2.0, 3.0 * c.a, [](double) { return 1.0; });
    MdotZero out;
    out.value = norm * full.value;
    out.annulus_lower_bound = norm * plateau.value;
    out.quad_error = norm * full.error_estimate;
    return out;
}

std::vector<double> default_s_grid(const RadialMetric& g, const Cutoff& c, int count) {
    if (count < 5 || count % 2 == 0)
        throw std::invalid_argument("default_s_grid: count must be odd and >= 5");
    double scale = inadmissibility_scale(g, c);
    double step = std::isfinite(scale) ? scale / 4.0 : 1.0;
    std::vector<double> s;
    for (int k = -(count / 2); k <= count / 2; ++k) s.push_back(step * k);
    return s;
}

FlowRun mass_curve(const RadialMetric& base, const Cutoff& c, std::vector<double> s_grid) {
    double scal_scale = std::max(1.0, base.scalar_curvature_nodes().cwiseAbs().maxCoeff());
    if (base.scalar_curvature_nodes().cwiseAbs().maxCoeff() > 1e-8 * scal_scale)
        throw std::invalid_argument("mass_curve: base metric is not scalar-flat");
    if (s_grid.empty()) s_grid = default_s_grid(base, c);
    std::sort(s_grid.begin(), s_grid.end());
    const auto m = static_cast<Eigen::Index>(s_grid.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double p = 4.0 / (base.dimension() - 2.0);

    FlowRun run{base, c, s_grid, std::vector<double>(s_grid.size(), nan),
                std::vector<double>(s_grid.size(), nan),
                std::vector<bool>(s_grid.size(), false)};
    for (Eigen::Index k = 0; k < m; ++k) {
        try {
            RadialMetric gs = deform(base, s_grid[static_cast<size_t>(k)], c);
            SolveReport rep = solve_conformal_factor(ConformalBVP{gs});
            Eigen::VectorXd f = rep.u.array().pow(p).matrix();
            RadialMetric composed(base.dimension(), base.grid(), f.cwiseProduct(gs.A()),
                                  f.cwiseProduct(gs.B()), base.R_flat(), base.decay_p());
            run.mass_samples[static_cast<size_t>(k)] = adm_mass(composed).mass;
            run.residuals[static_cast<size_t>(k)] = rep.residual;
            run.admissible[static_cast<size_t>(k)] = true;
        } catch (const std::exception&) {
            // inadmissible s: recorded as a gap, never extrapolated over
        }
    }

    // center index and uniform step (the grid is symmetric by construction)
    size_t k0 = 0;
    for (size_t k = 1; k < s_grid.size(); ++k)
        if (std::abs(s_grid[k]) < std::abs(s_grid[k0])) k0 = k;
    if (!run.admissible[k0])
        throw std::runtime_error("mass_curve: the undeformed solve failed");
    run.m0 = run.mass_samples[k0];
    double h = (s_grid.size() > 1) ? s_grid[k0 + 1] - s_grid[k0] : 1.0;

    run.admissible_lo = 0.0;
    run.admissible_hi = 0.0;
    for (size_t d = 1; k0 >= d && k0 + d < s_grid.size(); ++d) {
        if (!run.admissible[k0 - d] || !run.admissible[k0 + d]) break;
        run.admissible_lo = s_grid[k0 - d];
        run.admissible_hi = s_grid[k0 + d];
    }

    auto ms = [&](long off) { return run.mass_samples[k0 + static_cast<size_t>(off)]; };
    if (k0 >= 2 && k0 + 2 < s_grid.size() && run.admissible[k0 - 2] && run.admissible[k0 + 2] &&
        run.admissible[k0 - 1] && run.admissible[k0 + 1])
        run.mdot0_fd = (-ms(2) + 8.0 * ms(1) - 8.0 * ms(-1) + ms(-2)) / (12.0 * h);
    else if (k0 >= 1 && k0 + 1 < s_grid.size() && run.admissible[k0 - 1] && run.admissible[k0 + 1])
        run.mdot0_fd = (ms(1) - ms(-1)) / (2.0 * h);
    else
        run.mdot0_fd = nan;

    run.mdot0_formula = mdot0_formula(base, c).value;

    run.mddot_max = 0.0;
    for (size_t k = 1; k + 1 < s_grid.size(); ++k) {
        if (!run.admissible[k - 1] || !run.admissible[k] || !run.admissible[k + 1]) continue;
        double dd = (run.mass_samples[k + 1] - 2.0 * run.mass_samples[k] +
                     run.mass_samples[k - 1]) /
                    (h * h);
        run.mddot_max = std::max(run.mddot_max, std::abs(dd));
    }
    return run;
}

OscillationReport oscillation_bound_check(const ExteriorHarmonic& U, double a, double mdot0,
                                          double m0) {
    if (!(a > 3.0 * U.inner_radius()))
        throw std::invalid_argument("oscillation_bound_check: need a > 3 R");
    const int n = U.dimension();
    OscillationReport rep;
    rep.sup_dev = U.sup_deviation(a);
    rep.variation_term = std::pow(std::pow(a, 4.0 - n) * std::max(mdot0, 0.0), 0.25);
    rep.mass_term = std::pow(a, 2.0 - n) * std::abs(m0);
    double denom = rep.variation_term + rep.mass_term;
    rep.ratio = (denom > 0.0) ? rep.sup_dev / denom : 0.0;

    // volume average of U over the shell a < |x| < 2a
    double vol = integrate_1d([n](double r) { return std::pow(r, n - 1.0); }, a, 2.0 * a);
    double avg = integrate_1d(
                     [&U, n](double r) {
                         return U.spherical_average(r) * std::pow(r, n - 1.0);
                     },
                     a, 2.0 * a) /
                 vol;
    rep.shell_average = avg;

    // sup over the shell of the deviation from the shell average
    SphereSample sphere = SphereSample::build(n, 24);
    double sup = 0.0;
    const int radial_samples = 25;
    for (int i = 0; i < radial_samples; ++i) {
        double r = a * std::pow(2.0, i / (radial_samples - 1.0));
        for (Eigen::Index j = 0; j < sphere.size(); ++j)
            sup = std::max(sup, std::abs(U.value(r * sphere.directions.row(j).transpose()) - avg));
    }
    rep.chain_sup = sup;
    IntegralResult grad4 = grad_u_fourth_integral(U, a);
    rep.grad4_integral = grad4.value;
    rep.chain_rhs = std::pow(std::pow(a, 4.0 - n) * std::max(grad4.value, 0.0), 0.25);
    rep.chain_ratio = (rep.chain_rhs > 0.0) ? rep.chain_sup / rep.chain_rhs : 0.0;
    return rep;
}

DeltaGammaVerdict delta_gamma_experiment(const FlowRun& run, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("delta_gamma_experiment: gamma must be > 0");
    if (!(run.mddot_max > 0.0))
        throw std::invalid_argument("delta_gamma_experiment: run has no curvature estimate");
    DeltaGammaVerdict v;
    v.gamma = gamma;
    v.C0 = run.mddot_max;
    v.s_star = -gamma / run.mddot_max;
    v.m0 = run.m0;
    v.m0_bound = gamma * gamma / (2.0 * run.mddot_max);
    v.mdot0 = run.mdot0_fd;
    v.premise_m0 = run.m0 < v.m0_bound;
    v.conclusion = run.mdot0_fd < gamma;

    if (v.s_star >= run.admissible_lo && v.s_star <= run.admissible_hi) {
        // quadratic interpolation through the three nearest admissible samples
        size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < run.s_grid.size(); ++k) {
            if (!run.admissible[k]) continue;
            double d = std::abs(run.s_grid[k] - v.s_star);
            if (d < bd) bd = d, best = k;
        }
        size_t lo = best > 0 && run.admissible[best - 1] ? best - 1 : best;
        size_t hi = best + 1 < run.s_grid.size() && run.admissible[best + 1] ? best + 1 : best;
        if (hi - lo < 2 && lo > 0 && run.admissible[lo - 1]) --lo;
        if (hi - lo < 2 && hi + 1 < run.s_grid.size() && run.admissible[hi + 1]) ++hi;
        double val = 0.0;
        for (size_t i = lo; i <= hi; ++i) {
            double li = 1.0;
            for (size_t j = lo; j <= hi; ++j)
                if (j != i) li *= (v.s_star - run.s_grid[j]) / (run.s_grid[i] - run.s_grid[j]);
            val += li * run.mass_samples[i];
        }
        v.m_at_s_star = val;
        v.premise_curve = val >= -1e-12 * std::max(1.0, std::abs(run.m0));
    }

    if (v.conclusion)
        v.outcome = DeltaGammaVerdict::Outcome::Pass;
    else if (v.m_at_s_star && *v.premise_m0 && *v.premise_curve)
        v.outcome = DeltaGammaVerdict::Outcome::Fail;
    else
        v.outcome = DeltaGammaVerdict::Outcome::Inconclusive;
    return v;
}

} // namespace admlab
