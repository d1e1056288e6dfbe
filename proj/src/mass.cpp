#include "admlab/mass.hpp"

#include "admlab/constants.hpp"
#include "admlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace admlab {

namespace {

struct FluxFit {
    double mass = 0.0;
    double coeff = 0.0;
    double beta = 1.0;
    double rms = 0.0;
};

FluxFit fit_for_beta(const std::vector<double>& radii, const std::vector<double>& fluxes,
                     double beta) {
    const Eigen::Index k = static_cast<Eigen::Index>(radii.size());
    Eigen::MatrixXd M(k, 4);
    Eigen::VectorXd b(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        double x = std::pow(radii[static_cast<size_t>(i)], -beta);
        M(i, 0) = 1.0;
        M(i, 1) = x;
        M(i, 2) = x * x;
        M(i, 3) = x * x * x;
        b(i) = fluxes[static_cast<size_t>(i)];
    }
    Eigen::Vector4d sol = M.colPivHouseholderQr().solve(b);
    FluxFit fit;
    fit.mass = sol(0);
    fit.coeff = sol(1);
    fit.beta = beta;
    fit.rms = std::sqrt((M * sol - b).squaredNorm() / static_cast<double>(k));
    return fit;
}

FluxFit best_fit(const std::vector<double>& radii, const std::vector<double>& fluxes) {
    double lo = *std::min_element(fluxes.begin(), fluxes.end());
    double hi = *std::max_element(fluxes.begin(), fluxes.end());
    double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
    if (hi - lo <= 1e-13 * scale) {
        // flux already constant to roundoff: nothing to extrapolate
        FluxFit fit;
        fit.mass = 0.5 * (lo + hi);
        fit.coeff = 0.0;
        fit.beta = 1.0;
        fit.rms = 0.5 * (hi - lo);
        return fit;
    }
    // golden-section search of the fit residual over the decay exponent
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.25, b = 8.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fit_for_beta(radii, fluxes, x1).rms;
    double f2 = fit_for_beta(radii, fluxes, x2).rms;
    for (int it = 0; it < 80; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fit_for_beta(radii, fluxes, x1).rms;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fit_for_beta(radii, fluxes, x2).rms;
        }
    }
    FluxFit fit = fit_for_beta(radii, fluxes, 0.5 * (a + b));
    // first-order Richardson fallback when the search ran into its bracket edge
    if (fit.beta < 0.26 || fit.beta > 7.9) {
        FluxFit rich = fit_for_beta(radii, fluxes, 1.0);
        if (rich.rms < fit.rms) fit = rich;
    }
    return fit;
}

// Default sample ladder for a radial grid. The top radius stays well inside
// the one-sided edge stencils and below the radius where the flux prefactor
// rho^{n-1} amplifies FD roundoff in B' past ~1e-9.
std::vector<double> default_radial_ladder(const RadialMetric& g) {
    double rho_max = std::min(g.grid()(g.size() - 4),
                              std::pow(10.0, 6.0 / (g.dimension() - 2)));
    rho_max = std::max(rho_max, g.grid()(11));
    int count = 8;
    while (count > 5 && rho_max * std::pow(2.0, -(count - 1)) < g.grid()(3)) --count;
    return default_flux_radii(rho_max, count);
}

MassReport report_from_samples(std::vector<double> radii, std::vector<double> fluxes) {
    if (radii.size() < 5) throw std::invalid_argument("adm_mass: need at least 5 radii");
    FluxFit fit = best_fit(radii, fluxes);
    MassReport rep;
    rep.mass = fit.mass;
    rep.decay_exponent = fit.beta;
    rep.fit_residual = fit.rms;
    double spread = *std::max_element(fluxes.begin(), fluxes.end()) -
                    *std::min_element(fluxes.begin(), fluxes.end());
    rep.converged = fit.rms <= 0.05 * spread + 1e-12 * std::max(1.0, std::abs(fit.mass));
    rep.radii = std::move(radii);
    rep.fluxes = std::move(fluxes);
    return rep;
}

} // namespace

double adm_flux(const RadialMetric& g, double rho) {
    double A = g.interpolate(g.A(), rho);
    double B = g.interpolate(g.B(), rho);
    double Bp = g.interpolate(g.B_prime_nodes(), rho);
    return 0.5 * std::pow(rho, g.dimension() - 1) * ((A - B) / rho - Bp);
}

double adm_flux(const ConformallyFlatMetric& g, double rho, int sphere_order) {
    const int n = g.dimension();
    const double p = conformal_exponent(n); // 4/(n-2)
    SphereSample sphere = SphereSample::build(n, sphere_order, rho);
    double integral = sphere.integrate([&](const Eigen::VectorXd& x) {
        double U = g.factor(x);
        Eigen::VectorXd dU = g.factor_gradient(x);
        double Ur = dU.dot(x) / x.norm();
        return p * std::pow(U, p - 1.0) * Ur;
    });
    return -integral / (2.0 * unit_sphere_area(n));
}

std::vector<double> default_flux_radii(double rho_max, int count) {
    std::vector<double> radii(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) radii[static_cast<size_t>(k)] = rho_max * std::pow(2.0, -k);
    return radii;
}

MassReport adm_mass(const RadialMetric& g, const std::vector<double>& radii) {
    std::vector<double> fluxes;
    fluxes.reserve(radii.size());
    for (double rho : radii) fluxes.push_back(adm_flux(g, rho));
    MassReport rep = report_from_samples(radii, std::move(fluxes));
    if (g.conformally_flat()) {
        // monopole of the conformal factor at the outermost usable radius
        Eigen::VectorXd U = g.conformal_factor_profile();
        double rho = radii.front();
        double u = g.interpolate(U, rho);
        rep.expansion_mass = 2.0 * (u - 1.0) * std::pow(rho, g.dimension() - 2);
    }
    return rep;
}

MassReport adm_mass(const RadialMetric& g) { return adm_mass(g, default_radial_ladder(g)); }

MassReport adm_mass(const ConformallyFlatMetric& g, double rho_max, int count,
                    int sphere_order) {
    std::vector<double> radii = default_flux_radii(rho_max, count);
    std::vector<double> fluxes;
    fluxes.reserve(radii.size());
    for (double rho : radii) {
        if (rho <= g.inner_radius())
            throw std::domain_error("adm_mass: flux radius inside the excised ball");
        fluxes.push_back(adm_flux(g, rho, sphere_order));
    }
    MassReport rep = report_from_samples(std::move(radii), std::move(fluxes));
    if (g.harmonic_source()) rep.expansion_mass = g.harmonic_source()->mass_from_expansion();
    return rep;
}

MassReport mass_difference_flux(const RadialMetric& g, const Eigen::VectorXd& u) {
    if (u.size() != g.size())
        throw std::invalid_argument("mass_difference_flux: nodal size mismatch");
    const int n = g.dimension();
    Eigen::VectorXd up = log_grid_derivative(u, g.log_step()).cwiseQuotient(g.grid());
    std::vector<double> radii = default_radial_ladder(g);
    std::vector<double> values;
    values.reserve(radii.size());
    for (double rho : radii) {
        double A = g.interpolate(g.A(), rho);
        double B = g.interpolate(g.B(), rho);
        double uv = g.interpolate(u, rho);
        double dv = g.interpolate(up, rho);
        double area_factor = std::pow(rho * std::sqrt(B), n - 1);
        values.push_back(-2.0 / (n - 2.0) * area_factor * uv * dv / std::sqrt(A));
    }
    return report_from_samples(std::move(radii), std::move(values));
}

} // namespace admlab
