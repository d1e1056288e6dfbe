#ifndef ADMLAB_MASS_HPP
#define ADMLAB_MASS_HPP

#include "admlab/metric.hpp"

#include <optional>
#include <vector>

namespace admlab {

/// Result of a flux-limit extrapolation. The flux sequence is fitted with
/// mass + c * rho^{-beta}; `converged` records whether the fit describes the
/// samples to well below the spread of the raw fluxes.
struct MassReport {
    double mass = 0.0;
    double decay_exponent = 0.0;
    double fit_residual = 0.0;
    bool converged = false;
    std::vector<double> radii;
    std::vector<double> fluxes;
    /// Mass read off the harmonic expansion, when the metric carries one.
    std::optional<double> expansion_mass;
};

/// Flux-integral mass estimate at a single radius:
/// (1 / (2 (n-1) omega_{n-1})) * int_{S_rho} (d_i g_ij - d_j g_ii) nu_j dmu.
double adm_flux(const RadialMetric& g, double rho);
double adm_flux(const ConformallyFlatMetric& g, double rho, int sphere_order = 24);

/// Geometric ladder rho_max * 2^{-k}, k = 0 .. count-1 (descending).
std::vector<double> default_flux_radii(double rho_max, int count = 8);

/// Extrapolated ADM mass. The radial overload picks its ladder from the grid.
MassReport adm_mass(const RadialMetric& g);
MassReport adm_mass(const RadialMetric& g, const std::vector<double>& radii);
MassReport adm_mass(const ConformallyFlatMetric& g, double rho_max, int count = 8,
                    int sphere_order = 24);

/// Mass shift of the conformal change g -> u^{4/(n-2)} g for a nodal factor u -> 1:
/// -(2 / ((n-2) omega_{n-1})) * lim int_{S_rho} u du/dnu dmu_g.
MassReport mass_difference_flux(const RadialMetric& g, const Eigen::VectorXd& u);

} // namespace admlab

#endif
