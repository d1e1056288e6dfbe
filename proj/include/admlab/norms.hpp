#ifndef ADMLAB_NORMS_HPP
#define ADMLAB_NORMS_HPP

#include "admlab/harmonic.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace admlab {

/// Parameters of the weighted Schauder norm |v|_{k+alpha, sigma, rho}:
/// sup-weighted derivatives up to order k plus a weighted Holder seminorm of
/// the k-th derivative, measured on the exterior region r >= rho.
struct WeightedNormSpec {
    int n = 3;            // ambient dimension (sets the sigma window)
    double sigma = -0.5;  // weight exponent, in (2-n, 0)
    double alpha = 0.5;   // Holder exponent, in (0, 1)
    int k = 0;            // derivative order, 0, 1 or 2
    double rho = 1.0;     // inner restriction radius, > 1 (or grid minimum)
};

/// Throws std::invalid_argument when the spec leaves the admitted windows.
void validate(const WeightedNormSpec& spec);

struct WeightedNormBreakdown {
    std::vector<double> sup_terms; // sup r^{j - sigma} |v^{(j)}|, j = 0..k
    double holder = 0.0;           // dyadic-pair estimate of [v^{(k)}]_{alpha, sigma - k}
    double total = 0.0;
};

/// Weighted norm of a function sampled on a log-uniform radial grid.
/// Derivatives in r are taken by high-order differences in log r; the Holder
/// seminorm is estimated over sampled pairs with separation in [grid step,
/// r/2] inside dyadic annuli (a refinement-consistent lower bound of the
/// continuum seminorm).
///
/// Throws std::invalid_argument when fewer than 8 sample nodes lie in
/// r >= rho (insufficient margin for the requested derivative order).
WeightedNormBreakdown weighted_norm_breakdown(const Eigen::VectorXd& r,
                                              const Eigen::VectorXd& v,
                                              const WeightedNormSpec& spec);
double weighted_norm(const Eigen::VectorXd& r, const Eigen::VectorXd& v,
                     const WeightedNormSpec& spec);

/// Exterior barrier f_inf(x) = -|x|^sigma / U(x) on |x| >= 2.
double barrier_f_infinity(const ExteriorHarmonic& U, double sigma, const Eigen::VectorXd& x);

/// Closed form of the metric Laplacian of the barrier for g = U^{4/(n-2)} delta
/// with harmonic U: Delta_g f_inf = -sigma (n - 2 + sigma) |x|^{sigma-2}
/// U^{-(n+2)/(n-2)}, strictly positive for sigma in (2-n, 0).
double barrier_laplacian_closed_form(const ExteriorHarmonic& U, double sigma,
                                     const Eigen::VectorXd& x);

struct BarrierReport {
    double max_rel_mismatch = 0.0; // closed form vs FD metric Laplacian
    double min_closed_form = 0.0;  // positivity witness
    double C2 = 0.0;               // sup |x|^{sigma-2} / Delta_g f_inf
    bool positive = false;
    Eigen::Index samples = 0;
};

/// Two-route check of the barrier Laplacian at the given sample points
/// (all with |x| > 2): the closed form against finite differences of f_inf
/// under the conformally flat metric Laplacian.
BarrierReport barrier_subharmonicity_check(const ExteriorHarmonic& U, double sigma,
                                           const std::vector<Eigen::VectorXd>& points,
                                           double fd_step = 5e-3);

/// One member of an injectivity test family: a decaying radial function and
/// its metric Laplacian, sampled on a shared log-uniform grid.
struct InjectivitySample {
    std::string label;
    Eigen::VectorXd r;
    Eigen::VectorXd v;
    Eigen::VectorXd lap_v;
};

struct InjectivityReport {
    double max_ratio_sup = 0.0;  // worst |v|_{0,sigma,rho} / |Lap v|_{0,sigma-2,rho}
    double max_ratio_full = 0.0; // worst |v|_{2+a,sigma,rho} / |Lap v|_{a,sigma-2,rho}
    std::vector<double> ratios_sup;
    std::vector<double> ratios_full;
    std::vector<std::string> excluded; // zero-denominator members
};

/// Empirical injectivity constants of the Laplacian between weighted spaces,
/// measured over the family. Members whose denominator norm vanishes are
/// excluded and reported.
InjectivityReport injectivity_ratio(const std::vector<InjectivitySample>& family,
                                    const WeightedNormSpec& spec);

} // namespace admlab

#endif
