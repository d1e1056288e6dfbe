#ifndef ADMLAB_METRIC_HPP
#define ADMLAB_METRIC_HPP

#include "admlab/harmonic.hpp"

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace admlab {

/// Value of an integral together with a quadrature refinement error estimate.
struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Source of a positive conformal factor U with pointwise derivatives.
class ConformalFactorSource {
public:
    virtual ~ConformalFactorSource() = default;
    virtual double value(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const = 0;
};

/// Metric g = U^{4/(n-2)} delta on the exterior chart |x| >= R.
class ConformallyFlatMetric {
public:
    /// Harmonic conformal factor; derivatives are exact term-wise.
    explicit ConformallyFlatMetric(ExteriorHarmonic u);
    /// General smooth positive factor with derivatives by central differences.
    ConformallyFlatMetric(int n, double R,
                          std::function<double(const Eigen::VectorXd&)> factor,
                          double fd_step = 1e-4);

    int dimension() const { return n_; }
    double inner_radius() const { return R_; }
    const std::optional<ExteriorHarmonic>& harmonic_source() const { return harmonic_; }

    double factor(const Eigen::VectorXd& x) const { return source_->value(x); }
    Eigen::VectorXd factor_gradient(const Eigen::VectorXd& x) const {
        return source_->gradient(x);
    }
    /// Metric coefficient W = U^{4/(n-2)} (g_ij = W delta_ij).
    double metric_coefficient(const Eigen::VectorXd& x) const;

    /// R = -(4(n-1)/(n-2)) U^{-(n+2)/(n-2)} Lap(U).
    double scalar_curvature(const Eigen::VectorXd& x) const;

    /// Ricci tensor from the conformal-transformation formula in (grad U, Hess U).
    Eigen::MatrixXd ricci(const Eigen::VectorXd& x) const;

    /// trace_g(ricci) for spot checks.
    double ricci_trace(const Eigen::VectorXd& x) const;

    /// |Ric|_g^2 at x.
    double ricci_norm_sq(const Eigen::VectorXd& x) const;

    /// L_g u = Delta_g u - (n-2)/(4(n-1)) R_g u with u a smooth callable
    /// (derivatives of u by 4th-order central differences).
    double conformal_laplacian_apply(const std::function<double(const Eigen::VectorXd&)>& u,
                                     const Eigen::VectorXd& x, double fd_step = 1e-3) const;

    /// Integral of weight(|x|) |Ric|_g^2 dmu_g over the annulus [rho1, rho2].
    IntegralResult ricci_norm_sq_integral(double rho1, double rho2,
                                          const std::function<double(double)>& weight,
                                          int radial_panels = 32, int sphere_order = 16) const;

private:
    int n_;
    double R_;
    std::shared_ptr<const ConformalFactorSource> source_;
    std::optional<ExteriorHarmonic> harmonic_;
    void check_domain(const Eigen::VectorXd& x) const;
};

/// Euclidean integral of |grad U|^4 over the shell B_{3a} \ B_{a/2}.
IntegralResult grad_u_fourth_integral(const ExteriorHarmonic& u, double a,
                                      int radial_panels = 32, int sphere_order = 16);

/// Spherically symmetric metric g = A(r) dr^2 + B(r) r^2 * (round S^{n-1}),
/// sampled on a log-uniform radial grid. Radial derivatives use 4th-order
/// central differences in log r (one-sided at the two edge nodes).
class RadialMetric {
public:
    RadialMetric(int n, Eigen::VectorXd grid_r, Eigen::VectorXd A, Eigen::VectorXd B,
                 double R_flat, double decay_p);

    static RadialMetric from_profiles(int n, double r0, double r1, int points_per_decade,
                                      const std::function<double(double)>& A,
                                      const std::function<double(double)>& B,
                                      double R_flat, double decay_p);

    /// Isotropic Schwarzschild slice: A = B = (1 + m/2 r^{2-n})^{4/(n-2)}.
    static RadialMetric schwarzschild(int n, double mass, double r0, double r1,
                                      int points_per_decade);

    /// Sample a conformally flat metric with radial harmonic factor.
    static RadialMetric from_harmonic_end(const ExteriorHarmonic& u, double r0, double r1,
                                          int points_per_decade);

    int dimension() const { return n_; }
    double R_flat() const { return R_flat_; }
    double decay_p() const { return p_; }
    Eigen::Index size() const { return r_.size(); }
    const Eigen::VectorXd& grid() const { return r_; }
    const Eigen::VectorXd& A() const { return A_; }
    const Eigen::VectorXd& B() const { return B_; }
    double log_step() const { return h_; }
    double r_min() const { return r_(0); }
    double r_max() const { return r_(r_.size() - 1); }

    /// True when A == B on the grid (conformally flat representation).
    bool conformally_flat(double tol = 1e-12) const;
    /// Conformal factor samples W = A^{(n-2)/4}; valid when conformally_flat().
    Eigen::VectorXd conformal_factor_profile() const;

    // Nodal curvature. Interior margin of 2 nodes is required for point queries.
    double scalar_curvature(double r) const;
    std::pair<double, double> ricci_eigenvalues(double r) const; // (radial, tangential)
    const Eigen::VectorXd& scalar_curvature_nodes() const;
    const Eigen::VectorXd& ricci_radial_nodes() const;
    const Eigen::VectorXd& ricci_tangential_nodes() const;

    /// Nodal first derivatives d/dr of the profiles.
    const Eigen::VectorXd& A_prime_nodes() const { return Ap_; }
    const Eigen::VectorXd& B_prime_nodes() const { return Bp_; }

    /// Delta_g u - (n-2)/(4(n-1)) R_g u at interior node i for a sampled radial u.
    double conformal_laplacian_apply(const Eigen::VectorXd& u, Eigen::Index i) const;

    /// Integral of weight(r) |Ric|_g^2 dmu_g over [rho1, rho2] by log-grid quadrature.
    IntegralResult ricci_norm_sq_integral(double rho1, double rho2,
                                          const std::function<double(double)>& weight) const;

    /// Volume-weighted radial integral of a nodal integrand over [rho1, rho2]:
    /// omega_{n-1} * int f(r) sqrt(A) rho^{n-1} dr with rho = r sqrt(B).
    double volume_integral(const Eigen::VectorXd& f_nodes, double rho1, double rho2) const;

    Eigen::Index nearest_index(double r) const;
    /// Cubic interpolation of a nodal array at radius r (needs 2-node margin).
    double interpolate(const Eigen::VectorXd& nodes, double r) const;

    /// Empirical decay-rate check at the outer decades; returns worst-case
    /// |A-1| r^p, |B-1| r^p, |A'| r^{p+1}, |R| r^q (q = p + 2 proxy for q > n).
    struct DecayReport {
        double coeff_bound;
        double deriv_bound;
        double curvature_bound; // sup |R| r^{n + margin}
        bool ok;
    };
    DecayReport decay_report() const;

    std::string to_table() const;
    static RadialMetric from_table(const std::string& text);

private:
    int n_;
    Eigen::VectorXd r_, A_, B_;
    double R_flat_, p_, h_;
    // cached nodal derivative and curvature arrays
    Eigen::VectorXd Ap_, Bp_, App_, Bpp_;
    Eigen::VectorXd ric_rad_, ric_tan_, scal_;
    void build_caches();
    void check_margin(double r) const;
};

/// d/dxi arrays on a uniform grid (4th-order central, one-sided at edges).
Eigen::VectorXd log_grid_derivative(const Eigen::VectorXd& f, double h);
Eigen::VectorXd log_grid_second_derivative(const Eigen::VectorXd& f, double h);

/// C^4 radial density supported on the shell [lo, hi]: (1 - x^2)^5 in the
/// affine shell coordinate x, zero outside.
double shell_bump_density(double lo, double hi, double r);

/// Flat-space potential of the shell density: Lap b = -q, b -> 0 at infinity,
/// constant inside the shell, exactly c r^{2-n} outside it.
double shell_bump_potential(int n, double lo, double hi, double r);

/// Conformally flat metric with factor U = 1 + amp * b(r). For amp > 0 the
/// factor is superharmonic, so the scalar curvature is >= 0, supported on the
/// shell; the end is exactly harmonically flat.
RadialMetric bump_metric(int n, double r0, double r_max, int points_per_decade,
                         double amp, double lo, double hi);

} // namespace admlab

#endif
