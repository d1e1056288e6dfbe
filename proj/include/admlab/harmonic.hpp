#ifndef ADMLAB_HARMONIC_HPP
#define ADMLAB_HARMONIC_HPP

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace admlab {

/// A decaying solid harmonic term c * |x|^{2-n-l} * C_l^{(n-2)/2}(x_axis/|x|),
/// the exterior zonal harmonic of degree l about a coordinate axis.
struct HarmonicTerm {
    int degree = 1;   // l in [1, 4]
    int axis = 0;     // coordinate axis index in [0, n)
    double coeff = 0.0;
};

/// A point source contributing strength * |x - p|^{2-n}, with p inside B_R.
struct PointSource {
    Eigen::VectorXd location;
    double strength = 0.0;
};

/// Positive harmonic function U on R^n \ B_R with U -> 1 at infinity, stored
/// as a monopole coefficient plus zonal multipole terms and point sources.
/// Instances are immutable; the factory rejects representations that are not
/// positive on a dense sphere sample near the inner boundary.
class ExteriorHarmonic {
public:
    /// Validating factory. Throws std::invalid_argument on bad degrees, sources
    /// outside B_R, or positivity failure on the admission sample.
    static ExteriorHarmonic make(int n, double R, double monopole_coeff,
                                 std::vector<HarmonicTerm> higher = {},
                                 std::vector<PointSource> sources = {});

    static ExteriorHarmonic flat(int n, double R = 1.0) { return make(n, R, 0.0); }

    /// Schwarzschild factor U = 1 + (m/2) r^{2-n}.
    static ExteriorHarmonic schwarzschild(int n, double mass, double R = 1.0) {
        return make(n, R, 0.5 * mass);
    }

    int dimension() const { return n_; }
    double inner_radius() const { return R_; }
    double monopole_coeff() const { return monopole_; }
    const std::vector<HarmonicTerm>& higher_terms() const { return higher_; }
    const std::vector<PointSource>& point_sources() const { return sources_; }

    /// U(x). Throws std::domain_error when |x| < R.
    double value(const Eigen::VectorXd& x) const;
    /// Analytic term-by-term gradient of U.
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
    /// Analytic term-by-term Hessian of U.
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
    /// trace(hessian); zero up to roundoff for every admitted representation.
    double laplacian(const Eigen::VectorXd& x) const;

    /// Average of U over the sphere S_r by quadrature. Requires r >= R and all
    /// point sources strictly inside B_r.
    double spherical_average(double r, int quad_order = 24) const;

    /// sup_{|x| >= a} |U(x) - 1|. By the maximum principle (U - 1 is harmonic
    /// and vanishes at infinity) the sup lives on the sphere of radius a; a
    /// dense sample there is polished by local refinement on the sphere.
    double sup_deviation(double a, int sample_order = 48) const;

    /// m = 2 * (monopole_coeff + sum of point-source strengths), per the
    /// expansion U = 1 + (m/2)|x|^{2-n} + O(|x|^{1-n}).
    double mass_from_expansion() const;

    std::string to_record() const;
    static ExteriorHarmonic from_record(const std::string& text);

private:
    ExteriorHarmonic() = default;
    int n_ = 3;
    double R_ = 1.0;
    double monopole_ = 0.0;
    std::vector<HarmonicTerm> higher_;
    std::vector<PointSource> sources_;
};

/// Exterior Poisson kernel for R^n \ B_r with zero condition at infinity:
/// K(x,y) = (|x|^2 - r^2) / (omega_{n-1} r |x-y|^n), y on S_r, |x| > r.
double exterior_poisson_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                               double r, int n);

/// Harmonic extension of boundary values on S_r to |x| > r, decaying at
/// infinity: integral of K(x,.) * boundary over S_r by sphere quadrature.
double poisson_extend(const std::function<double(const Eigen::VectorXd&)>& boundary,
                      double r, const Eigen::VectorXd& x, int quad_order = 48);

/// Gegenbauer polynomial C_l^lambda(t) and its first two derivatives in t.
struct Gegenbauer {
    double value;
    double d1;
    double d2;
};
Gegenbauer gegenbauer_eval(int l, double lambda, double t);

} // namespace admlab

#endif
