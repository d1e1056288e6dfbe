#ifndef ADMLAB_QUADRATURE_HPP
#define ADMLAB_QUADRATURE_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace admlab {

/// Gauss quadrature rule on [-1,1] for the Gegenbauer weight (1-t^2)^expo.
/// expo = 0 gives Gauss-Legendre. Nodes/weights via Golub-Welsch.
struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

GaussRule gauss_gegenbauer(int npoints, double expo);
GaussRule gauss_legendre(int npoints);

/// Gauss-Legendre rule mapped to [a,b].
GaussRule gauss_legendre_on(int npoints, double a, double b);

/// Composite 1D quadrature of f on [a,b]: Gauss-Legendre panels.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int panels = 16, int points_per_panel = 12);

/// Quasi-uniform quadrature sample of the sphere of given radius in R^n.
///
/// Built as a product of Gauss-Gegenbauer rules in the polar angles and a
/// uniform rule on the base circle, so that spherical polynomials up to
/// degree ~2*order-1 integrate exactly. Weights sum to
/// unit_sphere_area(n) * radius^{n-1}.
struct SphereSample {
    int n = 3;
    double radius = 1.0;
    Eigen::MatrixXd directions; // N x n, unit vectors
    Eigen::VectorXd weights;    // N, positive

    static SphereSample build(int n, int order, double radius = 1.0);

    Eigen::Index size() const { return weights.size(); }
    Eigen::VectorXd point(Eigen::Index i) const { return radius * directions.row(i).transpose(); }

    /// Integral of f over the sphere of this sample's radius (Euclidean area element).
    double integrate(const std::function<double(const Eigen::VectorXd&)>& f) const;
};

/// Finite-difference weights (Fornberg) at evaluation point z for derivative
/// order m, given grid locations x. Returns weights so that
/// f^(m)(z) ~= sum_i w_i f(x_i).
Eigen::VectorXd fd_weights(double z, const Eigen::VectorXd& x, int m);

} // namespace admlab

#endif
