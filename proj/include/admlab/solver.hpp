#ifndef ADMLAB_SOLVER_HPP
#define ADMLAB_SOLVER_HPP

#include "admlab/metric.hpp"

namespace admlab {

/// Boundary-value problem for the conformal Laplace equation on a radial
/// background: Delta_g u - ((n-2)/(4(n-1))) R_g u = 0 with u -> 1 at infinity.
struct ConformalBVP {
    RadialMetric metric;
    /// Inner condition at r_min: regularity of a filled center (zero flux) or
    /// decay matching toward a small-radius inverted second end.
    enum class Inner { FilledCenter, SecondEnd };
    Inner inner = Inner::FilledCenter;
};

struct SolveReport {
    Eigen::VectorXd u;
    double residual = 0.0;       // max interior residual, relative to row scale
    double tail_exponent = 0.0;  // fitted decay rate of u - 1 at the outer decade
    double min_u = 0.0;
    bool m_matrix = false;       // sign pattern of the assembled operator
};

/// Second-order conservative FD solve in log r (direct tridiagonal).
/// Throws std::runtime_error when the system is singular or u <= 0 somewhere.
SolveReport solve_conformal_factor(const ConformalBVP& bvp);

/// Scalar-flattening of g with R_g >= 0: g_tilde = w^{4/(n-2)} g is
/// scalar-flat, v = 1/w >= 1 recovers g = v^{4/(n-2)} g_tilde.
struct FlattenResult {
    RadialMetric g_tilde;
    Eigen::VectorXd w;
    Eigen::VectorXd v;
    ExteriorHarmonic U_tilde;  // fitted harmonically flat end of g_tilde
    double fit_residual = 0.0;
    SolveReport report;
};

/// The precondition R_g >= 0 is checked against the nodal FD curvature, whose
/// truncation floor sets the default tolerance.
FlattenResult scalar_flatten(const RadialMetric& g, double curvature_tolerance = 1e-8);

/// Constant C with sup_{|x|>a} (U - U_tilde) <= C (m - m_tilde), assembled
/// from the exterior Poisson kernel sup over |x| > a, |xi| = (a+1)/2 and the
/// spherical-average identity. Requires a > 1.
double comparison_bound_constant(double a, int n);

} // namespace admlab

#endif
