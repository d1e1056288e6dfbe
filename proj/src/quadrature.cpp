#include "admlab/quadrature.hpp"
#include "admlab/constants.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace admlab {

GaussRule gauss_gegenbauer(int npoints, double expo) {
    if (npoints < 1) throw std::invalid_argument("gauss_gegenbauer: npoints < 1");
    if (expo <= -1.0) throw std::invalid_argument("gauss_gegenbauer: expo must be > -1");
    // Symmetric Jacobi weight (1-t^2)^expo: recurrence a_k = 0,
    // b_k = 4k(k+e)^2(k+2e) / ((2k+2e)^2 (2k+2e+1)(2k+2e-1)) with e = expo.
    const double e = expo;
    const double mu0 = std::sqrt(kPi) * std::tgamma(e + 1.0) / std::tgamma(e + 1.5);

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npoints, npoints);
    for (int k = 1; k < npoints; ++k) {
        double num = 4.0 * k * (k + e) * (k + e) * (k + 2.0 * e);
        double den = (2.0 * k + 2.0 * e) * (2.0 * k + 2.0 * e) *
                     (2.0 * k + 2.0 * e + 1.0) * (2.0 * k + 2.0 * e - 1.0);
        double b = std::sqrt(num / den);
        J(k - 1, k) = b;
        J(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(npoints);
    for (int i = 0; i < npoints; ++i) {
        double v0 = es.eigenvectors()(0, i);
        rule.weights(i) = mu0 * v0 * v0;
    }
    return rule;
}

GaussRule gauss_legendre(int npoints) { return gauss_gegenbauer(npoints, 0.0); }

GaussRule gauss_legendre_on(int npoints, double a, double b) {
    GaussRule base = gauss_legendre(npoints);
    GaussRule out;
    out.nodes = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes.array();
    out.weights = 0.5 * (b - a) * base.weights;
    return out;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int panels, int points_per_panel) {
    GaussRule base = gauss_legendre(points_per_panel);
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + (b - a) * p / panels;
        double hi = a + (b - a) * (p + 1) / panels;
        for (int i = 0; i < points_per_panel; ++i) {
            double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * base.nodes(i);
            total += 0.5 * (hi - lo) * base.weights(i) * f(t);
        }
    }
    return total;
}

namespace {

// Recursive product construction of a sphere sample for S^{d-1}, unit radius.
void sphere_points(int d, int order, Eigen::MatrixXd& dirs, Eigen::VectorXd& wts) {
    if (d == 2) {
        int m = std::max(4, 2 * order + 2);
        dirs.resize(m, 2);
        wts.resize(m);
        for (int i = 0; i < m; ++i) {
            double phi = 2.0 * kPi * i / m;
            dirs(i, 0) = std::cos(phi);
            dirs(i, 1) = std::sin(phi);
            wts(i) = 2.0 * kPi / m;
        }
        return;
    }
    Eigen::MatrixXd sub_dirs;
    Eigen::VectorXd sub_wts;
    sphere_points(d - 1, order, sub_dirs, sub_wts);
    GaussRule polar = gauss_gegenbauer(order, 0.5 * (d - 3));
    Eigen::Index ns = sub_wts.size();
    dirs.resize(ns * order, d);
    wts.resize(ns * order);
    Eigen::Index row = 0;
    for (int i = 0; i < order; ++i) {
        double t = polar.nodes(i);
        double sint = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (Eigen::Index j = 0; j < ns; ++j) {
            dirs.block(row, 0, 1, d - 1) = sint * sub_dirs.row(j);
            dirs(row, d - 1) = t;
            wts(row) = polar.weights(i) * sub_wts(j);
            ++row;
        }
    }
}

} // namespace

SphereSample SphereSample::build(int n, int order, double radius) {
    if (n < 2) throw std::invalid_argument("SphereSample: n must be >= 2");
    if (order < 2) order = 2;
    if (radius <= 0.0) throw std::invalid_argument("SphereSample: radius must be > 0");
    SphereSample s;
    s.n = n;
    s.radius = radius;
    sphere_points(n, order, s.directions, s.weights);
    s.weights *= std::pow(radius, n - 1);
    return s;
}

double SphereSample::integrate(const std::function<double(const Eigen::VectorXd&)>& f) const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < size(); ++i) total += weights(i) * f(point(i));
    return total;
}

Eigen::VectorXd fd_weights(double z, const Eigen::VectorXd& x, int m) {
    // Fornberg's algorithm for finite-difference weights.
    const int nd = static_cast<int>(x.size()) - 1;
    if (nd < m) throw std::invalid_argument("fd_weights: need more than m+1 points");
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(nd + 1, m + 1);
    double c1 = 1.0;
    double c4 = x(0) - z;
    c(0, 0) = 1.0;
    for (int i = 1; i <= nd; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x(i) - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x(i) - x(j);
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    return c.col(m);
}

} // namespace admlab
