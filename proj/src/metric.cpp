#include "admlab/metric.hpp"
#include "admlab/constants.hpp"
#include "admlab/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace admlab {

namespace {

class HarmonicFactor final : public ConformalFactorSource {
public:
    explicit HarmonicFactor(ExteriorHarmonic u) : u_(std::move(u)) {}
    double value(const Eigen::VectorXd& x) const override { return u_.value(x); }
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override { return u_.gradient(x); }
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override { return u_.hessian(x); }

private:
    ExteriorHarmonic u_;
};

class CallableFactor final : public ConformalFactorSource {
public:
    CallableFactor(std::function<double(const Eigen::VectorXd&)> f, double h)
        : f_(std::move(f)), h_(h) {}
    double value(const Eigen::VectorXd& x) const override { return f_(x); }
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
        const int n = static_cast<int>(x.size());
        Eigen::VectorXd g(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e(i) = h_;
            g(i) = (-f_(x + 2 * e) + 8 * f_(x + e) - 8 * f_(x - e) + f_(x - 2 * e)) / (12 * h_);
        }
        return g;
    }
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
        const int n = static_cast<int>(x.size());
        Eigen::MatrixXd H(n, n);
        const double f0 = f_(x);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
            ei(i) = h_;
            H(i, i) = (-f_(x + 2 * ei) + 16 * f_(x + ei) - 30 * f0 + 16 * f_(x - ei) -
                       f_(x - 2 * ei)) /
                      (12 * h_ * h_);
            for (int j = 0; j < i; ++j) {
                Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
                ej(j) = h_;
                H(i, j) = (f_(x + ei + ej) - f_(x + ei - ej) - f_(x - ei + ej) +
                           f_(x - ei - ej)) /
                          (4 * h_ * h_);
                H(j, i) = H(i, j);
            }
        }
        return H;
    }

private:
    std::function<double(const Eigen::VectorXd&)> f_;
    double h_;
};

} // namespace

ConformallyFlatMetric::ConformallyFlatMetric(ExteriorHarmonic u)
    : n_(u.dimension()), R_(u.inner_radius()), harmonic_(u) {
    source_ = std::make_shared<HarmonicFactor>(std::move(u));
}

ConformallyFlatMetric::ConformallyFlatMetric(int n, double R,
                                             std::function<double(const Eigen::VectorXd&)> factor,
                                             double fd_step)
    : n_(n), R_(R) {
    if (n < 3) throw std::invalid_argument("ConformallyFlatMetric: n must be >= 3");
    source_ = std::make_shared<CallableFactor>(std::move(factor), fd_step);
}

void ConformallyFlatMetric::check_domain(const Eigen::VectorXd& x) const {
    if (x.norm() < R_ * (1.0 - 1e-12))
        throw std::domain_error("ConformallyFlatMetric: point inside chart inner radius");
}

double ConformallyFlatMetric::metric_coefficient(const Eigen::VectorXd& x) const {
    check_domain(x);
    return std::pow(source_->value(x), conformal_exponent(n_));
}

double ConformallyFlatMetric::scalar_curvature(const Eigen::VectorXd& x) const {
    check_domain(x);
    const double u = source_->value(x);
    const double lap = source_->hessian(x).trace();
    return -(4.0 * (n_ - 1) / (n_ - 2)) * std::pow(u, -(n_ + 2.0) / (n_ - 2.0)) * lap;
}

Eigen::MatrixXd ConformallyFlatMetric::ricci(const Eigen::VectorXd& x) const {
    check_domain(x);
    const double u = source_->value(x);
    const Eigen::VectorXd g = source_->gradient(x);
    const Eigen::MatrixXd H = source_->hessian(x);
    const double lap = H.trace();
    const double grad2 = g.squaredNorm();
    Eigen::MatrixXd ric = -2.0 / u * H;
    ric += (2.0 * n_ / (n_ - 2.0)) / (u * u) * (g * g.transpose());
    ric -= (2.0 / (n_ - 2.0)) * (lap / u + grad2 / (u * u)) *
           Eigen::MatrixXd::Identity(n_, n_);
    return ric;
}

double ConformallyFlatMetric::ricci_trace(const Eigen::VectorXd& x) const {
    const double w = metric_coefficient(x);
    return ricci(x).trace() / w;
}

double ConformallyFlatMetric::ricci_norm_sq(const Eigen::VectorXd& x) const {
    const double w = metric_coefficient(x);
    return ricci(x).squaredNorm() / (w * w);
}

double ConformallyFlatMetric::conformal_laplacian_apply(
    const std::function<double(const Eigen::VectorXd&)>& u, const Eigen::VectorXd& x,
    double fd_step) const {
    check_domain(x);
    CallableFactor fu(u, fd_step);
    const double U = source_->value(x);
    const Eigen::VectorXd gU = source_->gradient(x);
    const double lap_flat = fu.hessian(x).trace();
    const Eigen::VectorXd gu = fu.gradient(x);
    const double lap_g =
        std::pow(U, -conformal_exponent(n_)) * (lap_flat + 2.0 / U * gU.dot(gu));
    return lap_g - conformal_coefficient(n_) * scalar_curvature(x) * u(x);
}

IntegralResult ConformallyFlatMetric::ricci_norm_sq_integral(
    double rho1, double rho2, const std::function<double(double)>& weight, int radial_panels,
    int sphere_order) const {
    if (rho1 < R_ * (1.0 - 1e-12) || rho2 <= rho1)
        throw std::domain_error("ricci_norm_sq_integral: bad annulus");
    auto run = [&](int panels, int order) {
        SphereSample sphere = SphereSample::build(n_, order);
        GaussRule rad = gauss_legendre(12);
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            double lo = rho1 + (rho2 - rho1) * p / panels;
            double hi = rho1 + (rho2 - rho1) * (p + 1) / panels;
            for (int i = 0; i < 12; ++i) {
                double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rad.nodes(i);
                double wr = 0.5 * (hi - lo) * rad.weights(i) * std::pow(r, n_ - 1);
                for (Eigen::Index q = 0; q < sphere.size(); ++q) {
                    Eigen::VectorXd x = r * sphere.directions.row(q).transpose();
                    double vol = std::pow(source_->value(x), 2.0 * n_ / (n_ - 2.0));
                    total += wr * sphere.weights(q) * weight(r) * ricci_norm_sq(x) * vol;
                }
            }
        }
        return total;
    };
    IntegralResult out;
    out.value = run(radial_panels, sphere_order);
    double coarse = run(std::max(2, radial_panels / 2), std::max(6, sphere_order / 2));
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

IntegralResult grad_u_fourth_integral(const ExteriorHarmonic& u, double a, int radial_panels,
                                      int sphere_order) {
    const int n = u.dimension();
    if (0.5 * a < u.inner_radius() * (1.0 - 1e-12))
        throw std::domain_error("grad_u_fourth_integral: a/2 < R");
    auto run = [&](int panels, int order) {
        SphereSample sphere = SphereSample::build(n, order);
        GaussRule rad = gauss_legendre(12);
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            double lo = 0.5 * a + 2.5 * a * p / panels;
            double hi = 0.5 * a + 2.5 * a * (p + 1) / panels;
            for (int i = 0; i < 12; ++i) {
                double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rad.nodes(i);
                double wr = 0.5 * (hi - lo) * rad.weights(i) * std::pow(r, n - 1);
                for (Eigen::Index q = 0; q < sphere.size(); ++q) {
                    Eigen::VectorXd x = r * sphere.directions.row(q).transpose();
                    double g2 = u.gradient(x).squaredNorm();
                    total += wr * sphere.weights(q) * g2 * g2;
                }
            }
        }
        return total;
    };
    IntegralResult out;
    out.value = run(radial_panels, sphere_order);
    double coarse = run(std::max(2, radial_panels / 2), std::max(6, sphere_order / 2));
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

namespace {

// uniform-grid derivative of order m, 6th-order accurate: central 7-point
// stencils inside, one-sided 9-point stencils at the three edge nodes
Eigen::VectorXd uniform_grid_derivative(const Eigen::VectorXd& f, double h, int m) {
    const Eigen::Index N = f.size();
    const int edge = 3, wide = 9;
    Eigen::VectorXd d(N);
    Eigen::VectorXd xc(7);
    for (int k = 0; k < 7; ++k) xc(k) = (k - 3) * h;
    Eigen::VectorXd wc = fd_weights(0.0, xc, m);
    for (Eigen::Index i = edge; i + edge < N; ++i) {
        double acc = 0.0;
        for (int k = 0; k < 7; ++k) acc += wc(k) * f(i - 3 + k);
        d(i) = acc;
    }
    Eigen::VectorXd xe(wide);
    for (int k = 0; k < wide; ++k) xe(k) = k * h;
    for (Eigen::Index i = 0; i < edge; ++i) {
        Eigen::VectorXd w = fd_weights(static_cast<double>(i) * h, xe, m);
        double lo = 0.0, hi = 0.0;
        double sign = (m % 2 == 1) ? -1.0 : 1.0;
        for (int k = 0; k < wide; ++k) {
            lo += w(k) * f(k);
            hi += sign * w(k) * f(N - 1 - k);
        }
        d(i) = lo;
        d(N - 1 - i) = hi;
    }
    return d;
}

} // namespace

Eigen::VectorXd log_grid_derivative(const Eigen::VectorXd& f, double h) {
    return uniform_grid_derivative(f, h, 1);
}

Eigen::VectorXd log_grid_second_derivative(const Eigen::VectorXd& f, double h) {
    return uniform_grid_derivative(f, h, 2);
}

RadialMetric::RadialMetric(int n, Eigen::VectorXd grid_r, Eigen::VectorXd A, Eigen::VectorXd B,
                           double R_flat, double decay_p)
    : n_(n), r_(std::move(grid_r)), A_(std::move(A)), B_(std::move(B)), R_flat_(R_flat),
      p_(decay_p) {
    if (n_ < 3) throw std::invalid_argument("RadialMetric: n must be >= 3");
    if (r_.size() < 16) throw std::invalid_argument("RadialMetric: grid too small");
    if (A_.size() != r_.size() || B_.size() != r_.size())
        throw std::invalid_argument("RadialMetric: profile length mismatch");
    if (p_ <= 0.5 * (n_ - 2))
        throw std::invalid_argument("RadialMetric: decay exponent must exceed (n-2)/2");
    h_ = std::log(r_(1) / r_(0));
    for (Eigen::Index i = 0; i + 1 < r_.size(); ++i) {
        if (r_(i + 1) <= r_(i))
            throw std::invalid_argument("RadialMetric: grid must be strictly increasing");
        if (std::abs(std::log(r_(i + 1) / r_(i)) - h_) > 1e-9 * h_)
            throw std::invalid_argument("RadialMetric: grid must be log-uniform");
    }
    if (A_.minCoeff() <= 0.0 || B_.minCoeff() <= 0.0)
        throw std::invalid_argument("RadialMetric: profiles must be positive");
    build_caches();
}

RadialMetric RadialMetric::from_profiles(int n, double r0, double r1, int points_per_decade,
                                         const std::function<double(double)>& A,
                                         const std::function<double(double)>& B, double R_flat,
                                         double decay_p) {
    if (r0 <= 0.0 || r1 <= r0) throw std::invalid_argument("RadialMetric: bad radial range");
    const double decades = std::log10(r1 / r0);
    const Eigen::Index N = std::max<Eigen::Index>(16, std::llround(decades * points_per_decade) + 1);
    Eigen::VectorXd r(N), a(N), b(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        r(i) = r0 * std::pow(r1 / r0, static_cast<double>(i) / (N - 1));
        a(i) = A(r(i));
        b(i) = B(r(i));
    }
    return RadialMetric(n, std::move(r), std::move(a), std::move(b), R_flat, decay_p);
}

RadialMetric RadialMetric::schwarzschild(int n, double mass, double r0, double r1,
                                         int points_per_decade) {
    auto W = [n, mass](double r) {
        return std::pow(1.0 + 0.5 * mass * std::pow(r, 2.0 - n), conformal_exponent(n));
    };
    return from_profiles(n, r0, r1, points_per_decade, W, W, r0, n - 2.0);
}

RadialMetric RadialMetric::from_harmonic_end(const ExteriorHarmonic& u, double r0, double r1,
                                             int points_per_decade) {
    if (!u.higher_terms().empty())
        throw std::invalid_argument("from_harmonic_end: factor must be radial (monopole only)");
    const int n = u.dimension();
    auto W = [&u, n](double r) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        x(0) = r;
        return std::pow(u.value(x), conformal_exponent(n));
    };
    return from_profiles(n, r0, r1, points_per_decade, W, W, std::max(r0, u.inner_radius()),
                         n - 2.0);
}

void RadialMetric::build_caches() {
    const Eigen::Index N = r_.size();
    const int k = n_ - 1;
    Eigen::VectorXd Axi = log_grid_derivative(A_, h_);
    Eigen::VectorXd Bxi = log_grid_derivative(B_, h_);
    Eigen::VectorXd Axixi = log_grid_second_derivative(A_, h_);
    Eigen::VectorXd Bxixi = log_grid_second_derivative(B_, h_);
    Ap_.resize(N);
    Bp_.resize(N);
    App_.resize(N);
    Bpp_.resize(N);
    ric_rad_.resize(N);
    ric_tan_.resize(N);
    scal_.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double r = r_(i);
        Ap_(i) = Axi(i) / r;
        Bp_(i) = Bxi(i) / r;
        App_(i) = (Axixi(i) - Axi(i)) / (r * r);
        Bpp_(i) = (Bxixi(i) - Bxi(i)) / (r * r);
        const double A = A_(i), B = B_(i);
        const double sB = std::sqrt(B);
        const double rho = r * sB;
        const double rhop = sB + r * Bp_(i) / (2 * sB);
        const double rhopp = Bp_(i) / sB + r * Bpp_(i) / (2 * sB) -
                             r * Bp_(i) * Bp_(i) / (4 * B * sB);
        const double rho_t2 = rhop * rhop / A;
        const double rho_tt = rhopp / A - rhop * Ap_(i) / (2 * A * A);
        ric_rad_(i) = -k * rho_tt / rho;
        ric_tan_(i) = -rho_tt / rho - (k - 1) * (rho_t2 - 1.0) / (rho * rho);
        scal_(i) = ric_rad_(i) + k * ric_tan_(i);
    }
}

bool RadialMetric::conformally_flat(double tol) const {
    return ((A_ - B_).cwiseAbs().maxCoeff() <= tol * A_.cwiseAbs().maxCoeff());
}

Eigen::VectorXd RadialMetric::conformal_factor_profile() const {
    if (!conformally_flat(1e-10))
        throw std::logic_error("conformal_factor_profile: metric is not conformally flat");
    return A_.array().pow((n_ - 2.0) / 4.0);
}

Eigen::Index RadialMetric::nearest_index(double r) const {
    double t = std::log(r / r_(0)) / h_;
    Eigen::Index i = std::llround(t);
    return std::clamp<Eigen::Index>(i, 0, r_.size() - 1);
}

void RadialMetric::check_margin(double r) const {
    if (r < r_(2) * (1.0 - 1e-12) || r > r_(r_.size() - 3) * (1.0 + 1e-12))
        throw std::domain_error("RadialMetric: radius inside the boundary stencil margin");
}

double RadialMetric::interpolate(const Eigen::VectorXd& nodes, double r) const {
    check_margin(r);
    const double t = std::log(r / r_(0)) / h_;
    Eigen::Index i = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(t)), 1,
                                              r_.size() - 3);
    // cubic Lagrange on nodes i-1 .. i+2 in the log coordinate
    double s = t - i;
    double c0 = -s * (s - 1) * (s - 2) / 6.0;
    double c1 = (s + 1) * (s - 1) * (s - 2) / 2.0;
    double c2 = -(s + 1) * s * (s - 2) / 2.0;
    double c3 = (s + 1) * s * (s - 1) / 6.0;
    return c0 * nodes(i - 1) + c1 * nodes(i) + c2 * nodes(i + 1) + c3 * nodes(i + 2);
}

double RadialMetric::scalar_curvature(double r) const { return interpolate(scal_, r); }

std::pair<double, double> RadialMetric::ricci_eigenvalues(double r) const {
    return {interpolate(ric_rad_, r), interpolate(ric_tan_, r)};
}

const Eigen::VectorXd& RadialMetric::scalar_curvature_nodes() const { return scal_; }
const Eigen::VectorXd& RadialMetric::ricci_radial_nodes() const { return ric_rad_; }
const Eigen::VectorXd& RadialMetric::ricci_tangential_nodes() const { return ric_tan_; }

double RadialMetric::conformal_laplacian_apply(const Eigen::VectorXd& u, Eigen::Index i) const {
    if (u.size() != r_.size())
        throw std::invalid_argument("conformal_laplacian_apply: sample length mismatch");
    if (i < 2 || i + 2 >= r_.size())
        throw std::domain_error("conformal_laplacian_apply: stencil margin underflow");
    const double r = r_(i);
    const double uxi = (-u(i + 2) + 8 * u(i + 1) - 8 * u(i - 1) + u(i - 2)) / (12 * h_);
    const double uxixi =
        (-u(i + 2) + 16 * u(i + 1) - 30 * u(i) + 16 * u(i - 1) - u(i - 2)) / (12 * h_ * h_);
    const double up = uxi / r;
    const double upp = (uxixi - uxi) / (r * r);
    const double A = A_(i), B = B_(i);
    const double sB = std::sqrt(B);
    const double rho = r * sB;
    const double rhop = sB + r * Bp_(i) / (2 * sB);
    const int k = n_ - 1;
    const double lap = upp / A + (k * rhop / (rho * A) - Ap_(i) / (2 * A * A)) * up;
    return lap - conformal_coefficient(n_) * scal_(i) * u(i);
}

double RadialMetric::volume_integral(const Eigen::VectorXd& f_nodes, double rho1,
                                     double rho2) const {
    if (rho2 <= rho1) throw std::domain_error("volume_integral: bad range");
    const int k = n_ - 1;
    Eigen::VectorXd G(r_.size());
    for (Eigen::Index i = 0; i < r_.size(); ++i) {
        double rho = r_(i) * std::sqrt(B_(i));
        G(i) = f_nodes(i) * std::sqrt(A_(i)) * std::pow(rho, k) * r_(i);
    }
    // integrate G dxi over [ln rho1, ln rho2] with Gauss-Legendre panels
    const double lo = std::log(rho1), hi = std::log(rho2);
    GaussRule rule = gauss_legendre(12);
    const int panels = std::max(8, static_cast<int>((hi - lo) / h_ / 2));
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double a = lo + (hi - lo) * p / panels;
        double b = lo + (hi - lo) * (p + 1) / panels;
        for (int q = 0; q < 12; ++q) {
            double xi = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes(q);
            total += 0.5 * (b - a) * rule.weights(q) * interpolate(G, std::exp(xi));
        }
    }
    return unit_sphere_area(n_) * total;
}

IntegralResult RadialMetric::ricci_norm_sq_integral(
    double rho1, double rho2, const std::function<double(double)>& weight) const {
    const int k = n_ - 1;
    Eigen::VectorXd f(r_.size());
    for (Eigen::Index i = 0; i < r_.size(); ++i)
        f(i) = weight(r_(i)) * (ric_rad_(i) * ric_rad_(i) + k * ric_tan_(i) * ric_tan_(i));
    IntegralResult out;
    out.value = volume_integral(f, rho1, rho2);
    double mid = std::sqrt(rho1 * rho2);
    double split = volume_integral(f, rho1, mid) + volume_integral(f, mid, rho2);
    out.error_estimate = std::abs(out.value - split);
    return out;
}

RadialMetric::DecayReport RadialMetric::decay_report() const {
    DecayReport rep{0.0, 0.0, 0.0, true};
    const double r_hi = r_max();
    const double r_lo = std::max(R_flat_, r_hi / 1000.0);
    for (Eigen::Index i = 2; i + 2 < r_.size(); ++i) {
        const double r = r_(i);
        if (r < r_lo) continue;
        rep.coeff_bound = std::max(rep.coeff_bound,
                                   std::max(std::abs(A_(i) - 1.0), std::abs(B_(i) - 1.0)) *
                                       std::pow(r, p_));
        rep.deriv_bound = std::max(rep.deriv_bound,
                                   std::max(std::abs(Ap_(i)), std::abs(Bp_(i))) *
                                       std::pow(r, p_ + 1.0));
        rep.curvature_bound =
            std::max(rep.curvature_bound, std::abs(scal_(i)) * std::pow(r, n_ + 0.5));
    }
    rep.ok = std::isfinite(rep.coeff_bound) && std::isfinite(rep.deriv_bound) &&
             rep.curvature_bound < 1e-2;
    return rep;
}

std::string RadialMetric::to_table() const {
    std::ostringstream os;
    os.precision(17);
    os << "# admlab radial_metric n " << n_ << " R_flat " << R_flat_ << " p " << p_ << "\n";
    os << "# r A B\n";
    for (Eigen::Index i = 0; i < r_.size(); ++i)
        os << r_(i) << " " << A_(i) << " " << B_(i) << "\n";
    return os.str();
}

RadialMetric RadialMetric::from_table(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int n = 0;
    double R_flat = 0.0, p = 0.0;
    std::vector<double> r, a, b;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line);
            std::string tok;
            while (hs >> tok) {
                if (tok == "n") hs >> n;
                else if (tok == "R_flat") hs >> R_flat;
                else if (tok == "p") hs >> p;
            }
            continue;
        }
        std::istringstream ls(line);
        double rv, av, bv;
        if (ls >> rv >> av >> bv) {
            r.push_back(rv);
            a.push_back(av);
            b.push_back(bv);
        }
    }
    if (n == 0 || r.empty()) throw std::invalid_argument("RadialMetric::from_table: bad input");
    Eigen::VectorXd rv = Eigen::Map<Eigen::VectorXd>(r.data(), r.size());
    Eigen::VectorXd av = Eigen::Map<Eigen::VectorXd>(a.data(), a.size());
    Eigen::VectorXd bv = Eigen::Map<Eigen::VectorXd>(b.data(), b.size());
    return RadialMetric(n, std::move(rv), std::move(av), std::move(bv), R_flat, p);
}

double shell_bump_density(double lo, double hi, double r) {
    if (r <= lo || r >= hi) return 0.0;
    double x = (2.0 * r - (lo + hi)) / (hi - lo);
    double y = 1.0 - x * x;
    return y * y * y * y * y;
}

namespace {

// int_lo^min(r,hi) q(s) s^{n-1} ds
double shell_charge(int n, double lo, double hi, double r) {
    double top = std::min(r, hi);
    if (top <= lo) return 0.0;
    return integrate_1d(
        [&](double s) { return shell_bump_density(lo, hi, s) * std::pow(s, n - 1); }, lo, top,
        8, 16);
}

} // namespace

double shell_bump_potential(int n, double lo, double hi, double r) {
    if (!(1.0 < lo && lo < hi)) // keep the shell away from the origin
        throw std::invalid_argument("shell_bump_potential: needs 1 < lo < hi");
    double Qc = shell_charge(n, lo, hi, hi);
    if (r >= hi) return Qc * std::pow(r, 2.0 - n) / (n - 2.0);
    double b_hi = Qc * std::pow(hi, 2.0 - n) / (n - 2.0);
    double lower = std::max(r, lo);
    double mid = integrate_1d(
        [&](double t) { return std::pow(t, 1.0 - n) * shell_charge(n, lo, hi, t); }, lower, hi,
        8, 16);
    return b_hi + mid;
}

RadialMetric bump_metric(int n, double r0, double r_max, int points_per_decade, double amp,
                         double lo, double hi) {
    auto W = [=](double r) {
        double U = 1.0 + amp * shell_bump_potential(n, lo, hi, r);
        if (U <= 0.0) throw std::invalid_argument("bump_metric: factor not positive");
        return std::pow(U, 4.0 / (n - 2.0));
    };
    return RadialMetric::from_profiles(n, r0, r_max, points_per_decade, W, W, r0,
                                       static_cast<double>(n - 2));
}

} // namespace admlab
