#include "admlab/harmonic.hpp"
#include "admlab/constants.hpp"
#include "admlab/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace admlab {

namespace {

double gegenbauer_raw(int l, double lambda, double t) {
    if (l < 0) return 0.0;
    if (l == 0) return 1.0;
    double cm1 = 1.0;
    double c0 = 2.0 * lambda * t;
    for (int k = 2; k <= l; ++k) {
        double ck = (2.0 * (k + lambda - 1.0) * t * c0 - (k + 2.0 * lambda - 2.0) * cm1) / k;
        cm1 = c0;
        c0 = ck;
    }
    return c0;
}

struct TermDerivs {
    double value;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
};

// f(x) = coeff * r^gamma * C_l^lambda(t), t = x_a / r, gamma = 2 - n - l.
TermDerivs zonal_term(const HarmonicTerm& term, int n, const Eigen::VectorXd& x,
                      bool want_hess) {
    const int l = term.degree;
    const double lambda = 0.5 * (n - 2);
    const double gamma = 2.0 - n - l;
    const double r = x.norm();
    const double t = x(term.axis) / r;
    Gegenbauer C = gegenbauer_eval(l, lambda, t);
    const double rg = std::pow(r, gamma);

    TermDerivs out;
    out.value = term.coeff * rg * C.value;

    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(term.axis) = 1.0;
    const double r2 = r * r;
    Eigen::VectorXd tgrad = e / r - x(term.axis) * x / (r * r2);

    out.grad = term.coeff * (gamma * std::pow(r, gamma - 2.0) * C.value * x +
                             rg * C.d1 * tgrad);
    if (!want_hess) return out;

    const double rgm2 = std::pow(r, gamma - 2.0);
    const double rgm4 = std::pow(r, gamma - 4.0);
    Eigen::MatrixXd H(n, n);
    const double xa = x(term.axis);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k <= i; ++k) {
            double dik = (i == k) ? 1.0 : 0.0;
            // d2/dxi dxk of t = x_a/r
            double t_ik = -(e(i) * x(k) + e(k) * x(i) + dik * xa) / (r * r2) +
                          3.0 * xa * x(i) * x(k) / (r2 * r2 * r);
            double h = gamma * (gamma - 2.0) * rgm4 * x(i) * x(k) * C.value +
                       gamma * rgm2 * dik * C.value +
                       gamma * rgm2 * (x(i) * tgrad(k) + x(k) * tgrad(i)) * C.d1 +
                       rg * C.d2 * tgrad(i) * tgrad(k) + rg * C.d1 * t_ik;
            H(i, k) = term.coeff * h;
            H(k, i) = H(i, k);
        }
    }
    out.hess = std::move(H);
    return out;
}

} // namespace

Gegenbauer gegenbauer_eval(int l, double lambda, double t) {
    Gegenbauer g;
    g.value = gegenbauer_raw(l, lambda, t);
    g.d1 = (l >= 1) ? 2.0 * lambda * gegenbauer_raw(l - 1, lambda + 1.0, t) : 0.0;
    g.d2 = (l >= 2) ? 4.0 * lambda * (lambda + 1.0) * gegenbauer_raw(l - 2, lambda + 2.0, t)
                    : 0.0;
    return g;
}

ExteriorHarmonic ExteriorHarmonic::make(int n, double R, double monopole_coeff,
                                        std::vector<HarmonicTerm> higher,
                                        std::vector<PointSource> sources) {
    if (n < 3) throw std::invalid_argument("ExteriorHarmonic: n must be >= 3");
    if (R <= 0.0) throw std::invalid_argument("ExteriorHarmonic: R must be > 0");
    for (const auto& t : higher) {
        if (t.degree < 1 || t.degree > 4)
            throw std::invalid_argument("ExteriorHarmonic: term degree must be in [1,4]");
        if (t.axis < 0 || t.axis >= n)
            throw std::invalid_argument("ExteriorHarmonic: term axis out of range");
    }
    for (const auto& s : sources) {
        if (s.location.size() != n)
            throw std::invalid_argument("ExteriorHarmonic: source location has wrong dimension");
        if (s.location.norm() >= R)
            throw std::invalid_argument("ExteriorHarmonic: point source must lie inside B_R");
        if (s.strength < 0.0)
            throw std::invalid_argument("ExteriorHarmonic: point-source strength must be >= 0");
    }
    ExteriorHarmonic u;
    u.n_ = n;
    u.R_ = R;
    u.monopole_ = monopole_coeff;
    u.higher_ = std::move(higher);
    u.sources_ = std::move(sources);

    // Positivity admission: dense directions at a few radii near the inner
    // boundary, margin 1e-9. The minimum of U over the exterior is attained on
    // S_R (or equals 1 at infinity), so sampling near R is the binding check.
    int order = 4;
    SphereSample sample = SphereSample::build(n, order);
    while (sample.size() < 4096) sample = SphereSample::build(n, ++order);
    for (double rad : {R, 1.1 * R, 2.0 * R, 10.0 * R}) {
        for (Eigen::Index i = 0; i < sample.size(); ++i) {
            Eigen::VectorXd x = rad * sample.directions.row(i).transpose();
            if (u.value(x) <= 1e-9)
                throw std::invalid_argument(
                    "ExteriorHarmonic: representation is not positive on |x| >= R");
        }
    }
    return u;
}

double ExteriorHarmonic::value(const Eigen::VectorXd& x) const {
    const double r = x.norm();
    if (r < R_ * (1.0 - 1e-12))
        throw std::domain_error("ExteriorHarmonic::value: point inside B_R");
    double v = 1.0 + monopole_ * std::pow(r, 2.0 - n_);
    for (const auto& t : higher_) {
        Gegenbauer C = gegenbauer_eval(t.degree, 0.5 * (n_ - 2), x(t.axis) / r);
        v += t.coeff * std::pow(r, 2.0 - n_ - t.degree) * C.value;
    }
    for (const auto& s : sources_)
        v += s.strength * std::pow((x - s.location).norm(), 2.0 - n_);
    return v;
}

Eigen::VectorXd ExteriorHarmonic::gradient(const Eigen::VectorXd& x) const {
    const double r = x.norm();
    if (r < R_ * (1.0 - 1e-12))
        throw std::domain_error("ExteriorHarmonic::gradient: point inside B_R");
    Eigen::VectorXd g = monopole_ * (2.0 - n_) * std::pow(r, -static_cast<double>(n_)) * x;
    for (const auto& t : higher_) g += zonal_term(t, n_, x, false).grad;
    for (const auto& s : sources_) {
        Eigen::VectorXd d = x - s.location;
        g += s.strength * (2.0 - n_) * std::pow(d.norm(), -static_cast<double>(n_)) * d;
    }
    return g;
}

Eigen::MatrixXd ExteriorHarmonic::hessian(const Eigen::VectorXd& x) const {
    const double r = x.norm();
    if (r < R_ * (1.0 - 1e-12))
        throw std::domain_error("ExteriorHarmonic::hessian: point inside B_R");
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n_, n_);
    const double c = monopole_ * (2.0 - n_);
    H += c * std::pow(r, -static_cast<double>(n_)) * Eigen::MatrixXd::Identity(n_, n_);
    H += c * (-n_) * std::pow(r, -static_cast<double>(n_) - 2.0) * (x * x.transpose());
    for (const auto& t : higher_) H += zonal_term(t, n_, x, true).hess;
    for (const auto& s : sources_) {
        Eigen::VectorXd d = x - s.location;
        const double sd = d.norm();
        const double cs = s.strength * (2.0 - n_);
        H += cs * std::pow(sd, -static_cast<double>(n_)) * Eigen::MatrixXd::Identity(n_, n_);
        H += cs * (-n_) * std::pow(sd, -static_cast<double>(n_) - 2.0) * (d * d.transpose());
    }
    return H;
}

double ExteriorHarmonic::laplacian(const Eigen::VectorXd& x) const {
    return hessian(x).trace();
}

double ExteriorHarmonic::spherical_average(double r, int quad_order) const {
    if (r < R_ * (1.0 - 1e-12))
        throw std::domain_error("ExteriorHarmonic::spherical_average: r < R");
    for (const auto& s : sources_)
        if (s.location.norm() >= r)
            throw std::domain_error("ExteriorHarmonic::spherical_average: source outside B_r");
    SphereSample sample = SphereSample::build(n_, quad_order, r);
    double total = sample.integrate([this](const Eigen::VectorXd& x) { return value(x); });
    return total / (unit_sphere_area(n_) * std::pow(r, n_ - 1));
}

double ExteriorHarmonic::sup_deviation(double a, int sample_order) const {
    if (a < R_ * (1.0 - 1e-12))
        throw std::domain_error("ExteriorHarmonic::sup_deviation: a < R");
    SphereSample sample = SphereSample::build(n_, sample_order, a);
    double best = 0.0;
    Eigen::VectorXd best_dir = sample.directions.row(0).transpose();
    for (Eigen::Index i = 0; i < sample.size(); ++i) {
        Eigen::VectorXd x = sample.point(i);
        double dev = std::abs(value(x) - 1.0);
        if (dev > best) {
            best = dev;
            best_dir = sample.directions.row(i).transpose();
        }
    }
    // Pattern-search polish on the sphere around the best sampled direction.
    double step = kPi / (2.0 * sample_order);
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n_, n_);
    while (step > 1e-12) {
        bool improved = false;
        for (int axis = 0; axis < n_; ++axis) {
            for (double sgn : {1.0, -1.0}) {
                Eigen::VectorXd cand = (best_dir + sgn * step * id.col(axis)).normalized();
                double dev = std::abs(value(a * cand) - 1.0);
                if (dev > best) {
                    best = dev;
                    best_dir = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.618;
    }
    return best;
}

double ExteriorHarmonic::mass_from_expansion() const {
    double total = monopole_;
    for (const auto& s : sources_) total += s.strength;
    return 2.0 * total;
}

std::string ExteriorHarmonic::to_record() const {
    std::ostringstream os;
    os.precision(17);
    os << "exterior_harmonic n " << n_ << " R " << R_ << "\n";
    os << "monopole " << monopole_ << "\n";
    for (const auto& t : higher_) os << "term " << t.degree << " " << t.axis << " " << t.coeff << "\n";
    for (const auto& s : sources_) {
        os << "source";
        for (int i = 0; i < n_; ++i) os << " " << s.location(i);
        os << " " << s.strength << "\n";
    }
    return os.str();
}

ExteriorHarmonic ExteriorHarmonic::from_record(const std::string& text) {
    std::istringstream is(text);
    std::string tag, key;
    int n = 0;
    double R = 0.0, monopole = 0.0;
    is >> tag;
    if (tag != "exterior_harmonic")
        throw std::invalid_argument("ExteriorHarmonic::from_record: bad header");
    is >> key >> n >> key >> R;
    std::vector<HarmonicTerm> higher;
    std::vector<PointSource> sources;
    while (is >> tag) {
        if (tag == "monopole") {
            is >> monopole;
        } else if (tag == "term") {
            HarmonicTerm t;
            is >> t.degree >> t.axis >> t.coeff;
            higher.push_back(t);
        } else if (tag == "source") {
            PointSource s;
            s.location.resize(n);
            for (int i = 0; i < n; ++i) is >> s.location(i);
            is >> s.strength;
            sources.push_back(std::move(s));
        } else {
            throw std::invalid_argument("ExteriorHarmonic::from_record: unknown tag " + tag);
        }
    }
    return make(n, R, monopole, std::move(higher), std::move(sources));
}

double exterior_poisson_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                               double r, int n) {
    const double xn = x.norm();
    if (xn <= r)
        throw std::domain_error("exterior_poisson_kernel: need |x| > r");
    return (xn * xn - r * r) / (unit_sphere_area(n) * r * std::pow((x - y).norm(), n));
}

double poisson_extend(const std::function<double(const Eigen::VectorXd&)>& boundary,
                      double r, const Eigen::VectorXd& x, int quad_order) {
    const int n = static_cast<int>(x.size());
    if (x.norm() <= r)
        throw std::domain_error("poisson_extend: need |x| > r");
    SphereSample sample = SphereSample::build(n, quad_order, r);
    return sample.integrate([&](const Eigen::VectorXd& y) {
        return exterior_poisson_kernel(x, y, r, n) * boundary(y);
    });
}

} // namespace admlab
