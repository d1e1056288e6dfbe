#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "admlab/metric.hpp"
#include "admlab/norms.hpp"
#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace admlab;

namespace {

Eigen::VectorXd log_grid(double r0, double r1, int ppd) {
    int N = static_cast<int>(std::ceil(ppd * std::log10(r1 / r0))) + 1;
    Eigen::VectorXd r(N);
    double h = std::log(r1 / r0) / (N - 1);
    for (int i = 0; i < N; ++i) r(i) = r0 * std::exp(i * h);
    return r;
}

Eigen::VectorXd sample(const Eigen::VectorXd& r, const std::function<double(double)>& f) {
    Eigen::VectorXd v(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) v(i) = f(r(i));
    return v;
}

} // namespace

TEST_CASE("weighted norm: power-law calibration and breakdown") {
    Eigen::VectorXd r = log_grid(2.0, 1.0e4, 64);
    double sigma = -0.5;
    Eigen::VectorXd v = sample(r, [sigma](double t) { return std::pow(t, sigma); });

    WeightedNormSpec spec{3, sigma, 0.5, 0, 2.0};
    WeightedNormBreakdown b0 = weighted_norm_breakdown(r, v, spec);
    CHECK(b0.sup_terms[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(b0.holder >= 0.0);

    spec.k = 1;
    WeightedNormBreakdown b1 = weighted_norm_breakdown(r, v, spec);
    CHECK(b1.sup_terms[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(b1.sup_terms[1] == doctest::Approx(std::abs(sigma)).epsilon(1e-8));

    spec.k = 2;
    WeightedNormBreakdown b2 = weighted_norm_breakdown(r, v, spec);
    CHECK(b2.sup_terms[2] ==
          doctest::Approx(std::abs(sigma * (sigma - 1.0))).epsilon(1e-7));
    CHECK(b2.total >= b1.total - 1e-12);
}

TEST_CASE("weighted norm: axioms and restriction monotonicity") {
    Eigen::VectorXd r = log_grid(2.0, 1.0e3, 48);
    Eigen::VectorXd v = sample(r, [](double t) { return std::sin(3.0 * std::log(t)) / t; });
    Eigen::VectorXd w = sample(r, [](double t) { return 1.0 / (1.0 + t * t); });
    WeightedNormSpec spec{3, -0.5, 0.5, 1, 2.0};

    double nv = weighted_norm(r, v, spec);
    double nw = weighted_norm(r, w, spec);
    CHECK(weighted_norm(r, 3.5 * v, spec) == doctest::Approx(3.5 * nv).epsilon(1e-13));
    CHECK(weighted_norm(r, v + w, spec) <= nv + nw + 1e-12);
    CHECK(weighted_norm(r, Eigen::VectorXd::Zero(r.size()), spec) == 0.0);

    WeightedNormSpec wider = spec;
    wider.rho = 10.0;
    CHECK(weighted_norm(r, v, wider) <= nv + 1e-12);
    WeightedNormSpec widest = spec;
    widest.rho = 100.0;
    CHECK(weighted_norm(r, v, widest) <= weighted_norm(r, v, wider) + 1e-12);
}

TEST_CASE("weighted norm: spec and margin validation") {
    Eigen::VectorXd r = log_grid(2.0, 100.0, 24);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(r.size());
    CHECK_THROWS_AS(weighted_norm(r, v, WeightedNormSpec{3, 0.5, 0.5, 0, 2.0}),
                    std::invalid_argument); // sigma not in (2-n, 0)
    CHECK_THROWS_AS(weighted_norm(r, v, WeightedNormSpec{3, -1.5, 0.5, 0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_norm(r, v, WeightedNormSpec{3, -0.5, 1.5, 0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_norm(r, v, WeightedNormSpec{3, -0.5, 0.5, 3, 2.0}),
                    std::invalid_argument);
    // rho leaves fewer than 8 nodes of margin
    CHECK_THROWS_AS(weighted_norm(r, v, WeightedNormSpec{3, -0.5, 0.5, 0, 90.0}),
                    std::invalid_argument);
    // non-log-uniform grid
    Eigen::VectorXd bad = Eigen::VectorXd::LinSpaced(32, 2.0, 100.0);
    CHECK_THROWS_AS(weighted_norm(bad, Eigen::VectorXd::Ones(32),
                                  WeightedNormSpec{3, -0.5, 0.5, 0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("barrier: values, closed form, positivity window") {
    ExteriorHarmonic one = ExteriorHarmonic::flat(3);
    Eigen::VectorXd x(3);
    x << 4.0, 0.0, 0.0;
    CHECK(barrier_f_infinity(one, -0.5, x) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(barrier_laplacian_closed_form(one, -0.5, x) ==
          doctest::Approx(0.25 * std::pow(4.0, -2.5)).epsilon(1e-14));

    ExteriorHarmonic schw = ExteriorHarmonic::schwarzschild(3, 1.0);
    for (double rr : {2.0, 5.0, 20.0}) {
        Eigen::VectorXd p(3);
        p << 0.0, rr, 0.0;
        CHECK(barrier_f_infinity(schw, -0.5, p) < 0.0);
    }
    Eigen::VectorXd inner(3);
    inner << 1.0, 0.5, 0.0;
    CHECK_THROWS_AS(barrier_f_infinity(schw, -0.5, inner), std::domain_error);

    // positivity of the closed form across the admitted sigma window
    for (double sigma : {-0.05, -0.3, -0.5, -0.7, -0.95}) {
        for (double rr : {2.5, 8.0, 64.0}) {
            Eigen::VectorXd p(3);
            p << rr / std::sqrt(2.0), rr / std::sqrt(2.0), 0.0;
            CHECK(barrier_laplacian_closed_form(schw, sigma, p) > 0.0);
        }
    }
}

TEST_CASE("barrier: two-route Laplacian agreement and the C2 bound") {
    std::vector<HarmonicTerm> terms{{1, 0, 0.08}, {2, 1, -0.05}};
    ExteriorHarmonic U = ExteriorHarmonic::make(3, 1.0, 0.3, terms);
    std::vector<Eigen::VectorXd> pts;
    auto dirs = oracles::random_sphere_points(3, 1.0, 50, 20260826u);
    for (int i = 0; i < 50; ++i) {
        double rr = 3.0 * std::pow(10.0, i / 49.0); // radii in [3, 30]
        pts.push_back(rr * dirs[static_cast<size_t>(i)]);
    }
    BarrierReport rep = barrier_subharmonicity_check(U, -0.5, pts);
    CHECK(rep.samples == 50);
    CHECK(rep.positive);
    CHECK(rep.max_rel_mismatch < 1e-6);
    CHECK(rep.C2 > 0.0);
    // C2 = U^{(n+2)/(n-2)} / |sigma (n-2+sigma)| <= sup(U)^5 / 0.25 on the family
    double umax = 1.0 + 0.3 + 0.08 + 0.05; // crude sup bound near the boundary
    CHECK(rep.C2 <= std::pow(umax, 5.0) / 0.25);

    Eigen::VectorXd inner(3);
    inner << 1.5, 0.0, 0.0;
    CHECK_THROWS_AS(
        barrier_subharmonicity_check(U, -0.5, std::vector<Eigen::VectorXd>{inner}),
        std::domain_error);
}

TEST_CASE("injectivity ratio: flat power-law calibration = 4.0") {
    Eigen::VectorXd r = log_grid(2.0, 1.0e4, 64);
    double sigma = -0.5;
    int n = 3;
    InjectivitySample s;
    s.label = "flat-power";
    s.r = r;
    s.v = sample(r, [sigma](double t) { return std::pow(t, sigma); });
    s.lap_v = sample(r, [sigma, n](double t) {
        return sigma * (sigma + n - 2.0) * std::pow(t, sigma - 2.0);
    });
    WeightedNormSpec spec{3, sigma, 0.5, 0, 2.0};
    InjectivityReport rep = injectivity_ratio({s}, spec);
    REQUIRE(rep.ratios_sup.size() == 1);
    CHECK(rep.max_ratio_sup == doctest::Approx(4.0).epsilon(1e-8));

    // scaling invariance of both ratios
    InjectivitySample scaled = s;
    scaled.v *= 17.0;
    scaled.lap_v *= 17.0;
    InjectivityReport rep2 = injectivity_ratio({scaled}, spec);
    CHECK(rep2.max_ratio_sup == doctest::Approx(rep.max_ratio_sup).epsilon(1e-12));
    CHECK(rep2.max_ratio_full == doctest::Approx(rep.max_ratio_full).epsilon(1e-9));

    // zero forcing is excluded, not divided by
    InjectivitySample zero = s;
    zero.label = "zero-forcing";
    zero.lap_v.setZero();
    InjectivityReport rep3 = injectivity_ratio({s, zero}, spec);
    REQUIRE(rep3.excluded.size() == 1);
    CHECK(rep3.excluded[0] == "zero-forcing");
    CHECK(rep3.ratios_sup.size() == 1);
}

TEST_CASE("injectivity ratio: shell-forcing family is bounded and refinement-stable") {
    WeightedNormSpec spec{3, -0.5, 0.5, 0, 2.0};
    std::vector<std::pair<double, double>> shells{{2.0, 6.0}, {3.0, 8.0}, {2.5, 12.0}};
    auto build = [&shells](int ppd) {
        Eigen::VectorXd r = log_grid(2.0, 1.0e4, ppd);
        std::vector<InjectivitySample> fam;
        for (auto [lo, hi] : shells) {
            InjectivitySample s;
            s.label = "shell";
            s.r = r;
            s.v = sample(r, [lo, hi](double t) { return shell_bump_potential(3, lo, hi, t); });
            s.lap_v = sample(r, [lo, hi](double t) { return -shell_bump_density(lo, hi, t); });
            fam.push_back(std::move(s));
        }
        return fam;
    };
    InjectivityReport coarse = injectivity_ratio(build(64), spec);
    InjectivityReport fine = injectivity_ratio(build(128), spec);
    CHECK(coarse.ratios_sup.size() == 3);
    for (double q : coarse.ratios_sup) {
        CHECK(q > 0.0);
        CHECK(std::isfinite(q));
    }
    CHECK(fine.max_ratio_sup > 0.0);
    CHECK(std::abs(fine.max_ratio_sup - coarse.max_ratio_sup) < 0.05 * coarse.max_ratio_sup);
    CHECK(std::isfinite(fine.max_ratio_full));
    CHECK(fine.max_ratio_full >= fine.max_ratio_sup);
}
