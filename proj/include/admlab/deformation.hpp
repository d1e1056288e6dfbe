#ifndef ADMLAB_DEFORMATION_HPP
#define ADMLAB_DEFORMATION_HPP

#include "admlab/harmonic.hpp"
#include "admlab/metric.hpp"

#include <optional>
#include <vector>

namespace admlab {

/// Radial cutoff: 0 on [0, a/3], rises to 1 on [a/3, a/2], plateau 1 on
/// [a/2, 3a], falls back to 0 on [3a, 4a], 0 beyond. Transitions use the
/// quintic smoothstep 6t^5 - 15t^4 + 10t^3, so the profile is C^2 with
/// bounded first and second derivatives.
struct Cutoff {
    double a = 4.0;

    /// Throws std::invalid_argument unless a > 3.
    explicit Cutoff(double a_scale);

    double operator()(double r) const;
};

double cutoff_eval(const Cutoff& c, double r);

/// Ricci deformation g_s = g + s phi Ric(g) of a radial metric: the Ricci
/// tensor of a radial metric is radial, so the flow acts on the two profile
/// components as A_s = A (1 + s phi lam_rad), B_s = B (1 + s phi lam_tan)
/// with (lam_rad, lam_tan) the Ricci eigenvalues.
///
/// Throws std::domain_error when a deformed profile loses positivity
/// (inadmissible s); this defines the empirical admissible range.
RadialMetric deform(const RadialMetric& g, double s, const Cutoff& c);

/// First inadmissibility scale: the smallest |s| at which some deformed
/// profile component reaches zero, 1 / max_i phi_i max(|lam_rad|, |lam_tan|).
/// Returns +infinity for a flat background.
double inadmissibility_scale(const RadialMetric& g, const Cutoff& c);

/// Closed-form first variation of the mass flow at s = 0 for a scalar-flat
/// background: all other terms in the linearized scalar curvature are
/// divergences that integrate to zero against the decaying conformal factor.
struct MdotZero {
    /// (1 / (2 (n-1) omega_{n-1})) int phi |Ric|_g^2 dmu_g.
    double value = 0.0;
    /// Same constant times the integral over the plateau annulus
    /// B_{3a} \ B_{a/2} where phi == 1; a lower bound for value.
    double annulus_lower_bound = 0.0;
    double quad_error = 0.0;
};

MdotZero mdot0_formula(const RadialMetric& g, const Cutoff& c);

/// A deformation experiment: the sampled mass curve s -> m(u_s^{4/(n-2)} g_s)
/// together with both routes to the first variation and the curvature bound
/// used by the delta-gamma argument.
struct FlowRun {
    RadialMetric base;
    Cutoff cutoff;
    std::vector<double> s_grid;       // symmetric around 0, uniform step
    std::vector<double> mass_samples; // NaN on inadmissible s
    std::vector<double> residuals;    // conformal solve residual, NaN on failure
    std::vector<bool> admissible;
    double m0 = 0.0;
    double mdot0_fd = 0.0;      // 4th-order central differences
    double mdot0_formula = 0.0; // closed form above
    double mddot_max = 0.0;     // max |second difference| over the curve
    double admissible_lo = 0.0; // largest symmetric interval of successes
    double admissible_hi = 0.0;
};

/// Symmetric 9-point grid with step = 1/4 of the first inadmissibility scale
/// (so the endpoints probe the admissibility boundary on purpose).
std::vector<double> default_s_grid(const RadialMetric& g, const Cutoff& c, int count = 9);

/// Fill a FlowRun: for each s, deform, solve the conformal Laplace equation,
/// compose u_s^{4/(n-2)} g_s, and take its ADM mass. Per-s failures shrink
/// the admissible range; the curve is never extrapolated across them.
///
/// Preconditions: base scalar-flat (sup nodal |R| <= 1e-8 relative).
FlowRun mass_curve(const RadialMetric& base, const Cutoff& c,
                   std::vector<double> s_grid = {});

/// Empirical check of the oscillation estimate for a harmonic end:
/// sup_{|x|>a} |U - 1| against (a^{4-n} mdot0)^{1/4} + a^{2-n} |m0|, plus the
/// intermediate chain sup_{a<|x|<2a} |U - shell average| <=
/// C (a^{4-n} int_{B_3a \ B_{a/2}} |grad U|^4)^{1/4}.
struct OscillationReport {
    double sup_dev = 0.0;        // sup_{|x|>a} |U - 1|
    double variation_term = 0.0; // (a^{4-n} mdot0)^{1/4}
    double mass_term = 0.0;      // a^{2-n} |m0|
    double ratio = 0.0;          // sup_dev / (variation_term + mass_term)
    double chain_sup = 0.0;      // sup_{a<|x|<2a} |U - shell average|
    double chain_rhs = 0.0;      // (a^{4-n} grad4_integral)^{1/4}
    double chain_ratio = 0.0;
    double grad4_integral = 0.0; // int_{B_3a \ B_{a/2}} |grad U|^4
    double shell_average = 0.0;  // volume average of U over a < |x| < 2a
};

OscillationReport oscillation_bound_check(const ExteriorHarmonic& U, double a,
                                          double mdot0, double m0);

/// The quadratic argument: with C0 = mddot_max, the premises
/// m(0) < gamma^2 / (2 C0) and m(-gamma/C0) >= 0 force mdot0 < gamma.
struct DeltaGammaVerdict {
    enum class Outcome { Pass, Fail, Inconclusive } outcome = Outcome::Inconclusive;
    double gamma = 0.0;
    double C0 = 0.0;
    double s_star = 0.0; // -gamma / C0
    double m0 = 0.0;
    double m0_bound = 0.0; // gamma^2 / (2 C0)
    double mdot0 = 0.0;
    std::optional<double> m_at_s_star;  // interpolated; empty outside the range
    std::optional<bool> premise_m0;     // m0 < m0_bound
    std::optional<bool> premise_curve;  // m(s_star) >= 0
    bool conclusion = false;            // mdot0 < gamma
};

/// Pass when the conclusion mdot0 < gamma holds; Fail when both premises are
/// verified and the conclusion still fails; Inconclusive when the conclusion
/// fails and -gamma/C0 lies outside the admissible range, so the curve
/// premise cannot be read off.
DeltaGammaVerdict delta_gamma_experiment(const FlowRun& run, double gamma);

} // namespace admlab

#endif
