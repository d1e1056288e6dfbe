#ifndef ADMLAB_CONSTANTS_HPP
#define ADMLAB_CONSTANTS_HPP

#include <cmath>
#include <stdexcept>

namespace admlab {

inline constexpr double kPi = 3.14159265358979323846;

/// Area of the standard unit (n-1)-sphere in R^n, omega_{n-1} = 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_area(int n) {
    if (n < 2) throw std::invalid_argument("unit_sphere_area: n must be >= 2");
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Conformal Laplacian coefficient (n-2)/(4(n-1)).
inline double conformal_coefficient(int n) {
    return static_cast<double>(n - 2) / (4.0 * (n - 1));
}

/// Conformal exponent 4/(n-2) in g = U^{4/(n-2)} delta.
inline double conformal_exponent(int n) {
    return 4.0 / (n - 2);
}

} // namespace admlab

#endif
