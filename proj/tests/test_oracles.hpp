#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "oulab/common.hpp"

namespace oulab::testing {

/// E[x^k] for the standard normal: (k-1)!! for even k, 0 for odd k.
inline double gaussian_moment_1d(int k) {
    if (k % 2 == 1) return 0.0;
    double r = 1.0;
    for (int j = k - 1; j >= 1; j -= 2) r *= j;
    return r;
}

/// E[prod x_a^{e_a}] for the standard normal in R^n.
inline double gaussian_moment(std::span<const int> exponents) {
    double r = 1.0;
    for (int e : exponents) r *= gaussian_moment_1d(e);
    return r;
}

/// Simpson's rule on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; i += 2) acc += 4.0 * f(a + i * h);
    for (int i = 2; i < n; i += 2) acc += 2.0 * f(a + i * h);
    return acc * h / 3.0;
}

/// E[1/|z|^2] for the standard normal in R^3 by the radial reduction
/// sqrt(2/pi) * int_0^inf e^{-r^2/2} dr; equals 1.
inline double inverse_square_moment_3d() {
    return std::sqrt(2.0 / M_PI) * simpson([](double r) { return std::exp(-0.5 * r * r); }, 0.0, 40.0, 8000);
}

}  // namespace oulab::testing
