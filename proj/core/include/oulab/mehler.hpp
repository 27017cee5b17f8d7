#pragma once

#include <array>

#include "oulab/gaussian.hpp"

namespace oulab {

/// Variance s = 1 - e^{-2 tau} of the composite measure M(., -tau) dgamma.
inline double variance_s(double tau) { return -std::expm1(-2.0 * tau); }

/// Backward kernel parameters: center (x0, t0) and evaluation time t < t0,
/// i.e. tau = t0 - t > 0. tau_max guards the e^{2 tau} scalings downstream.
struct KernelParams {
    int dim = 1;
    Point center{};
    double center_time = 0.0;
    double eval_time = 0.0;
    double tau_max = 10.0;

    static KernelParams centered(int dim, double tau);

    double tau() const { return center_time - eval_time; }
    bool is_centered() const;
    void validate() const;  // DomainError if tau <= 0, ConfigError if tau > tau_max
};

struct SymMatrix {
    std::array<double, kMaxDim * kMaxDim> a{};
    int dim = 1;

    double& at(int i, int j) { return a[static_cast<std::size_t>(i * kMaxDim + j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i * kMaxDim + j)]; }
    double trace() const;
    double max_abs() const;
    double max_asymmetry() const;
};

/// Kernel value with analytic first and second derivatives in x.
struct KernelEval {
    double value = 0.0;
    Point grad{};
    SymMatrix hess{};
};

/// Forward Mehler kernel M_H(x, y, t), the fundamental solution of the
/// Ornstein-Uhlenbeck heat flow; symmetric in (x, y). Computed in log space.
double mehler_forward(const Point& x, const Point& y, double t);

double log_mehler_backward(const KernelParams& params, const Point& x);

/// Backward kernel value, gradient and Hessian at x.
KernelEval mehler_backward(const KernelParams& params, const Point& x);

/// |dM/dt + L_gamma M| at (x, -tau): time derivative by centered finite
/// difference with step h (requires h <= tau/2), spatial terms analytic.
/// h = 0 selects the default min(1e-4, tau/10). The identity dM/dt = -L_gamma M
/// holds for the centered kernel only.
double backward_heat_residual(const KernelParams& params, const Point& x, double h = 0.0);

/// Entrywise residual of  hess M - grad M grad M / M + (e^{2t}/(1-e^{2t})) M I
/// evaluated at t = -tau; must vanish to rounding.
SymMatrix matrix_identity_residual(const KernelParams& params, const Point& x);

/// Grid for the composite measure M(., -tau) dgamma = N(0, s I), s = 1 - e^{-2 tau}:
/// Gauss-Hermite nodes rescaled by sqrt(s) with unit total weight.
GaussianGrid composite_grid(int dim, int m, double tau, double tau_max = 10.0);

/// integral of M(., -tau) dgamma, evaluated by reweighting the explicit kernel
/// on the composite grid; equals 1 within quadrature rounding. Centered only.
double kernel_mass(const KernelParams& params, const GaussianGrid& composite);

/// integral of M_H(x, ., t) dgamma by direct quadrature on the unit grid; equals 1.
double kernel_mass_forward(const Point& x, double t, const GaussianGrid& unit_grid);

/// integral of g against the composite measure M(., -tau) dgamma, i.e. plain
/// quadrature on the rescaled grid. Validates that the grid scale matches tau.
double integrate_mweighted(const PointFn& g, double tau, const GaussianGrid& composite);

/// ConfigError unless grid.scale matches sqrt(variance_s(tau)).
void require_composite_grid(const GaussianGrid& grid, double tau);

}  // namespace oulab
